#pragma once

// Worked counterexamples and decision checks, each run against the shipped
// workspaces.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "grc/analyze.hpp"
#include "grc/canonical.hpp"
#include "grc/corpus.hpp"
#include "grc/report.hpp"
#include "grc/workspace.hpp"
#include "grc/workspace_files.hpp"

namespace grc {

struct Assertion {
  std::string label;
  Json expected;
  Json actual;
  bool holds() const { return expected == actual; }
};

struct ScenarioResult {
  std::string name;
  std::vector<Assertion> assertions;
  Json info = Json::object();

  bool passed() const {
    for (const auto& a : assertions)
      if (!a.holds()) return false;
    return true;
  }

  void check(std::string label, Json expected, Json actual) {
    assertions.push_back({std::move(label), std::move(expected), std::move(actual)});
  }
};

struct Scenario {
  std::string name;
  std::string summary;
  std::vector<std::string> files;
  std::function<ScenarioResult(std::uint64_t seed)> run;
};

inline Workspace shipped_workspace(const std::string& file) {
  const auto& files = shipped_workspaces();
  auto it = files.find(file);
  if (it == files.end()) throw UnknownName("no shipped workspace " + file);
  return parse_workspace(it->second);
}

namespace detail {

inline void add_c140(ScenarioResult& r, const std::string& tag, const GradedRingHom& h, std::mt19937_64& rng,
                     int trials) {
  bool plus = true, sharp = true;
  for (int i = 0; i < trials; ++i) {
    auto m = random_module(h.source, rng);
    auto n = random_module(h.target, rng);
    for (const auto& t : plus_triangles(h, n, m)) plus = plus && t.holds;
    for (const auto& t : sharp_triangles(h, m, n)) sharp = sharp && t.holds;
  }
  r.check(tag + ": h_+ -| h^* triangle identities", true, plus);
  r.check(tag + ": h~ -| h^+ triangle identities", true, sharp);
}

inline ScenarioResult run_d40c(std::uint64_t) {
  ScenarioResult r{"d40C", {}, Json::object()};
  const auto ws = shipped_workspace("d40C.grc");
  const auto& h = ws.hom("h").hom;
  const auto m = ws.module("M").module;
  const auto n = ws.module("N").module;
  r.check("M = h_*(S)", true, *m == *restrict(h, regular_module(h.target)));
  const auto t = theta(h, m, n);
  r.check("|source of theta_{M,N}|", 2, t.map.source->cardinality());
  r.check("|target of theta_{M,N}|", 2, t.map.target->cardinality());
  r.check("theta_{M,N} = 0", true, t.map.is_zero());
  r.info["theta"] = analysis_report(t.map);
  return r;
}

inline ScenarioResult run_d25e(std::uint64_t) {
  ScenarioResult r{"d25E", {}, Json::object()};
  const auto ws = shipped_workspace("d25E.grc");
  for (const std::string suffix : {"", "g"}) {
    const auto& h = ws.hom("h" + suffix).hom;
    const auto q = ws.module("Q" + suffix).module;
    const std::string tag = suffix.empty() ? "ungraded" : "Z/3-graded";
    r.check(tag + ": Q = h_*(S)", true, *q == *restrict(h, regular_module(h.target)));
    const auto e = epsilon(h, regular_module(h.source), q);
    const auto a = analyze_morphism(e.map);
    r.check(tag + ": epsilon_{R,R/a} mono", false, a.mono);
    r.info[tag] = analysis_report(e.map);
    if (!suffix.empty()) {
      const CoarseContext cx(h, ws.epi("psi").epi);
      r.check(tag + ": coarsening square for epsilon commutes", true,
              coarsening_square_epsilon(cx, regular_module(h.source), q).commutes);
      const auto ec = epsilon(cx.hc, cx.module(regular_module(h.source)).module, cx.module(q).module);
      r.check(tag + ": coarsened epsilon mono", false, is_mono(ec.map));
    }
  }
  return r;
}

inline ScenarioResult run_c150(std::uint64_t seed) {
  ScenarioResult r{"c150-frobenius", {}, Json::object()};
  std::mt19937_64 rng(seed);
  const auto fr = shipped_workspace("frobenius.grc");
  const auto& f = fr.hom("f").hom;
  const auto m = morita_check(f);
  r.check("ungraded: h_*(S) projective", true, m.projective);
  r.check("ungraded: h~(R) = S", true, m.base_iso.has_value());
  r.check("ungraded: morita", true, m.result());
  if (m.base_iso) {
    bool all = true;
    const int trials = 8;
    for (int i = 0; i < trials; ++i) all = all && is_iso(morita_iso(f, *m.base_iso, random_module(f.source, rng)));
    r.check("ungraded: h^*(M) = h~(M) for seeded random M", true, all);
    r.info["ungraded_base_iso"] = blocks_report(m.base_iso->blocks);
  }
  add_c140(r, "ungraded", f, rng, 4);

  const auto& fg = fr.hom("fg").hom;
  const auto g = morita_check(fg);
  r.check("Z/2-graded: h_*(S) projective", true, g.projective);
  r.check("Z/2-graded: h~(R) = S", false, g.base_iso.has_value());
  const Degree one{1};
  const auto shifted = find_isomorphism(shift(regular_module(fg.target), one),
                                        coextend(fg, regular_module(fg.source)).module);
  r.check("Z/2-graded: h~(R) = S(1)", true, shifted.has_value());
  add_c140(r, "Z/2-graded", fg, rng, 4);

  const auto z = shipped_workspace("d40C.grc");
  const auto zm = morita_check(z.hom("h").hom);
  r.check("Z/4 -> Z/2: h_*(S) projective", false, zm.projective);
  r.check("Z/4 -> Z/2: morita", false, zm.result());
  return r;
}

inline std::vector<ModulePtr> battery_family(const GradedRingHom& h, std::mt19937_64& rng) {
  std::vector<ModulePtr> fam;
  for (int i = 0; i < 4; ++i) fam.push_back(random_module(h.target, rng));
  return fam;
}

inline ScenarioResult run_battery(const std::string& name, const std::string& file, const std::string& hom,
                                  bool expected, std::uint64_t seed) {
  ScenarioResult r{name, {}, Json::object()};
  std::mt19937_64 rng(seed);
  const auto ws = shipped_workspace(file);
  const auto& h = ws.hom(hom).hom;
  try {
    const auto b = d70_battery(h, battery_family(h, rng));
    for (std::size_t i = 0; i < b.verdicts.size(); ++i) r.check(EpiBatteryReport::statements[i], expected, b.verdicts[i]);
    r.info["battery"] = battery_report(b);
  } catch (const InconsistentBattery& e) {
    r.check("battery consistent", true, false);
    r.info["error"] = e.what();
  }
  return r;
}

inline ScenarioResult run_d80(std::uint64_t) {
  ScenarioResult r{"d80-coarsen", {}, Json::object()};
  auto one = [&](const std::string& file, const std::string& hom, bool expected) {
    const auto ws = shipped_workspace(file);
    const auto [fine, coarse] = d80_check(ws.hom(hom).hom, ws.epi("psi").epi);
    r.check(file + " " + hom + ": epimorphism", expected, fine);
    r.check(file + " " + hom + ": epimorphism after coarsening", expected, coarse);
  };
  one("frobenius.grc", "fg", false);
  one("cubic.grc", "id", true);
  one("cubic.grc", "trunc", true);
  return r;
}

}  // namespace detail

inline const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all{
      {"d40C", "theta_{M,N} vanishes between groups of order 2 for Z/4 -> Z/2", {"d40C.grc"}, detail::run_d40c},
      {"d25E", "epsilon_{R,R/a} is not mono for F_2[X]/(X^3) -> F_2[X]/(X^2), also Z/3-graded", {"d25E.grc"},
       detail::run_d25e},
      {"c150-frobenius", "Morita criterion on F_2 -> F_2[t]/(t^2) and on Z/4 -> Z/2",
       {"frobenius.grc", "d40C.grc"}, detail::run_c150},
      {"d70-battery-epi", "epimorphism battery on Z/4 -> Z/2", {"d40C.grc"},
       [](std::uint64_t seed) { return detail::run_battery("d70-battery-epi", "d40C.grc", "h", true, seed); }},
      {"d70-battery-nonepi", "epimorphism battery on graded F_2 -> F_2[t]/(t^2)", {"frobenius.grc"},
       [](std::uint64_t seed) { return detail::run_battery("d70-battery-nonepi", "frobenius.grc", "fg", false, seed); }},
      {"d80-coarsen", "ring epimorphism verdicts before and after coarsening", {"frobenius.grc", "cubic.grc"},
       detail::run_d80},
  };
  return all;
}

inline const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return s;
  throw UnknownName("unknown scenario '" + name + "'");
}

inline Json scenario_report(const ScenarioResult& r) {
  Json a = Json::array();
  for (const auto& x : r.assertions)
    a.push_back({{"label", x.label}, {"expected", x.expected}, {"actual", x.actual}, {"holds", x.holds()}});
  return {{"scenario", r.name}, {"passed", r.passed()}, {"assertions", a}, {"details", r.info}};
}

}  // namespace grc
