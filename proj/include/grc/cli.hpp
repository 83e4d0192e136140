#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grc/analyze.hpp"
#include "grc/canonical.hpp"
#include "grc/corpus.hpp"
#include "grc/report.hpp"
#include "grc/scenarios.hpp"
#include "grc/workspace.hpp"

namespace grc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitInput = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Workspace load_inputs(const std::vector<std::string>& files) {
  Workspace ws;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw InputError("cannot read " + f);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      ws.merge(parse_workspace(buf.str()));
    } catch (const ParseError& e) {
      throw InputError(f + ":" + e.what());
    } catch (const ValidationError& e) {
      throw InputError(f + ": " + e.what() + " [" + e.axiom() + "]");
    } catch (const UnknownName& e) {
      throw InputError(f + ": " + e.what());
    }
  }
  return ws;
}

/// Ring morphisms from the workspace, falling back to the built-in corpus.
inline GradedRingHom resolve_hom(const Workspace& ws, const std::string& name) {
  if (ws.homs.count(name)) return ws.hom(name).hom;
  for (auto& inst : standard_instances())
    if (inst.name == name) return inst.h;
  throw UnknownName("unknown ring morphism '" + name + "'");
}

/// Modules by name; a ring name stands for its regular module.
inline ModulePtr resolve_module(const Workspace& ws, const std::string& name) {
  if (!ws.modules.count(name) && ws.rings.count(name)) return regular_module(ws.ring(name).ring);
  return ws.module(name).module;
}

struct CanonSpec {
  std::string signature;  // psi = group epimorphism, h = ring morphism, capitals = modules, N... = one or more
  std::function<GradedMorphism(const GroupEpi*, const GradedRingHom*, const std::vector<ModulePtr>&)> build;
};

inline const std::map<std::string, CanonSpec>& canon_table() {
  using V = std::vector<ModulePtr>;
  using P = const GroupEpi*;
  using H = const GradedRingHom*;
  static const std::map<std::string, CanonSpec> table{
      {"underline", {"h", [](P, H h, const V&) { return underline(*h); }}},
      {"rho", {"h M", [](P, H h, const V& m) { return unit_rho(*h, m[0]); }}},
      {"sigma", {"h N", [](P, H h, const V& m) { return counit_sigma(*h, m[0]); }}},
      {"rho_tilde", {"h N", [](P, H h, const V& m) { return unit_rho_tilde(*h, m[0]); }}},
      {"sigma_tilde", {"h M", [](P, H h, const V& m) { return counit_sigma_tilde(*h, m[0]); }}},
      {"delta", {"h M N", [](P, H h, const V& m) { return delta(*h, m[0], m[1]).forward; }}},
      {"delta_inverse", {"h M N", [](P, H h, const V& m) { return delta(*h, m[0], m[1]).inverse; }}},
      {"gamma", {"h M N", [](P, H h, const V& m) { return gamma(*h, m[0], m[1]).map; }}},
      {"epsilon", {"h M N", [](P, H h, const V& m) { return epsilon(*h, m[0], m[1]).map; }}},
      {"eta", {"h M N", [](P, H h, const V& m) { return eta(*h, m[0], m[1]).map; }}},
      {"theta", {"h M N", [](P, H h, const V& m) { return theta(*h, m[0], m[1]).map; }}},
      {"pi", {"h L M N", [](P, H h, const V& m) { return pi(*h, m[0], m[1], m[2]).map; }}},
      {"nu", {"h L M N", [](P, H h, const V& m) { return nu(*h, m[0], m[1], m[2]).map; }}},
      {"mu", {"h M N", [](P, H h, const V& m) { return mu(*h, m[0], m[1]).map; }}},
      {"alpha", {"h L M N", [](P, H h, const V& m) { return alpha(*h, m[0], m[1], m[2]).forward; }}},
      {"beta", {"psi h M", [](P p, H h, const V& m) { return coarsen_hom(CoarseContext(*h, *p), coextend(*h, m[0])).map; }}},
      {"tau", {"L", [](P, H, const V& m) { return tau(m[0]).map; }}},
      {"tau3", {"L M N", [](P, H, const V& m) { return tau3(m[0], m[1], m[2]).map; }}},
      {"kappa", {"M N...", [](P, H, const V& m) { return kappa(m[0], V(m.begin() + 1, m.end())).map; }}},
      {"lambda", {"M N...", [](P, H, const V& m) { return lambda_big(m[0], V(m.begin() + 1, m.end())).map; }}},
  };
  return table;
}

inline CanonicalMap build_canonical(const Workspace& ws, const std::string& name, const std::vector<std::string>& args) {
  auto it = canon_table().find(name);
  if (it == canon_table().end()) {
    std::string known;
    for (const auto& [k, v] : canon_table()) known += " " + k;
    throw UnknownName("unknown canonical map '" + name + "'; known:" + known);
  }
  const std::string& sig = it->second.signature;
  std::vector<std::string> slots;
  std::istringstream words(sig);
  for (std::string w; words >> w;) slots.push_back(w);
  const bool variadic = slots.back().ends_with("...");
  if (variadic ? args.size() < slots.size() : args.size() != slots.size())
    throw InputError("canon " + name + " expects arguments: " + sig);
  std::optional<GroupEpi> psi;
  std::optional<GradedRingHom> h;
  std::vector<ModulePtr> mods;
  std::string inputs;
  for (std::size_t i = 0; i < args.size(); ++i) {
    inputs += (i ? ", " : "") + args[i];
    const std::string& slot = slots[std::min(i, slots.size() - 1)];
    if (slot == "psi")
      psi = ws.epi(args[i]).epi;
    else if (slot == "h")
      h = resolve_hom(ws, args[i]);
    else
      mods.push_back(resolve_module(ws, args[i]));
  }
  return {name, inputs, it->second.build(psi ? &*psi : nullptr, h ? &*h : nullptr, mods)};
}

inline Json validate_report(const Workspace& ws) {
  Json j = Json::object();
  j["modulus"] = ws.modulus;
  Json groups = Json::object(), epis = Json::object(), rings = Json::object(), modules = Json::object(),
       homs = Json::object(), morphisms = Json::object();
  for (const auto& [k, g] : ws.groups) groups[k] = g.moduli();
  for (const auto& [k, e] : ws.epis) epis[k] = {{"source", e.source}, {"target", e.target}, {"matrix", e.epi.matrix()}};
  for (const auto& [k, r] : ws.rings) rings[k] = ring_report(*r.ring);
  for (const auto& [k, m] : ws.modules) {
    modules[k] = module_report(*m.module);
    modules[k]["ring"] = m.ring;
  }
  for (const auto& [k, h] : ws.homs)
    homs[k] = {{"source", h.source}, {"target", h.target}, {"blocks", blocks_report(h.hom.blocks)}};
  for (const auto& [k, u] : ws.morphisms)
    morphisms[k] = {{"source", u.source}, {"target", u.target}, {"blocks", blocks_report(u.morphism.blocks)}};
  j["groups"] = groups;
  j["epimorphisms"] = epis;
  j["rings"] = rings;
  j["modules"] = modules;
  j["ring_morphisms"] = homs;
  j["morphisms"] = morphisms;
  j["valid"] = true;
  return j;
}

inline Json coarsen_report(const Workspace& ws, const std::string& name, const GroupEpi& psi) {
  if (ws.rings.count(name)) return ring_report(*coarsen_ring(ws.ring(name).ring, psi).ring);
  if (ws.modules.count(name)) {
    const auto& m = ws.module(name).module;
    return module_report(*coarsen_module(m, coarsen_ring(m->ring, psi)).module);
  }
  if (ws.morphisms.count(name)) {
    const auto& u = ws.morphism(name).morphism;
    const auto r = coarsen_ring(u.source->ring, psi);
    return morphism_report(coarsen_morphism(u, coarsen_module(u.source, r), coarsen_module(u.target, r)));
  }
  if (ws.homs.count(name)) {
    const auto& h = ws.hom(name).hom;
    const auto k = coarsen_ring_hom(h, coarsen_ring(h.source, psi), coarsen_ring(h.target, psi));
    return {{"blocks", blocks_report(k.blocks)},
            {"source", ring_report(*k.source)},
            {"target", ring_report(*k.target)}};
  }
  throw UnknownName("unknown ring, module or morphism '" + name + "'");
}

}  // namespace detail

/// Runs one command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded change-of-ring calculus over Z/n", "grc"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<std::string> inputs;
  std::string format = "text";
  std::uint64_t seed = 1;
  app.add_option("--input,-i", inputs, "workspace file (repeatable)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "seed for randomized module generation");

  std::string a, b, h_name, psi_name, canon_name;
  std::vector<std::string> canon_args, family;
  std::size_t random_count = 0;

  auto* validate = app.add_subcommand("validate", "load and validate the workspace");
  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two modules");
  tensor_cmd->add_option("A", a)->required();
  tensor_cmd->add_option("B", b)->required();
  auto* hom_cmd = app.add_subcommand("hom", "graded Hom of two modules");
  hom_cmd->add_option("A", a)->required();
  hom_cmd->add_option("B", b)->required();
  auto* coarsen_cmd = app.add_subcommand("coarsen", "coarsen a ring, module or morphism");
  coarsen_cmd->add_option("X", a)->required();
  coarsen_cmd->add_option("--psi", psi_name)->required();
  std::map<std::string, CLI::App*> change;
  for (const auto& [n, what] : std::vector<std::pair<std::string, std::string>>{
           {"restrict", "scalar restriction"}, {"extend", "scalar extension"}, {"coextend", "scalar coextension"}}) {
    change[n] = app.add_subcommand(n, what);
    change[n]->add_option("--h", h_name)->required();
    change[n]->add_option("M", a)->required();
  }
  auto* canon_cmd = app.add_subcommand("canon", "construct and analyze a canonical map");
  canon_cmd->add_option("name", canon_name)->required();
  canon_cmd->add_option("args", canon_args);
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a morphism or module");
  analyze_cmd->add_option("name", a)->required();
  auto* epitest = app.add_subcommand("epitest", "ring epimorphism test");
  epitest->add_option("--h", h_name)->required();
  auto* battery = app.add_subcommand("battery", "epimorphism battery");
  battery->add_option("--h", h_name)->required();
  battery->add_option("--family", family, "S-modules added to the family");
  battery->add_option("--random", random_count, "seeded random S-modules added to the family");
  auto* scenario = app.add_subcommand("scenario", "shipped scenarios");
  scenario->require_subcommand(1);
  auto* scenario_list = scenario->add_subcommand("list", "list scenarios");
  auto* scenario_run = scenario->add_subcommand("run", "run a scenario, or all");
  scenario_run->add_option("name", a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  const Format fmt = format == "json" ? Format::Json : Format::Text;
  auto emit = [&](const Json& j) { out << emit_report(j, fmt); };

  try {
    if (scenario_list->parsed()) {
      Json list = Json::array();
      for (const auto& s : scenarios()) list.push_back({{"name", s.name}, {"summary", s.summary}, {"files", s.files}});
      emit({{"scenarios", list}});
      return kExitOk;
    }
    if (scenario_run->parsed()) {
      std::vector<const Scenario*> chosen;
      if (a == "all")
        for (const auto& s : scenarios()) chosen.push_back(&s);
      else
        chosen.push_back(&find_scenario(a));
      Json results = Json::array();
      bool ok = true;
      for (const auto* s : chosen) {
        const auto r = s->run(seed);
        ok = ok && r.passed();
        results.push_back(scenario_report(r));
        for (const auto& x : r.assertions)
          if (!x.holds())
            err << r.name << ": " << x.label << "\n  - expected " << x.expected.dump() << "\n  + actual   "
                << x.actual.dump() << "\n";
      }
      emit(chosen.size() == 1 ? results[0] : Json{{"passed", ok}, {"scenarios", results}});
      return ok ? kExitOk : kExitAssertion;
    }

    const Workspace ws = detail::load_inputs(inputs);
    if (validate->parsed()) {
      emit(detail::validate_report(ws));
    } else if (tensor_cmd->parsed()) {
      emit(module_report(*tensor(detail::resolve_module(ws, a), detail::resolve_module(ws, b)).module));
    } else if (hom_cmd->parsed()) {
      emit(module_report(*hom(detail::resolve_module(ws, a), detail::resolve_module(ws, b)).module));
    } else if (coarsen_cmd->parsed()) {
      emit(detail::coarsen_report(ws, a, ws.epi(psi_name).epi));
    } else if (change["restrict"]->parsed()) {
      emit(module_report(*restrict(detail::resolve_hom(ws, h_name), detail::resolve_module(ws, a))));
    } else if (change["extend"]->parsed()) {
      emit(module_report(*extend(detail::resolve_hom(ws, h_name), detail::resolve_module(ws, a)).module));
    } else if (change["coextend"]->parsed()) {
      emit(module_report(*coextend(detail::resolve_hom(ws, h_name), detail::resolve_module(ws, a)).module));
    } else if (canon_cmd->parsed()) {
      emit(canonical_report(detail::build_canonical(ws, canon_name, canon_args)));
    } else if (analyze_cmd->parsed()) {
      if (ws.modules.count(a) || ws.rings.count(a))
        emit(module_analysis_report(detail::resolve_module(ws, a)));
      else
        emit(analysis_report(ws.morphism(a).morphism));
    } else if (epitest->parsed()) {
      emit({{"ring epimorphism", is_ring_epimorphism(detail::resolve_hom(ws, h_name))}});
    } else if (battery->parsed()) {
      const auto h = detail::resolve_hom(ws, h_name);
      std::vector<ModulePtr> fam;
      for (const auto& n : family) fam.push_back(detail::resolve_module(ws, n));
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < random_count; ++i) fam.push_back(random_module(h.target, rng));
      emit(battery_report(d70_battery(h, fam)));
    }
    return kExitOk;
  } catch (const InconsistentBattery& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << " [" << e.axiom() << "]\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace grc
