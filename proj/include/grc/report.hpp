#pragma once

// Deterministic reports. Objects are nlohmann::json values whose keys are
// sorted; the text form renders the same tree.

#include <string>
#include <vector>

#include <json.hpp>

#include "grc/analyze.hpp"
#include "grc/canonical.hpp"

namespace grc {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline std::string degree_label(const Degree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

inline Json module_report(const GradedModule& m) {
  Json comps = Json::array();
  for (const auto& [d, c] : m.components()) comps.push_back({{"degree", degree_label(d)}, {"orders", c.orders()}});
  return {{"cardinality", m.cardinality()}, {"components", comps}};
}

inline Json ring_report(const GradedRing& r) {
  Json comps = Json::array();
  for (const auto& [d, c] : r.components()) comps.push_back({{"degree", degree_label(d)}, {"orders", c.orders()}});
  return {{"cardinality", r.cardinality()}, {"components", comps}, {"group", r.group().moduli()}, {"modulus", r.modulus()}};
}

inline Json blocks_report(const std::map<Degree, ZnMatrix>& blocks) {
  Json out = Json::array();
  for (const auto& [d, b] : blocks) out.push_back({{"degree", degree_label(d)}, {"matrix", b.row_list()}});
  return out;
}

inline Json morphism_report(const GradedMorphism& u) {
  return {{"source", module_report(*u.source)}, {"target", module_report(*u.target)}, {"blocks", blocks_report(u.blocks)}};
}

inline Json element_report(const std::optional<Element>& e) {
  if (!e) return nullptr;
  return {{"degree", degree_label(e->degree)}, {"value", e->value}};
}

inline Json flags_report(const MorphismAnalysis& a) {
  return {{"epi", a.epi},     {"iso", a.iso},   {"mono", a.mono},
          {"pure", a.pure},   {"retraction", a.retraction}, {"section", a.section}};
}

inline Json analysis_report(const GradedMorphism& u) {
  const MorphismAnalysis a = analyze_morphism(u);
  Json j = morphism_report(u);
  j["flags"] = flags_report(a);
  j["kernel_element"] = element_report(a.kernel_element);
  j["missed_element"] = element_report(a.missed_element);
  j["left_inverse"] = a.left_inverse ? blocks_report(a.left_inverse->blocks) : Json(nullptr);
  j["right_inverse"] = a.right_inverse ? blocks_report(a.right_inverse->blocks) : Json(nullptr);
  return j;
}

inline Json canonical_report(const CanonicalMap& c) {
  Json j = analysis_report(c.map);
  j["name"] = c.name;
  j["inputs"] = c.inputs;
  return j;
}

inline Json module_analysis_report(const ModulePtr& m) {
  const ModuleAnalysis a = analyze_module(m);
  Json shifts = nullptr;
  if (a.free) {
    shifts = Json::array();
    for (const auto& d : *a.free) shifts.push_back(degree_label(d));
  }
  return {{"module", module_report(*m)},
          {"flags",
           {{"finite_presentation", a.finite_presentation},
            {"finite_type", a.finite_type},
            {"flat", a.flat},
            {"free", a.free.has_value()},
            {"projective", a.projective},
            {"small", a.small}}},
          {"free_shifts", shifts},
          {"generators", a.generators},
          {"relations", a.relations}};
}

inline Json battery_report(const EpiBatteryReport& b) {
  Json v = Json::array();
  for (std::size_t i = 0; i < b.verdicts.size(); ++i)
    v.push_back({{"statement", EpiBatteryReport::statements[i]}, {"verdict", b.verdicts[i]}});
  return {{"decisive", b.decisive}, {"family_size", b.family_size}, {"verdicts", v}};
}

namespace detail {

inline bool is_scalar_list(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured() && !is_scalar_list(x)) return false;
  return true;
}

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

inline void render_text(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_scalar_list(v))) {
        out += pad + k + ":\n";
        render_text(v, indent + 2, out);
      } else {
        out += pad + k + ": " + scalar_text(v) + "\n";
      }
    }
  } else if (j.is_array()) {
    if (j.empty()) out += pad + "[]\n";
    for (const auto& v : j) {
      if (v.is_object()) {
        std::string inner;
        render_text(v, indent + 2, inner);
        inner.replace(static_cast<std::size_t>(indent), 2, "- ");
        out += inner;
      } else {
        out += pad + "- " + scalar_text(v) + "\n";
      }
    }
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

}  // namespace detail

enum class Format { Text, Json };

inline std::string emit_report(const Json& report, Format f) {
  if (f == Format::Json) {
    Json j = report;
    j["format_version"] = kFormatVersion;
    return j.dump(2) + "\n";
  }
  std::string out;
  detail::render_text(report, 0, out);
  return out;
}

}  // namespace grc
