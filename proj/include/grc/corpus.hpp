#pragma once

// Standard rings, ring morphisms and module generators used by the tests,
// the scenarios and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grc/graded.hpp"

namespace grc {

/// (Z/c)[X]/(X^k) over Z/n coefficients, deg X = d. Raw generator layout is
/// recorded so that maps can be written on monomials.
struct PolynomialRing {
  RingSpec spec;
  RingPtr ring;
  std::vector<std::pair<Degree, std::size_t>> monomial;  // X^i -> (degree, raw index)
  std::int64_t characteristic = 0;
};

inline PolynomialRing truncated_polynomial(const FgAbelianGroup& G, std::int64_t n, std::int64_t c, std::size_t k,
                                           const Degree& d) {
  if (k == 0) throw GroupError("truncated_polynomial: k must be positive");
  if (n % c != 0) throw ZnError("truncated_polynomial: characteristic must divide the modulus");
  PolynomialRing p;
  p.characteristic = c;
  p.spec.group = G;
  p.spec.n = n;
  Degree deg = G.zero();
  for (std::size_t i = 0; i < k; ++i) {
    auto& comp = p.spec.components[deg];
    p.monomial.emplace_back(deg, comp.gens++);
    deg = G.add(deg, d);
  }
  for (auto& [g, comp] : p.spec.components)
    if (c != n)
      for (std::size_t i = 0; i < comp.gens; ++i) {
        Vec r(comp.gens, 0);
        r[i] = c;
        comp.relations.push_back(r);
      }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const auto& [gi, ri] = p.monomial[i];
      const auto& [gj, rj] = p.monomial[j];
      const Degree gk = G.add(gi, gj);
      auto it = p.spec.components.find(gk);
      if (i + j >= k && it == p.spec.components.end()) continue;
      Vec v(it->second.gens, 0);
      if (i + j < k) v[p.monomial[i + j].second] = 1;
      p.spec.mult.push_back({gi, ri, gj, rj, v});
    }
  p.spec.one = Vec(p.spec.components[G.zero()].gens, 0);
  p.spec.one[0] = 1;
  p.ring = build_ring(p.spec);
  return p;
}

/// The ring morphism X -> X between truncations (k_source >= k_target, or an
/// inclusion when the source is the coefficient ring with k = 1).
inline GradedRingHom polynomial_map(const PolynomialRing& s, const PolynomialRing& t) {
  if (s.characteristic % t.characteristic != 0)
    throw IllDefinedMap("polynomial_map: characteristics are incompatible");
  auto raw = [&](const Degree& g, std::size_t i) {
    std::size_t power = s.monomial.size();
    for (std::size_t e = 0; e < s.monomial.size(); ++e)
      if (s.monomial[e].first == g && s.monomial[e].second == i) power = e;
    auto it = t.spec.components.find(g);
    Vec v(it == t.spec.components.end() ? 0 : it->second.gens, 0);
    if (power < t.monomial.size()) v[t.monomial[power].second] = 1;
    return v;
  };
  return make_ring_hom(s.ring, t.ring,
                       blocks_from_raw(s.spec.group, s.spec.n, s.spec.components, t.spec.components, raw));
}

/// A ring morphism together with the coarsenings it is studied under.
struct Instance {
  std::string name;
  GradedRingHom h;
  std::vector<GroupEpi> coarsenings;
};

inline GroupEpi to_trivial(const FgAbelianGroup& G) {
  return make_epi(G, make_group({}), std::vector<Vec>(G.rank(), Vec{}));
}

inline Instance z4_to_z2() {
  const auto G = make_group({});
  auto r = truncated_polynomial(G, 4, 4, 1, {});
  auto s = truncated_polynomial(G, 4, 2, 1, {});
  return {"z4_to_z2", polynomial_map(r, s), {GroupEpi::identity(G)}};
}

/// F_2 -> F_2[t]/(t^2), deg t = 1, graded by Z/2 (or ungraded).
inline Instance frobenius(bool graded) {
  const auto G = graded ? make_group({2}) : make_group({});
  const Degree d = graded ? Degree{1} : Degree{};
  auto r = truncated_polynomial(G, 2, 2, 1, d);
  auto s = truncated_polynomial(G, 2, 2, 2, d);
  std::vector<GroupEpi> cs{GroupEpi::identity(G)};
  if (graded) cs.push_back(to_trivial(G));
  return {graded ? "frobenius" : "frobenius_ungraded", polynomial_map(r, s), cs};
}

/// F_2[X]/(X^3) -> F_2[X]/(X^2); grading: "none", "z3" (deg X = 1 in Z/3) or "z" (deg X = 1 in Z).
inline Instance truncation(const std::string& grading) {
  FgAbelianGroup G = grading == "z3" ? make_group({3}) : grading == "z" ? make_group({0}) : make_group({});
  const Degree d = grading == "none" ? Degree{} : Degree{1};
  auto r = truncated_polynomial(G, 2, 2, 3, d);
  auto s = truncated_polynomial(G, 2, 2, 2, d);
  std::vector<GroupEpi> cs{GroupEpi::identity(G)};
  if (grading != "none") cs.push_back(to_trivial(G));
  return {"truncation_" + grading, polynomial_map(r, s), cs};
}

/// Identity on F_2[X]/(X^3) graded by Z, deg X = 1.
inline Instance cubic_identity() {
  const auto G = make_group({0});
  auto r = truncated_polynomial(G, 2, 2, 3, {1});
  return {"cubic_identity", identity_ring_hom(r.ring), {GroupEpi::identity(G), to_trivial(G)}};
}

inline Instance z4_identity() {
  const auto G = make_group({});
  auto r = truncated_polynomial(G, 4, 4, 1, {});
  return {"z4_identity", identity_ring_hom(r.ring), {GroupEpi::identity(G)}};
}

inline std::vector<Instance> standard_instances() {
  return {z4_to_z2(),        frobenius(true),     frobenius(false), truncation("none"),
          truncation("z3"), truncation("z"),     cubic_identity(), z4_identity()};
}

// ---------------------------------------------------------------------------
// random modules

/// Degrees within reach of the ring support, used to place shifts.
inline std::vector<Degree> shift_candidates(const GradedRing& r) {
  const auto& G = r.group();
  std::set<Degree> out{G.zero()};
  for (const auto& g : r.support()) {
    out.insert(g);
    out.insert(G.negate(g));
  }
  return {out.begin(), out.end()};
}

/// A quotient of a free module with 1-2 random shifts by a random graded
/// submodule generated by 0-2 homogeneous elements.
inline ModulePtr random_module(const RingPtr& r, std::mt19937_64& rng) {
  const auto shifts_pool = shift_candidates(*r);
  std::uniform_int_distribution<std::size_t> pick(0, shifts_pool.size() - 1);
  std::uniform_int_distribution<int> count(1, 2), rel_count(0, 2);
  std::vector<Degree> shifts;
  for (int i = count(rng); i > 0; --i) shifts.push_back(shifts_pool[pick(rng)]);
  ModulePtr f = free_module(r, shifts);
  const auto supp = f->support();
  if (supp.empty()) return f;
  std::uniform_int_distribution<std::size_t> pick_deg(0, supp.size() - 1);
  std::uniform_int_distribution<std::int64_t> coef(0, r->modulus() - 1);
  std::map<Degree, std::vector<Vec>> seeds;
  for (int i = rel_count(rng); i > 0; --i) {
    const Degree d = supp[pick_deg(rng)];
    Vec v(f->component(d).rank());
    for (auto& x : v) x = coef(rng);
    seeds[d].push_back(f->component(d).reduce(v));
  }
  // R v is spanned by the products of v with ring generators
  const auto& G = r->group();
  std::map<Degree, std::vector<Vec>> gens;
  for (const auto& [d, vs] : seeds)
    for (const auto& v : vs)
      for (const auto& a : r->support()) {
        const Degree k = G.add(a, d);
        if (!f->in_support(k)) continue;
        for (std::size_t b = 0; b < r->component(a).rank(); ++b) gens[k].push_back(f->act(a, r->basis(a, b), d, v));
      }
  std::map<Degree, ZnMatrix> mats;
  for (const auto& [d, vs] : gens) mats[d] = ZnMatrix::from_rows(r->modulus(), f->component(d).rank(), vs);
  auto sub = graded_submodule(f, mats);
  return cokernel(sub.inclusion).module;
}

}  // namespace grc
