#pragma once

// Decision procedures for morphism, module and ring predicates, and the
// decision batteries built on them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grc/canonical.hpp"
#include "grc/corpus.hpp"

namespace grc {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentBattery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t{1} << 16;

/// A homogeneous element.
struct Element {
  Degree degree;
  Vec value;
};

// ---------------------------------------------------------------------------
// morphisms

/// Nonzero element of the kernel, if any.
inline std::optional<Element> kernel_witness(const GradedMorphism& f) {
  for (const auto& g : f.source->support()) {
    auto k = kernel(f.component_map(g));
    if (!k.module.is_zero()) return Element{g, k.inclusion.apply(k.module.basis(0))};
  }
  return std::nullopt;
}

/// Generator of the target outside the image, if any.
inline std::optional<Element> cokernel_witness(const GradedMorphism& f) {
  for (const auto& g : f.target->support()) {
    const ZnMap c = f.component_map(g);
    if (is_surjective(c)) continue;
    const PreimageSolver solver(c);
    const ZnModule& t = f.target->component(g);
    for (std::size_t j = 0; j < t.rank(); ++j)
      if (!solver.solve(t.basis(j))) return Element{g, t.basis(j)};
  }
  return std::nullopt;
}

inline bool is_mono(const GradedMorphism& f) { return !kernel_witness(f); }
inline bool is_epi(const GradedMorphism& f) {
  for (const auto& g : f.target->support())
    if (!is_surjective(f.component_map(g))) return false;
  return true;
}
inline bool is_iso(const GradedMorphism& f) { return is_mono(f) && is_epi(f); }

namespace detail {

/// Coordinates of a morphism's blocks, with the order of each coordinate.
struct Flattening {
  std::vector<std::int64_t> orders;
};

inline Flattening flattening(const ModulePtr& s, const ModulePtr& t) {
  Flattening out;
  for (const auto& g : s->support()) {
    const ZnModule& tc = t->component(g);
    for (std::size_t i = 0; i < s->component(g).rank(); ++i)
      for (std::size_t j = 0; j < tc.rank(); ++j) out.orders.push_back(tc.order(j));
  }
  return out;
}

inline Vec flatten(const GradedMorphism& f) {
  Vec out;
  for (const auto& g : f.source->support()) {
    const ZnMap m = f.component_map(g);
    for (std::size_t i = 0; i < m.matrix().rows(); ++i)
      for (std::size_t j = 0; j < m.matrix().cols(); ++j) out.push_back(m.matrix().at(i, j));
  }
  return out;
}

/// Some g: B -> A with compose(f, g) = id_A (left = true) or compose(g, f) = id_B.
inline std::optional<GradedMorphism> one_sided_inverse(const GradedMorphism& f, bool left) {
  const ModulePtr& A = f.source;
  const ModulePtr& B = f.target;
  const auto& G = A->group();
  const ModulePtr& ends = left ? A : B;
  const auto H = hom(B, A);
  const ZnModule& h0 = H.module->component(G.zero());
  std::vector<GradedMorphism> basis;
  for (std::size_t c = 0; c < h0.rank(); ++c) basis.push_back(H.as_morphism(G.zero(), h0.basis(c), A));
  const auto fl = flattening(ends, ends);
  const Vec target = flatten(identity_morphism(ends));
  const std::int64_t n = A->modulus();
  ZnMatrix sys(n, 0, fl.orders.size());
  for (const auto& g : basis) sys.append_row(flatten(left ? compose(f, g) : compose(g, f)));
  for (std::size_t k = 0; k < fl.orders.size(); ++k) {
    Vec r(fl.orders.size(), 0);
    r[k] = fl.orders[k];
    sys.append_row(r);
  }
  if (fl.orders.empty()) return zero_morphism(B, A);
  auto x = solve_left(sys, target);
  if (!x) return std::nullopt;
  GradedMorphism out = zero_morphism(B, A);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if ((*x)[c] == 0) continue;
    GradedMorphism scaled = basis[c];
    for (auto& [d, b] : scaled.blocks)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b.set(i, j, mulmod(b.at(i, j), (*x)[c], n));
    out = add(out, GradedMorphism{B, A, scaled.blocks});
  }
  return out;
}

}  // namespace detail

/// v with v o f = id, i.e. f then v is the identity of the source.
inline std::optional<GradedMorphism> left_inverse(const GradedMorphism& f) { return detail::one_sided_inverse(f, true); }
/// v with f o v = id on the target.
inline std::optional<GradedMorphism> right_inverse(const GradedMorphism& f) {
  return detail::one_sided_inverse(f, false);
}

inline bool is_section(const GradedMorphism& f) { return left_inverse(f).has_value(); }
inline bool is_retraction(const GradedMorphism& f) { return right_inverse(f).has_value(); }
/// Monomorphisms with finite cokernel are pure exactly when they split.
inline bool is_pure(const GradedMorphism& f) { return is_mono(f) && is_section(f); }

struct MorphismAnalysis {
  bool mono = false, epi = false, iso = false, section = false, retraction = false, pure = false;
  std::optional<Element> kernel_element, missed_element;
  std::optional<GradedMorphism> left_inverse, right_inverse;
};

inline MorphismAnalysis analyze_morphism(const GradedMorphism& f) {
  MorphismAnalysis a;
  a.kernel_element = kernel_witness(f);
  a.missed_element = cokernel_witness(f);
  a.mono = !a.kernel_element;
  a.epi = !a.missed_element;
  a.iso = a.mono && a.epi;
  a.left_inverse = left_inverse(f);
  a.right_inverse = right_inverse(f);
  a.section = a.left_inverse.has_value();
  a.retraction = a.right_inverse.has_value();
  a.pure = a.mono && a.section;
  return a;
}

// ---------------------------------------------------------------------------
// isomorphism search

/// A degree-zero isomorphism A -> B found by enumerating Hom(A, B)_0. Returns
/// nullopt when the space is exhausted without success and throws
/// BudgetExceeded when it is larger than the budget.
inline std::optional<GradedMorphism> find_isomorphism(const ModulePtr& a, const ModulePtr& b,
                                                      std::uint64_t budget = kDefaultSearchBudget) {
  require_same_ring(a->ring, b->ring, "find_isomorphism");
  if (a->support() != b->support()) return std::nullopt;
  for (const auto& g : a->support())
    if (!(a->component(g) == b->component(g))) return std::nullopt;
  const auto& G = a->group();
  const auto H = hom(a, b);
  const ZnModule& h0 = H.module->component(G.zero());
  if (h0.cardinality() > budget)
    throw BudgetExceeded("find_isomorphism: Hom_0 has " + std::to_string(h0.cardinality()) +
                         " elements, budget is " + std::to_string(budget));
  for (const auto& u : h0.elements()) {
    auto f = H.as_morphism(G.zero(), u, b);
    if (is_iso(f)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// modules

/// p: (+) R(-d) -> M, one summand per canonical generator of each M_d.
struct FreeCover {
  std::vector<Degree> shifts;
  GradedMorphism map;
};

inline FreeCover free_cover(const ModulePtr& m) {
  const auto& G = m->group();
  FreeCover out;
  std::vector<std::pair<Degree, std::size_t>> gens;
  for (const auto& d : m->support())
    for (std::size_t i = 0; i < m->component(d).rank(); ++i) {
      out.shifts.push_back(G.negate(d));
      gens.emplace_back(d, i);
    }
  auto sum = direct_sum(m->ring, [&] {
    std::vector<ModulePtr> parts;
    for (const auto& s : out.shifts) parts.push_back(shift(regular_module(m->ring), s));
    return parts;
  }());
  GradedMorphism p = zero_morphism(sum.module, m);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& [d, i] = gens[k];
    // r -> r m_i on the k-th summand
    GradedMorphism q{sum.injections[k].source, m, {}};
    for (const auto& g : q.source->support()) {
      const ZnModule& x = q.source->component(g);
      ZnMatrix blk(m->modulus(), x.rank(), m->component(g).rank());
      for (std::size_t r = 0; r < x.rank(); ++r) {
        const Vec img = m->act(G.sub(g, d), x.basis(r), d, m->basis(d, i));
        for (std::size_t c = 0; c < img.size(); ++c) blk.set(r, c, img[c]);
      }
      q.blocks[g] = blk;
    }
    p = add(p, compose(sum.projections[k], q));
  }
  out.map = p;
  return out;
}

inline std::optional<GradedMorphism> projective_splitting(const ModulePtr& m) {
  return right_inverse(free_cover(m).map);
}

inline bool is_projective(const ModulePtr& m) { return projective_splitting(m).has_value(); }
inline bool is_flat(const ModulePtr& m) { return is_projective(m); }

/// Shifts s_i with M = (+) R(s_i), if M is free.
inline std::optional<std::vector<Degree>> free_shifts(const ModulePtr& m,
                                                      std::uint64_t budget = kDefaultSearchBudget) {
  if (m->is_zero()) return std::vector<Degree>{};
  const std::uint64_t r = m->ring->cardinality();
  std::uint64_t c = m->cardinality();
  std::size_t k = 0;
  while (c > 1 && c % r == 0) {
    c /= r;
    ++k;
  }
  if (c != 1 || r == 1) return std::nullopt;
  if (!is_projective(m)) return std::nullopt;
  const auto& G = m->group();
  const auto supp = m->support();
  std::vector<std::size_t> pick(k, 0);
  for (;;) {
    std::vector<Degree> shifts;
    for (auto p : pick) shifts.push_back(G.negate(supp[p]));
    auto f = free_module(m->ring, shifts);
    if (find_isomorphism(f, m, budget)) return shifts;
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] + 1 == supp.size()) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t q = pos; q < k; ++q) pick[q] = pick[pos - 1];
  }
  return std::nullopt;
}

inline bool is_free(const ModulePtr& m) { return free_shifts(m).has_value(); }

struct ModuleAnalysis {
  std::optional<std::vector<Degree>> free;
  bool projective = false, flat = false;
  bool finite_type = true, finite_presentation = true, small = true;
  std::size_t generators = 0;  // size of the free cover
  std::size_t relations = 0;   // generators of the kernel of the free cover
  std::optional<GradedMorphism> splitting;
};

inline ModuleAnalysis analyze_module(const ModulePtr& m) {
  ModuleAnalysis a;
  const auto cover = free_cover(m);
  a.generators = cover.shifts.size();
  a.relations = free_cover(kernel(cover.map).module).shifts.size();
  a.splitting = right_inverse(cover.map);
  a.projective = a.splitting.has_value();
  a.flat = a.projective;
  a.free = free_shifts(m);
  return a;
}

// ---------------------------------------------------------------------------
// ring morphisms

inline GradedMorphism sigma_s(const GradedRingHom& h) { return counit_sigma(h, regular_module(h.target)); }

inline bool is_ring_epimorphism(const GradedRingHom& h) { return is_iso(sigma_s(h)); }

/// Whether s -> s (x) 1 and s -> 1 (x) s agree as maps S -> S (x)_R S.
inline bool coprojections_agree(const GradedRingHom& h) {
  const auto& S = *h.target;
  const auto reg = regular_module(h.target);
  const auto t = extend(h, restrict(h, reg));
  for (const auto& g : S.support())
    for (std::size_t i = 0; i < S.component(g).rank(); ++i) {
      const Vec s = S.basis(g, i);
      if (t.locate(g, s, S.group().zero(), S.one) != t.locate(S.group().zero(), S.one, g, s)) return false;
    }
  return true;
}

/// S and its shifts by the degrees within reach of its support.
inline std::vector<ModulePtr> standard_family(const RingPtr& s) {
  std::vector<ModulePtr> out;
  for (const auto& g : shift_candidates(*s)) out.push_back(shift(regular_module(s), g));
  return out;
}

struct EpiBatteryReport {
  static constexpr std::array<const char*, 7> statements{
      "(i) h is an epimorphism",          "(ii) sigma_S is an isomorphism", "(iii) sigma is an isomorphism",
      "(iv) rho~ is an isomorphism",      "(v) gamma is an isomorphism",    "(vi) eta is an isomorphism",
      "(vii) eta_{S,-} is an isomorphism"};
  std::array<bool, 7> verdicts{};
  std::size_t family_size = 0;
  bool decisive = false;  // (ii)
};

/// Statements (iii)-(vii) are evaluated on the family, extended by S and its
/// shifts. Throws InconsistentBattery if the verdicts differ.
inline EpiBatteryReport d70_battery(const GradedRingHom& h, std::vector<ModulePtr> family = {}) {
  for (auto& m : standard_family(h.target)) family.insert(family.begin(), m);
  for (const auto& m : family) require_same_ring(h.target, m->ring, "d70_battery");
  EpiBatteryReport r;
  r.family_size = family.size();
  const auto reg = regular_module(h.target);
  r.verdicts[0] = coprojections_agree(h);
  r.verdicts[1] = is_ring_epimorphism(h);
  r.decisive = r.verdicts[1];
  bool iii = true, iv = true, v = true, vi = true, vii = true;
  for (const auto& n : family) {
    iii = iii && is_iso(counit_sigma(h, n));
    iv = iv && is_iso(unit_rho_tilde(h, n));
    vii = vii && is_iso(eta(h, reg, n).map);
    for (const auto& m : family) {
      v = v && is_iso(gamma(h, m, n).map);
      vi = vi && is_iso(eta(h, m, n).map);
    }
  }
  r.verdicts[2] = iii;
  r.verdicts[3] = iv;
  r.verdicts[4] = v;
  r.verdicts[5] = vi;
  r.verdicts[6] = vii;
  for (std::size_t i = 0; i < 7; ++i)
    if (r.verdicts[i] != r.verdicts[1])
      throw InconsistentBattery(std::string("epimorphism battery: ") + EpiBatteryReport::statements[i] + " evaluates to " +
                                (r.verdicts[i] ? "true" : "false") + " but (ii) evaluates to " +
                                (r.verdicts[1] ? "true" : "false"));
  return r;
}

/// (is_ring_epimorphism(h), is_ring_epimorphism(h_[psi])).
inline std::pair<bool, bool> d80_check(const GradedRingHom& h, const GroupEpi& psi) {
  const CoarseContext cx(h, psi);
  return {is_ring_epimorphism(h), is_ring_epimorphism(cx.hc)};
}

// ---------------------------------------------------------------------------
// unit and counit flags against h

struct C50Report {
  MorphismAnalysis underline;
  bool rho_mono = true, rho_epi = true, rho_iso = true;
  bool sigma_tilde_mono = true, sigma_tilde_epi = true, sigma_tilde_iso = true;

  /// rho: mono, epi, iso <-> pure, epi, iso; sigma~: mono, epi, iso <-> epi, section, iso.
  bool consistent() const {
    return rho_mono == underline.pure && rho_epi == underline.epi && rho_iso == underline.iso &&
           sigma_tilde_mono == underline.epi && sigma_tilde_epi == underline.section &&
           sigma_tilde_iso == underline.iso;
  }
};

/// Flags of rho and sigma~ over a family of R-modules (R and its shifts are
/// always included) next to those of h as a morphism of R-modules.
inline C50Report c50_check(const GradedRingHom& h, std::vector<ModulePtr> family = {}) {
  for (auto& m : standard_family(h.source)) family.insert(family.begin(), m);
  C50Report r;
  r.underline = analyze_morphism(underline(h));
  for (const auto& m : family) {
    const auto rho = unit_rho(h, m);
    const auto st = counit_sigma_tilde(h, m);
    const bool rm = is_mono(rho), re = is_epi(rho), sm = is_mono(st), se = is_epi(st);
    r.rho_mono = r.rho_mono && rm;
    r.rho_epi = r.rho_epi && re;
    r.rho_iso = r.rho_iso && rm && re;
    r.sigma_tilde_mono = r.sigma_tilde_mono && sm;
    r.sigma_tilde_epi = r.sigma_tilde_epi && se;
    r.sigma_tilde_iso = r.sigma_tilde_iso && sm && se;
  }
  return r;
}

// ---------------------------------------------------------------------------
// h^* versus h~

struct MoritaReport {
  bool projective = false;                  // h_*(S) projective (and of finite type)
  std::optional<GradedMorphism> base_iso;   // S -> h~(R)
  bool result() const { return projective && base_iso.has_value(); }
};

inline MoritaReport morita_check(const GradedRingHom& h, std::uint64_t budget = kDefaultSearchBudget) {
  MoritaReport r;
  r.projective = is_projective(restrict(h, regular_module(h.target)));
  r.base_iso = find_isomorphism(regular_module(h.target), coextend(h, regular_module(h.source)).module, budget);
  return r;
}

/// h^*(M) -> h~(R) (x)_R M -> Hom_R(S, R (x)_R M) -> h~(M), through phi: S -> h~(R)
/// and nu_{S,R,M}.
inline GradedMorphism morita_iso(const GradedRingHom& h, const GradedMorphism& phi, const ModulePtr& m) {
  const auto s = regular_module(h.target);
  const auto r = regular_module(h.source);
  const auto ext = extend(h, m);
  const auto v = nu(h, s, r, m);
  const auto co = coextend(h, m);
  const auto first = tensor_map(ext, v.lhs, phi, identity_morphism(m));
  const auto last = hom_map(v.rhs, co, identity_morphism(s), tensor_unit(v.mn));
  return compose(compose(first, v.map), last);
}

// ---------------------------------------------------------------------------
// the adjunctions (h_+, h^*) and (h~, h^+) when h_*(S) is projective of finite type

struct TriangleCheck {
  std::string name;
  bool holds = false;
};

/// theta_M: h^*(M) -> Hom_R(h~(R), M), which is mu_{S,M}.
inline MuWitness plus_comparison(const GradedRingHom& h, const ModulePtr& m) {
  return mu(h, regular_module(h.target), m);
}

/// Triangle identities for h_+ -| h^* at an S-module N and an R-module M,
/// with unit and counit transported along mu.
inline std::vector<TriangleCheck> plus_triangles(const GradedRingHom& h, const ModulePtr& n, const ModulePtr& m) {
  const auto P = coextend(h, regular_module(h.source)).module;
  // unit_N: N -> h^*(h_+(N)) and counit_M: h_+(h^*(M)) -> M
  auto unit = [&](const ModulePtr& x) {
    const auto t = tensor(x, P);
    const auto hp = restrict(h, t.module);
    const auto th = plus_comparison(h, hp);
    const auto H = th.rhs;
    auto u = morphism_from_generators(
        x, H.module,
        [&](const Degree& g, std::size_t i) {
          return hom_element(
              H, g,
              [&](const Degree& d, std::size_t c) { return t.locate(g, x->basis(g, i), d, P->basis(d, c)); },
              "plus_unit");
        },
        "plus_unit");
    return compose(u, inverse(th.map));
  };
  auto counit = [&](const ModulePtr& y) {
    const auto th = plus_comparison(h, y);
    const auto t = tensor(th.lhs.module, P);
    const auto t2 = tensor(th.rhs.module, P);
    const auto conv = restrict(h, tensor_map(t, t2, th.map, identity_morphism(P)));
    auto ev = morphism_from_tensor(
        t2, restrict(h, t2.module), y,
        [&](const Degree& g, std::size_t i, const Degree& d, std::size_t c) {
          return th.rhs.evaluate(g, th.rhs.module->basis(g, i), d, P->basis(d, c));
        },
        "plus_counit");
    return compose(conv, ev);
  };
  std::vector<TriangleCheck> out;
  {
    // counit_{h_+ N} o h_+(unit_N) = id
    const auto t = tensor(n, P);
    const auto hp = restrict(h, t.module);
    const auto un = unit(n);
    const auto t3 = tensor(un.target, P);
    const auto lifted = restrict(h, tensor_map(t, t3, un, identity_morphism(P)));
    out.push_back({"counit h_+ o h_+ unit", compose(lifted, counit(hp)) == identity_morphism(hp)});
  }
  {
    // h^*(counit_M) o unit_{h^* M} = id
    const auto e = extend(h, m);
    const auto un = unit(e.module);
    const auto cm = counit(m);
    const auto e2 = extend(h, cm.source);
    out.push_back({"h^* counit o unit h^*", compose(un, extend_map(e2, e, cm)) == identity_morphism(e.module)});
  }
  return out;
}

/// omega_M: h~(R) (x)_R M -> h~(M), nu_{S,R,M} followed by R (x) M = M.
inline GradedMorphism sharp_comparison(const GradedRingHom& h, const ModulePtr& m) {
  const auto s = regular_module(h.target);
  const auto v = nu(h, s, regular_module(h.source), m);
  return compose(v.map, hom_map(v.rhs, coextend(h, m), identity_morphism(s), tensor_unit(v.mn)));
}

/// Triangle identities for h~ -| h^+ at an R-module M and an S-module N.
inline std::vector<TriangleCheck> sharp_triangles(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  const auto idr = identity_ring_hom(h.source);
  const auto P = coextend(h, regular_module(h.source)).module;
  // unit_M: M -> h^+(h~(M)), counit_N: h~(h^+(N)) -> N
  auto unit = [&](const ModulePtr& x) {
    const auto t = tensor(h, P, idr, x, Side::Left);
    const auto target = hom(P, t.module);
    const auto omega = sharp_comparison(h, x);
    const auto co = coextend(h, x);
    const auto H = hom(P, co.module);
    auto u = morphism_from_generators(
        x, restrict(h, target.module),
        [&](const Degree& g, std::size_t i) {
          return hom_element(
              target, g,
              [&](const Degree& d, std::size_t c) { return t.locate(d, P->basis(d, c), g, x->basis(g, i)); },
              "sharp_unit");
        },
        "sharp_unit");
    return compose(u, restrict(h, hom_map(target, H, identity_morphism(P), omega)));
  };
  auto counit = [&](const ModulePtr& y) {
    const auto H = hom(P, y);
    const auto hy = restrict(h, H.module);
    const auto t = tensor(h, P, idr, hy, Side::Left);
    auto ev = morphism_from_tensor(
        t, t.module, y,
        [&](const Degree& d, std::size_t c, const Degree& g, std::size_t i) {
          return H.evaluate(g, H.module->basis(g, i), d, P->basis(d, c));
        },
        "sharp_counit");
    return compose(inverse(sharp_comparison(h, hy)), ev);
  };
  std::vector<TriangleCheck> out;
  {
    // counit_{h~ M} o h~(unit_M) = id
    const auto co = coextend(h, m);
    const auto un = unit(m);
    const auto co2 = coextend(h, un.target);
    const auto lifted = coextend_map(co, co2, un);
    out.push_back({"counit h~ o h~ unit", compose(lifted, counit(co.module)) == identity_morphism(co.module)});
  }
  {
    // h^+(counit_N) o unit_{h^+ N} = id
    const auto H = hom(P, n);
    const auto hn = restrict(h, H.module);
    const auto un = unit(hn);
    const auto cn = counit(n);
    const auto H2 = hom(P, cn.source);
    const auto lifted = restrict(h, hom_map(H2, H, identity_morphism(P), cn));
    out.push_back({"h^+ counit o unit h^+", compose(un, lifted) == identity_morphism(hn)});
  }
  return out;
}

}  // namespace grc
