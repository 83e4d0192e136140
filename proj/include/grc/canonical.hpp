#pragma once

// Canonical morphisms, each built on generators from its element formula and
// validated against the defining relations of its source.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "grc/functors.hpp"

namespace grc {

struct CanonicalMap {
  std::string name;
  std::string inputs;
  GradedMorphism map;
};

namespace detail {

inline Vec accumulate(const ZnModule& m, Vec acc, std::int64_t c, const Vec& v) {
  return m.add(acc, m.scale(c, v));
}

}  // namespace detail

/// h as a morphism of R-modules R -> h_*(S).
inline GradedMorphism underline(const GradedRingHom& h) {
  return GradedMorphism{regular_module(h.source), restrict(h, regular_module(h.target)), h.blocks};
}

// ---------------------------------------------------------------------------
// units and counits

/// rho_M: M -> h_*(h^*(M)), x -> 1 (x) x; ext = extend(h, M).
inline GradedMorphism unit_rho(const GradedRingHom& h, const ModulePtr& m, const TensorWitness& ext) {
  const auto& S = *h.target;
  return morphism_from_generators(
      m, restrict(h, ext.module),
      [&](const Degree& g, std::size_t i) { return ext.locate(S.group().zero(), S.one, g, m->basis(g, i)); }, "rho");
}

/// sigma_N: h^*(h_*(N)) -> N, s (x) x -> s x; ext = extend(h, h_*(N)).
inline GradedMorphism counit_sigma(const GradedRingHom& h, const ModulePtr& n, const TensorWitness& ext) {
  return morphism_from_tensor(
      ext, ext.module, n,
      [&](const Degree& a, std::size_t b, const Degree& g, std::size_t j) {
        return n->act(a, h.target->basis(a, b), g, n->basis(g, j));
      },
      "sigma");
}

/// rho~_N: N -> h~(h_*(N)), x -> (s -> s x); co = coextend(h, h_*(N)).
inline GradedMorphism unit_rho_tilde(const GradedRingHom& h, const ModulePtr& n, const HomWitness& co) {
  const auto& S = *h.target;
  return morphism_from_generators(
      n, co.module,
      [&](const Degree& g, std::size_t i) {
        const Vec x = n->basis(g, i);
        return hom_element(
            co, g, [&](const Degree& a, std::size_t b) { return n->act(a, S.basis(a, b), g, x); }, "rho_tilde");
      },
      "rho_tilde");
}

/// sigma~_M: h_*(h~(M)) -> M, u -> u(1); co = coextend(h, M).
inline GradedMorphism counit_sigma_tilde(const GradedRingHom& h, const ModulePtr& m, const HomWitness& co) {
  const auto& S = *h.target;
  return morphism_from_generators(
      restrict(h, co.module), m,
      [&](const Degree& g, std::size_t c) {
        return co.evaluate(g, co.module->basis(g, c), S.group().zero(), S.one);
      },
      "sigma_tilde");
}

inline GradedMorphism unit_rho(const GradedRingHom& h, const ModulePtr& m) { return unit_rho(h, m, extend(h, m)); }
inline GradedMorphism counit_sigma(const GradedRingHom& h, const ModulePtr& n) {
  return counit_sigma(h, n, extend(h, restrict(h, n)));
}
inline GradedMorphism unit_rho_tilde(const GradedRingHom& h, const ModulePtr& n) {
  return unit_rho_tilde(h, n, coextend(h, restrict(h, n)));
}
inline GradedMorphism counit_sigma_tilde(const GradedRingHom& h, const ModulePtr& m) {
  return counit_sigma_tilde(h, m, coextend(h, m));
}

/// Hom_S(S, N) -> N, u -> u(1).
inline GradedMorphism hom_unit(const HomWitness& w) {
  const auto& S = *w.source->ring;
  return morphism_from_generators(
      w.module, w.target,
      [&](const Degree& g, std::size_t c) {
        return w.evaluate(g, w.module->basis(g, c), S.group().zero(), S.one);
      },
      "hom_unit");
}

/// S (x)_S N -> N, s (x) x -> s x.
inline GradedMorphism tensor_unit(const TensorWitness& t) {
  return morphism_from_tensor(
      t, t.module, t.right,
      [&](const Degree& a, std::size_t b, const Degree& g, std::size_t j) {
        return t.right->act(a, t.left->basis(a, b), g, t.right->basis(g, j));
      },
      "tensor_unit");
}

// ---------------------------------------------------------------------------
// interplay with tensor and Hom

struct DeltaWitness {
  TensorWitness em, en, lhs, mn, rhs;
  GradedMorphism forward, inverse;
};

/// delta: h^*(M) (x)_S h^*(N) -> h^*(M (x)_R N) and its inverse.
inline DeltaWitness delta(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  const auto& S = *h.target;
  const auto& G = S.group();
  DeltaWitness w;
  w.em = extend(h, m);
  w.en = extend(h, n);
  w.lhs = tensor(w.em.module, w.en.module);
  w.mn = tensor(m, n);
  w.rhs = extend(h, w.mn.module);
  w.forward = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const ZnModule& out = w.rhs.module->component(G.add(g, k));
        Vec acc = out.zero_element();
        for (const auto& t1 : w.em.expand(g, w.em.module->basis(g, i)))
          for (const auto& t2 : w.en.expand(k, w.en.module->basis(k, j))) {
            const Vec s = S.multiply(t1.g, S.basis(t1.g, t1.i), t2.g, S.basis(t2.g, t2.i));
            const Vec x = w.mn.locate(t1.h, m->basis(t1.h, t1.j), t2.h, n->basis(t2.h, t2.j));
            const Vec v = w.rhs.locate(G.add(t1.g, t2.g), s, G.add(t1.h, t2.h), x);
            acc = detail::accumulate(out, acc, mulmod(t1.coef, t2.coef, out.modulus()), v);
          }
        return acc;
      },
      "delta");
  w.inverse = morphism_from_tensor(
      w.rhs, w.rhs.module, w.lhs.module,
      [&](const Degree& a, std::size_t b, const Degree& d, std::size_t c) {
        const ZnModule& out = w.lhs.module->component(G.add(a, d));
        Vec acc = out.zero_element();
        for (const auto& t : w.mn.expand(d, w.mn.module->basis(d, c))) {
          const Vec x = w.em.locate(G.zero(), S.one, t.g, m->basis(t.g, t.i));
          const Vec y = w.en.locate(G.zero(), S.one, t.h, n->basis(t.h, t.j));
          const Vec p = w.lhs.locate(t.g, x, t.h, y);
          acc = detail::accumulate(out, acc, t.coef, w.lhs.module->act(a, S.basis(a, b), d, p));
        }
        return acc;
      },
      "delta_inverse");
  return w;
}

struct GammaWitness {
  TensorWitness lhs, rhs;
  GradedMorphism map;
};

/// gamma: h_*(M) (x)_R h_*(N) -> h_*(M (x)_S N), x (x) y -> x (x) y.
inline GammaWitness gamma(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  GammaWitness w;
  w.lhs = tensor(restrict(h, m), restrict(h, n));
  w.rhs = tensor(m, n);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, restrict(h, w.rhs.module),
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        return w.rhs.locate(g, m->basis(g, i), k, n->basis(k, j));
      },
      "gamma");
  return w;
}

struct EpsilonWitness {
  HomWitness cm, cn;
  TensorWitness lhs, mn;
  HomWitness rhs;
  GradedMorphism map;
};

/// epsilon: h~(M) (x)_S h~(N) -> h~(M (x)_R N), u (x) v -> (s -> u(s) (x) v(1)).
/// Throws IllDefinedMap when the formula does not respect the S-balance.
inline EpsilonWitness epsilon(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  const auto& S = *h.target;
  const auto& G = S.group();
  EpsilonWitness w;
  w.cm = coextend(h, m);
  w.cn = coextend(h, n);
  w.lhs = tensor(w.cm.module, w.cn.module);
  w.mn = tensor(m, n);
  w.rhs = coextend(h, w.mn.module);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const Vec u = w.cm.module->basis(g, i);
        const Vec v1 = w.cn.evaluate(k, w.cn.module->basis(k, j), G.zero(), S.one);
        return hom_element(
            w.rhs, G.add(g, k),
            [&](const Degree& a, std::size_t b) {
              return w.mn.locate(G.add(a, g), w.cm.evaluate(g, u, a, S.basis(a, b)), k, v1);
            },
            "epsilon");
      },
      "epsilon");
  return w;
}

struct EtaWitness {
  HomWitness over_s, over_r;
  GradedMorphism map;
};

/// eta: h_*(Hom_S(M, N)) -> Hom_R(h_*(M), h_*(N)), u -> h_*(u).
inline EtaWitness eta(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  EtaWitness w;
  w.over_s = hom(m, n);
  w.over_r = hom(restrict(h, m), restrict(h, n));
  w.map = morphism_from_generators(
      restrict(h, w.over_s.module), w.over_r.module,
      [&](const Degree& g, std::size_t c) {
        const Vec u = w.over_s.module->basis(g, c);
        return hom_element(
            w.over_r, g, [&](const Degree& d, std::size_t i) { return w.over_s.evaluate(g, u, d, m->basis(d, i)); },
            "eta");
      },
      "eta");
  return w;
}

struct ThetaWitness {
  HomWitness hmn;
  TensorWitness lhs, em, en;
  HomWitness rhs;
  GradedMorphism map;
};

/// theta: h^*(Hom_R(M, N)) -> Hom_S(h^*(M), h^*(N)), s (x) u -> (r (x) x -> rs (x) u(x)).
inline ThetaWitness theta(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  const auto& S = *h.target;
  const auto& G = S.group();
  ThetaWitness w;
  w.hmn = hom(m, n);
  w.lhs = extend(h, w.hmn.module);
  w.em = extend(h, m);
  w.en = extend(h, n);
  w.rhs = hom(w.em.module, w.en.module);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& a, std::size_t b, const Degree& g, std::size_t c) {
        const Vec s = S.basis(a, b);
        const Vec u = w.hmn.module->basis(g, c);
        const Degree ag = G.add(a, g);
        return hom_element(
            w.rhs, ag,
            [&](const Degree& d, std::size_t i) {
              const ZnModule& out = w.en.module->component(G.add(d, ag));
              Vec acc = out.zero_element();
              for (const auto& t : w.em.expand(d, w.em.module->basis(d, i))) {
                const Vec rs = S.multiply(t.g, S.basis(t.g, t.i), a, s);
                const Vec ux = w.hmn.evaluate(g, u, t.h, m->basis(t.h, t.j));
                acc = detail::accumulate(out, acc, t.coef, w.en.locate(G.add(t.g, a), rs, G.add(t.h, g), ux));
              }
              return acc;
            },
            "theta");
      },
      "theta");
  return w;
}

struct PiWitness {
  HomWitness hlm;
  TensorWitness lhs, mn;
  HomWitness rhs;
  GradedMorphism map;
};

/// pi: Hom_R(L, M) (x)_S N -> Hom_S(L, M (x)_R N), u (x) x -> (y -> u(y) (x) x),
/// for S-modules L, N and an R-module M.
inline PiWitness pi(const GradedRingHom& h, const ModulePtr& l, const ModulePtr& m, const ModulePtr& n) {
  const auto& G = h.source->group();
  const auto idr = identity_ring_hom(h.source);
  PiWitness w;
  w.hlm = hom(h, l, idr, m, Side::Left);
  w.lhs = tensor(w.hlm.module, n);
  w.mn = tensor(idr, m, h, n, Side::Right);
  w.rhs = hom(l, w.mn.module);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const Vec u = w.hlm.module->basis(g, i);
        const Vec x = n->basis(k, j);
        return hom_element(
            w.rhs, G.add(g, k),
            [&](const Degree& d, std::size_t c) {
              return w.mn.locate(G.add(d, g), w.hlm.evaluate(g, u, d, l->basis(d, c)), k, x);
            },
            "pi");
      },
      "pi");
  return w;
}

using NuWitness = PiWitness;

/// nu: Hom_R(L, M) (x)_R N -> Hom_R(L, M (x)_R N) for an S-module L and
/// R-modules M, N; S acts through L.
inline NuWitness nu(const GradedRingHom& h, const ModulePtr& l, const ModulePtr& m, const ModulePtr& n) {
  const auto& G = h.source->group();
  const auto idr = identity_ring_hom(h.source);
  NuWitness w;
  w.hlm = hom(h, l, idr, m, Side::Left);
  w.lhs = tensor(h, w.hlm.module, idr, n, Side::Left);
  w.mn = tensor(m, n);
  w.rhs = hom(h, l, idr, w.mn.module, Side::Left);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const Vec u = w.hlm.module->basis(g, i);
        const Vec x = n->basis(k, j);
        return hom_element(
            w.rhs, G.add(g, k),
            [&](const Degree& d, std::size_t c) {
              return w.mn.locate(G.add(d, g), w.hlm.evaluate(g, u, d, l->basis(d, c)), k, x);
            },
            "nu");
      },
      "nu");
  return w;
}

struct MuWitness {
  TensorWitness lhs;
  HomWitness dual, rhs;
  GradedMorphism map;
};

/// mu: M (x)_R N -> Hom_R(Hom_R(M, R), N), x (x) y -> (u -> u(x) y), for an
/// S-module M and an R-module N.
inline MuWitness mu(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n) {
  const auto& G = h.source->group();
  const auto idr = identity_ring_hom(h.source);
  MuWitness w;
  w.lhs = tensor(h, m, idr, n, Side::Left);
  w.dual = hom(h, m, idr, regular_module(h.source), Side::Left);
  w.rhs = hom(h, w.dual.module, idr, n, Side::Left);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const Vec x = m->basis(g, i);
        const Vec y = n->basis(k, j);
        return hom_element(
            w.rhs, G.add(g, k),
            [&](const Degree& d, std::size_t c) {
              const Vec ux = w.dual.evaluate(d, w.dual.module->basis(d, c), g, x);
              return n->act(G.add(g, d), ux, k, y);
            },
            "mu");
      },
      "mu");
  return w;
}

struct Tau3Witness {
  TensorWitness lhs;
  HomWitness hmn, hlm, rhs;
  GradedMorphism map;
};

/// tau: L (x) Hom(M, N) -> Hom(Hom(L, M), N), x (x) u -> (v -> u(v(x))).
inline Tau3Witness tau3(const ModulePtr& l, const ModulePtr& m, const ModulePtr& n) {
  const auto& G = l->group();
  Tau3Witness w;
  w.hmn = hom(m, n);
  w.lhs = tensor(l, w.hmn.module);
  w.hlm = hom(l, m);
  w.rhs = hom(w.hlm.module, n);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const Vec x = l->basis(g, i);
        const Vec u = w.hmn.module->basis(k, j);
        return hom_element(
            w.rhs, G.add(g, k),
            [&](const Degree& d, std::size_t c) {
              const Vec vx = w.hlm.evaluate(d, w.hlm.module->basis(d, c), g, x);
              return w.hmn.evaluate(k, u, G.add(g, d), vx);
            },
            "tau3");
      },
      "tau3");
  return w;
}

struct TauWitness {
  HomWitness dual, bidual;
  GradedMorphism map;
};

/// tau_L: L -> Hom(Hom(L, R), R), x -> (u -> u(x)).
inline TauWitness tau(const ModulePtr& l) {
  TauWitness w;
  w.dual = hom(l, regular_module(l->ring));
  w.bidual = hom(w.dual.module, regular_module(l->ring));
  w.map = morphism_from_generators(
      l, w.bidual.module,
      [&](const Degree& g, std::size_t i) {
        const Vec x = l->basis(g, i);
        return hom_element(
            w.bidual, g,
            [&](const Degree& d, std::size_t c) { return w.dual.evaluate(d, w.dual.module->basis(d, c), g, x); },
            "tau");
      },
      "tau");
  return w;
}

struct KappaWitness {
  GradedDirectSum product, target;
  TensorWitness lhs;
  std::vector<TensorWitness> parts;
  GradedMorphism map;
};

/// kappa: (prod N_j) (x) M -> prod (N_j (x) M) for a finite family.
inline KappaWitness kappa(const ModulePtr& m, const std::vector<ModulePtr>& family) {
  const auto& G = m->group();
  KappaWitness w;
  w.product = direct_sum(m->ring, family);
  w.lhs = tensor(w.product.module, m);
  std::vector<ModulePtr> tensors;
  for (const auto& nj : family) {
    w.parts.push_back(tensor(nj, m));
    tensors.push_back(w.parts.back().module);
  }
  w.target = direct_sum(m->ring, tensors);
  w.map = morphism_from_tensor(
      w.lhs, w.lhs.module, w.target.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        const ZnModule& out = w.target.module->component(G.add(g, k));
        Vec acc = out.zero_element();
        const Vec x = w.product.module->basis(g, i);
        for (std::size_t p = 0; p < family.size(); ++p) {
          const Vec v = w.parts[p].locate(g, w.product.projections[p].apply(g, x), k, m->basis(k, j));
          acc = out.add(acc, w.target.injections[p].apply(G.add(g, k), v));
        }
        return acc;
      },
      "kappa");
  return w;
}

struct LambdaWitness {
  std::vector<HomWitness> parts;
  GradedDirectSum source, sum;
  HomWitness rhs;
  GradedMorphism map;
};

/// Lambda: sum_j Hom(M, N_j) -> Hom(M, sum_j N_j), (u_j) -> (x -> (u_j(x))).
inline LambdaWitness lambda_big(const ModulePtr& m, const std::vector<ModulePtr>& family) {
  const auto& G = m->group();
  LambdaWitness w;
  std::vector<ModulePtr> homs;
  for (const auto& nj : family) {
    w.parts.push_back(hom(m, nj));
    homs.push_back(w.parts.back().module);
  }
  w.source = direct_sum(m->ring, homs);
  w.sum = direct_sum(m->ring, family);
  w.rhs = hom(m, w.sum.module);
  w.map = morphism_from_generators(
      w.source.module, w.rhs.module,
      [&](const Degree& g, std::size_t c) {
        const Vec u = w.source.module->basis(g, c);
        return hom_element(
            w.rhs, g,
            [&](const Degree& d, std::size_t i) {
              const Degree dg = G.add(d, g);
              const ZnModule& out = w.sum.module->component(dg);
              Vec acc = out.zero_element();
              for (std::size_t p = 0; p < family.size(); ++p) {
                const Vec up = w.source.projections[p].apply(g, u);
                acc = out.add(acc, w.sum.injections[p].apply(dg, w.parts[p].evaluate(g, up, d, m->basis(d, i))));
              }
              return acc;
            },
            "lambda");
      },
      "lambda");
  return w;
}

struct AlphaWitness {
  TensorWitness lm;
  HomWitness lhs, inner, rhs;
  GradedMorphism forward, inverse;
};

/// alpha: Hom_R(L (x)_S M, N) -> Hom_S(L, Hom_R(M, N)) and its inverse, for
/// S-modules L, M and an R-module N.
inline AlphaWitness alpha(const GradedRingHom& h, const ModulePtr& l, const ModulePtr& m, const ModulePtr& n) {
  const auto& G = h.source->group();
  const auto idr = identity_ring_hom(h.source);
  AlphaWitness w;
  w.lm = tensor(l, m);
  w.lhs = hom(h, w.lm.module, idr, n, Side::Left);
  w.inner = hom(h, m, idr, n, Side::Left);
  w.rhs = hom(l, w.inner.module);
  w.forward = morphism_from_generators(
      w.lhs.module, w.rhs.module,
      [&](const Degree& g, std::size_t c) {
        const Vec f = w.lhs.module->basis(g, c);
        return hom_element(
            w.rhs, g,
            [&](const Degree& d, std::size_t i) {
              const Vec x = l->basis(d, i);
              return hom_element(
                  w.inner, G.add(d, g),
                  [&](const Degree& e, std::size_t j) {
                    return w.lhs.evaluate(g, f, G.add(d, e), w.lm.locate(d, x, e, m->basis(e, j)));
                  },
                  "alpha");
            },
            "alpha");
      },
      "alpha");
  w.inverse = morphism_from_generators(
      w.rhs.module, w.lhs.module,
      [&](const Degree& g, std::size_t c) {
        const Vec big = w.rhs.module->basis(g, c);
        return hom_element(
            w.lhs, g,
            [&](const Degree& k, std::size_t q) {
              const ZnModule& out = n->component(G.add(k, g));
              Vec acc = out.zero_element();
              for (const auto& t : w.lm.expand(k, w.lm.module->basis(k, q))) {
                const Vec fx = w.rhs.evaluate(g, big, t.g, l->basis(t.g, t.i));
                acc = detail::accumulate(out, acc, t.coef,
                                         w.inner.evaluate(G.add(t.g, g), fx, t.h, m->basis(t.h, t.j)));
              }
              return acc;
            },
            "alpha_inverse");
      },
      "alpha_inverse");
  return w;
}

/// x (x) y -> y (x) x between two tensor products of the same pair.
inline GradedMorphism tensor_swap(const TensorWitness& from, const TensorWitness& to) {
  return morphism_from_tensor(
      from, from.module, to.module,
      [&](const Degree& g, std::size_t i, const Degree& k, std::size_t j) {
        return to.locate(k, from.right->basis(k, j), g, from.left->basis(g, i));
      },
      "tensor_swap");
}

/// nu_{S,N,M} o pi_{S,M,h~(N)} with the symmetries and the evaluation at 1
/// inserted; equals epsilon_{M,N} whenever pi is defined.
inline GradedMorphism epsilon_via_pi_nu(const GradedRingHom& h, const ModulePtr& m, const ModulePtr& n,
                                        const EpsilonWitness& e) {
  const auto s = regular_module(h.target);
  const auto p = pi(h, s, m, e.cn.module);
  const auto v = nu(h, s, n, m);
  const auto nm_to_mn = tensor_swap(v.mn, e.mn);
  return compose(compose(compose(compose(p.map, hom_unit(p.rhs)), tensor_swap(p.mn, v.lhs)), v.map),
                 hom_map(v.rhs, e.rhs, identity_morphism(s), nm_to_mn));
}

// ---------------------------------------------------------------------------
// coarsening comparisons

/// Coarsenings of R, S and h along one psi.
struct CoarseContext {
  GradedRingHom h;
  GroupEpi psi;
  CoarseRing r, s;
  GradedRingHom hc;

  CoarseContext(const GradedRingHom& hh, const GroupEpi& p)
      : h(hh), psi(p), r(coarsen_ring(hh.source, p)), s(coarsen_ring(hh.target, p)), hc(coarsen_ring_hom(hh, r, s)) {}

  const CoarseRing& ring(const RingPtr& x) const {
    if (same_ring(x, h.target)) return s;
    if (same_ring(x, h.source)) return r;
    throw RingMismatch("coarsen: module over an unrelated ring");
  }

  CoarseModule module(const ModulePtr& m) const { return coarsen_module(m, ring(m->ring)); }

  GradedMorphism morphism(const GradedMorphism& u) const {
    return coarsen_morphism(u, module(u.source), module(u.target));
  }

  /// Coarsening of one of id_R, id_S, h.
  GradedRingHom ring_hom(const GradedRingHom& k) const {
    if (same_ring(k.source, h.source) && same_ring(k.target, h.target) && k == h) return hc;
    if (!same_ring(k.source, k.target)) throw RingMismatch("coarsen: unexpected ring morphism");
    return identity_ring_hom(ring(k.source).ring);
  }
};

struct TensorCoarsening {
  CoarseModule source;
  TensorWitness coarse;
  GradedMorphism map;
};

/// (A (x) B)_[psi] -> A_[psi] (x) B_[psi].
inline TensorCoarsening coarsen_tensor(const CoarseContext& cx, const TensorWitness& t) {
  TensorCoarsening out;
  out.source = cx.module(t.module);
  const CoarseModule cl = cx.module(t.left);
  const CoarseModule cr = cx.module(t.right);
  out.coarse = tensor(cx.ring_hom(t.left_hom), cl.module, cx.ring_hom(t.right_hom), cr.module, t.side);
  out.map = morphism_from_generators(
      out.source.module, out.coarse.module,
      [&](const Degree& d, std::size_t c) {
        const ZnModule& y = out.coarse.module->component(d);
        Vec acc = y.zero_element();
        const Vec e = out.source.module->basis(d, c);
        for (const auto& k : fiber(out.source.witness, d))
          for (const auto& term : t.expand(k, coarse_project(out.source.witness, *t.module, k, e))) {
            const Vec x = coarse_embed(cl.witness, *cl.module, term.g, t.left->basis(term.g, term.i));
            const Vec z = coarse_embed(cr.witness, *cr.module, term.h, t.right->basis(term.h, term.j));
            acc = detail::accumulate(y, acc, term.coef,
                                     out.coarse.locate(cx.psi.apply(term.g), x, cx.psi.apply(term.h), z));
          }
        return acc;
      },
      "tensor_coarsening");
  return out;
}

struct HomCoarsening {
  CoarseModule source;
  HomWitness coarse;
  GradedMorphism map;
};

/// beta: Hom(A, B)_[psi] -> Hom(A_[psi], B_[psi]).
inline HomCoarsening coarsen_hom(const CoarseContext& cx, const HomWitness& w) {
  const auto& G = w.module->group();
  HomCoarsening out;
  out.source = cx.module(w.module);
  const CoarseModule cs = cx.module(w.source);
  const CoarseModule ct = cx.module(w.target);
  out.coarse = hom(cx.ring_hom(w.source_hom), cs.module, cx.ring_hom(w.target_hom), ct.module, w.side);
  out.map = morphism_from_generators(
      out.source.module, out.coarse.module,
      [&](const Degree& d, std::size_t c) {
        const Vec e = out.source.module->basis(d, c);
        return hom_element(
            out.coarse, d,
            [&](const Degree& ee, std::size_t i) {
              const Degree de = cx.psi.target().add(ee, d);
              const ZnModule& y = ct.module->component(de);
              Vec acc = y.zero_element();
              const Vec x = cs.module->basis(ee, i);
              for (const auto& k : fiber(out.source.witness, d)) {
                const Vec u = coarse_project(out.source.witness, *w.module, k, e);
                for (const auto& mdeg : fiber(cs.witness, ee)) {
                  const Vec xm = coarse_project(cs.witness, *w.source, mdeg, x);
                  const Degree mk = G.add(mdeg, k);
                  acc = y.add(acc, coarse_embed(ct.witness, *ct.module, mk, w.evaluate(k, u, mdeg, xm)));
                }
              }
              return acc;
            },
            "beta");
      },
      "beta");
  return out;
}

struct Square {
  std::string name;
  bool commutes = false;
};

namespace detail {

inline Square square(std::string name, const GradedMorphism& top, const GradedMorphism& bottom) {
  return {std::move(name), top == bottom};
}

}  // namespace detail

/// rho and sigma (unit and counit of h^* -| h_*) against coarsening.
inline std::vector<Square> coarsening_squares_extension(const CoarseContext& cx, const ModulePtr& m,
                                                        const ModulePtr& n) {
  const auto& h = cx.h;
  std::vector<Square> out;
  {
    const auto e = extend(h, m);
    const auto ce = coarsen_tensor(cx, e);
    const auto cm = cx.module(m);
    out.push_back(detail::square("rho", compose(cx.morphism(unit_rho(h, m, e)), restrict(cx.hc, ce.map)),
                                 unit_rho(cx.hc, cm.module, ce.coarse)));
  }
  {
    const auto e = extend(h, restrict(h, n));
    const auto ce = coarsen_tensor(cx, e);
    const auto cn = cx.module(n);
    out.push_back(detail::square("sigma", cx.morphism(counit_sigma(h, n, e)),
                                 compose(ce.map, counit_sigma(cx.hc, cn.module, ce.coarse))));
  }
  return out;
}

/// rho~ and sigma~ (unit and counit of h_* -| h~) against coarsening.
inline std::vector<Square> coarsening_squares_coextension(const CoarseContext& cx, const ModulePtr& m,
                                                          const ModulePtr& n) {
  const auto& h = cx.h;
  std::vector<Square> out;
  {
    const auto c = coextend(h, restrict(h, n));
    const auto cc = coarsen_hom(cx, c);
    const auto cn = cx.module(n);
    out.push_back(detail::square("rho_tilde", compose(cx.morphism(unit_rho_tilde(h, n, c)), cc.map),
                                 unit_rho_tilde(cx.hc, cn.module, cc.coarse)));
  }
  {
    const auto c = coextend(h, m);
    const auto cc = coarsen_hom(cx, c);
    const auto cm = cx.module(m);
    out.push_back(detail::square("sigma_tilde", cx.morphism(counit_sigma_tilde(h, m, c)),
                                 compose(restrict(cx.hc, cc.map), counit_sigma_tilde(cx.hc, cm.module, cc.coarse))));
  }
  return out;
}

/// delta for R-modules M, N.
inline Square coarsening_square_delta(const CoarseContext& cx, const ModulePtr& m, const ModulePtr& n) {
  const auto d = delta(cx.h, m, n);
  const auto dc = delta(cx.hc, cx.module(m).module, cx.module(n).module);
  const auto rhs = coarsen_tensor(cx, d.rhs);
  const auto mn = coarsen_tensor(cx, d.mn);
  const auto lhs = coarsen_tensor(cx, d.lhs);
  const auto em = coarsen_tensor(cx, d.em);
  const auto en = coarsen_tensor(cx, d.en);
  const auto top = compose(compose(cx.morphism(d.forward), rhs.map), extend_map(rhs.coarse, dc.rhs, mn.map));
  const auto bottom = compose(compose(lhs.map, tensor_map(lhs.coarse, dc.lhs, em.map, en.map)), dc.forward);
  return detail::square("delta", top, bottom);
}

/// gamma for S-modules M, N.
inline Square coarsening_square_gamma(const CoarseContext& cx, const ModulePtr& m, const ModulePtr& n) {
  const auto g = gamma(cx.h, m, n);
  const auto gc = gamma(cx.hc, cx.module(m).module, cx.module(n).module);
  const auto top = compose(cx.morphism(g.map), restrict(cx.hc, coarsen_tensor(cx, g.rhs).map));
  const auto bottom = compose(coarsen_tensor(cx, g.lhs).map, gc.map);
  return detail::square("gamma", top, bottom);
}

/// epsilon for R-modules M, N; requires epsilon to be defined.
inline Square coarsening_square_epsilon(const CoarseContext& cx, const ModulePtr& m, const ModulePtr& n) {
  const auto e = epsilon(cx.h, m, n);
  const auto ec = epsilon(cx.hc, cx.module(m).module, cx.module(n).module);
  const auto rhs = coarsen_hom(cx, e.rhs);
  const auto mn = coarsen_tensor(cx, e.mn);
  const auto lhs = coarsen_tensor(cx, e.lhs);
  const auto top = compose(compose(cx.morphism(e.map), rhs.map),
                           hom_map(rhs.coarse, ec.rhs, identity_morphism(ec.rhs.source), mn.map));
  const auto bottom = compose(
      compose(lhs.map, tensor_map(lhs.coarse, ec.lhs, coarsen_hom(cx, e.cm).map, coarsen_hom(cx, e.cn).map)), ec.map);
  return detail::square("epsilon", top, bottom);
}

/// eta for S-modules M, N.
inline Square coarsening_square_eta(const CoarseContext& cx, const ModulePtr& m, const ModulePtr& n) {
  const auto e = eta(cx.h, m, n);
  const auto ec = eta(cx.hc, cx.module(m).module, cx.module(n).module);
  const auto top = compose(cx.morphism(e.map), coarsen_hom(cx, e.over_r).map);
  const auto bottom = compose(restrict(cx.hc, coarsen_hom(cx, e.over_s).map), ec.map);
  return detail::square("eta", top, bottom);
}

/// theta for R-modules M, N.
inline Square coarsening_square_theta(const CoarseContext& cx, const ModulePtr& m, const ModulePtr& n) {
  const auto t = theta(cx.h, m, n);
  const auto tc = theta(cx.hc, cx.module(m).module, cx.module(n).module);
  const auto rhs = coarsen_hom(cx, t.rhs);
  const auto lhs = coarsen_tensor(cx, t.lhs);
  const auto top =
      compose(compose(cx.morphism(t.map), rhs.map),
              hom_map(rhs.coarse, tc.rhs, inverse(coarsen_tensor(cx, t.em).map), coarsen_tensor(cx, t.en).map));
  const auto bottom =
      compose(compose(lhs.map, extend_map(lhs.coarse, tc.lhs, coarsen_hom(cx, t.hmn).map)), tc.map);
  return detail::square("theta", top, bottom);
}

namespace detail {

inline Square pi_like_square(const CoarseContext& cx, const std::string& name, const PiWitness& w,
                             const PiWitness& wc) {
  const auto rhs = coarsen_hom(cx, w.rhs);
  const auto lhs = coarsen_tensor(cx, w.lhs);
  const auto top = compose(compose(cx.morphism(w.map), rhs.map),
                           hom_map(rhs.coarse, wc.rhs, identity_morphism(wc.rhs.source), coarsen_tensor(cx, w.mn).map));
  const auto bottom = compose(
      compose(lhs.map, tensor_map(lhs.coarse, wc.lhs, coarsen_hom(cx, w.hlm).map, identity_morphism(wc.lhs.right))),
      wc.map);
  return square(name, top, bottom);
}

}  // namespace detail

/// pi for L, N over S and M over R; requires pi to be defined.
inline Square coarsening_square_pi(const CoarseContext& cx, const ModulePtr& l, const ModulePtr& m,
                                   const ModulePtr& n) {
  const auto c = [&](const ModulePtr& x) { return cx.module(x).module; };
  return detail::pi_like_square(cx, "pi", pi(cx.h, l, m, n), pi(cx.hc, c(l), c(m), c(n)));
}

/// nu and mu; L over S and M, N over R for nu, M over S and N over R for mu.
inline std::vector<Square> coarsening_squares_nu_mu(const CoarseContext& cx, const ModulePtr& ls,
                                                    const ModulePtr& mr, const ModulePtr& nr) {
  const auto& h = cx.h;
  const auto c = [&](const ModulePtr& x) { return cx.module(x).module; };
  std::vector<Square> out;
  out.push_back(detail::pi_like_square(cx, "nu", nu(h, ls, mr, nr), nu(cx.hc, c(ls), c(mr), c(nr))));
  const auto w = mu(h, ls, nr);
  const auto wc = mu(cx.hc, c(ls), c(nr));
  const auto rhs = coarsen_hom(cx, w.rhs);
  const auto top = compose(compose(cx.morphism(w.map), rhs.map),
                           hom_map(rhs.coarse, wc.rhs, inverse(coarsen_hom(cx, w.dual).map), identity_morphism(c(nr))));
  const auto bottom = compose(coarsen_tensor(cx, w.lhs).map, wc.map);
  out.push_back(detail::square("mu", top, bottom));
  return out;
}

}  // namespace grc
