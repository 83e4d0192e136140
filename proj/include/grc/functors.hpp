#pragma once

// Change-of-ring functors and the graded tensor / Hom bifunctors.
//
// For h: R -> S, restrict is h_*, extend is h^* = S (x)_R -, coextend is
// h~ = Hom_R(S, -). Tensor and Hom are computed in the mixed form: each
// factor may live over its own ring, both mapped from a common base R, and
// the result carries the action of the factor on the chosen side.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "grc/graded.hpp"

namespace grc {

enum class Side { Left, Right };

inline bool is_identity(const GradedRingHom& h) {
  if (!same_ring(h.source, h.target)) return false;
  for (const auto& [g, b] : h.blocks)
    if (!(b == ZnMatrix::identity(b.modulus(), b.rows()))) return false;
  return true;
}

/// h_*(M): the same components with R acting through h.
inline ModulePtr restrict(const GradedRingHom& h, const ModulePtr& m) {
  require_same_ring(h.target, m->ring, "restrict");
  if (is_identity(h)) return m;
  const auto& R = *h.source;
  const auto& G = R.group();
  GradedModule out(h.source);
  for (const auto& [d, c] : m->components()) out.set_component(d, c);
  for (const auto& a : R.support())
    for (const auto& g : m->support()) {
      const Degree k = G.add(a, g);
      if (!m->in_support(k)) continue;
      const ZnModule& A = R.component(a);
      const ZnModule& X = m->component(g);
      Table t(A.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b) {
        const Vec s = h.apply(a, A.basis(b));
        for (std::size_t c = 0; c < X.rank(); ++c) {
          t[b][c] = m->act(a, s, g, X.basis(c));
          nonzero = nonzero || !m->component(k).is_zero_element(t[b][c]);
        }
      }
      if (nonzero) out.action[{a, g}] = std::move(t);
    }
  return std::make_shared<const GradedModule>(std::move(out));
}

/// h_*(u) between already restricted modules.
inline GradedMorphism restrict(const GradedMorphism& u, const ModulePtr& s, const ModulePtr& t) {
  return GradedMorphism{s, t, u.blocks};
}

inline GradedMorphism restrict(const GradedRingHom& h, const GradedMorphism& u) {
  return restrict(u, restrict(h, u.source), restrict(h, u.target));
}

// ---------------------------------------------------------------------------
// tensor

struct TensorTerm {
  std::int64_t coef;
  Degree g;
  std::size_t i;
  Degree h;
  std::size_t j;
};

class TensorWitness {
 public:
  struct DegreeData {
    std::map<DegreePair, std::size_t> offset;
    std::vector<std::tuple<Degree, std::size_t, Degree, std::size_t>> raw;
    std::vector<Vec> relations;
    Presentation pres;
  };

  GradedRingHom left_hom, right_hom;
  ModulePtr left, right;
  ModulePtr module;
  Side side = Side::Left;
  std::map<Degree, DegreeData> degrees;

  /// Image of x (x) y, x in left_g, y in right_h.
  Vec locate(const Degree& g, const Vec& x, const Degree& h, const Vec& y) const {
    const Degree k = module->group().add(g, h);
    const ZnModule& out = module->component(k);
    auto it = degrees.find(k);
    if (it == degrees.end() || out.rank() == 0) return out.zero_element();
    auto off = it->second.offset.find({g, h});
    if (off == it->second.offset.end()) return out.zero_element();
    const std::size_t w = right->component(h).rank();
    const std::int64_t n = out.modulus();
    Vec acc(out.rank(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        const std::int64_t c = mulmod(x[i], y[j], n);
        if (c == 0) continue;
        const Vec& row = it->second.pres.to_canon.row(off->second + i * w + j);
        for (std::size_t k2 = 0; k2 < acc.size(); ++k2) acc[k2] += mulmod(c, row[k2], n);
      }
    }
    return out.reduce(acc);
  }

  /// A sum of pure tensors of generators representing elem in degree k.
  std::vector<TensorTerm> expand(const Degree& k, const Vec& elem) const {
    std::vector<TensorTerm> out;
    auto it = degrees.find(k);
    if (it == degrees.end()) return out;
    const auto& dd = it->second;
    const std::int64_t n = module->modulus();
    Vec raw(dd.raw.size(), 0);
    for (std::size_t c = 0; c < elem.size(); ++c)
      if (elem[c] != 0)
        for (std::size_t r = 0; r < raw.size(); ++r) raw[r] = addmod(raw[r], mulmod(elem[c], dd.pres.from_canon.at(c, r), n), n);
    for (std::size_t r = 0; r < raw.size(); ++r)
      if (raw[r] != 0) {
        const auto& [g, i, h, j] = dd.raw[r];
        out.push_back({raw[r], g, i, h, j});
      }
    return out;
  }
};

namespace detail {

inline std::vector<Degree> sumset(const FgAbelianGroup& G, const std::vector<Degree>& a, const std::vector<Degree>& b) {
  std::set<Degree> s;
  for (const auto& x : a)
    for (const auto& y : b) s.insert(G.add(x, y));
  return {s.begin(), s.end()};
}

}  // namespace detail

/// left (x)_R right, where left lives over A via hl: R -> A and right over B
/// via hr: R -> B. The result carries the A-action (Side::Left) or the
/// B-action (Side::Right).
inline TensorWitness tensor(const GradedRingHom& hl, const ModulePtr& left, const GradedRingHom& hr,
                            const ModulePtr& right, Side side) {
  require_same_ring(hl.source, hr.source, "tensor");
  require_same_ring(hl.target, left->ring, "tensor");
  require_same_ring(hr.target, right->ring, "tensor");
  const RingPtr& base = hl.source;
  const auto& R = *base;
  const auto& G = R.group();
  const std::int64_t n = R.modulus();
  const ModulePtr ml = restrict(hl, left);
  const ModulePtr mr = restrict(hr, right);

  TensorWitness w;
  w.left_hom = hl;
  w.right_hom = hr;
  w.left = left;
  w.right = right;
  w.side = side;
  const RingPtr acting = side == Side::Left ? left->ring : right->ring;
  GradedModule out(acting);

  const auto lsupp = left->support();
  const auto rsupp = right->support();
  for (const auto& k : detail::sumset(G, lsupp, rsupp)) {
    auto& dd = w.degrees[k];
    for (const auto& g : lsupp) {
      const Degree h = G.sub(k, g);
      if (!right->in_support(h)) continue;
      dd.offset[{g, h}] = dd.raw.size();
      for (std::size_t i = 0; i < left->component(g).rank(); ++i)
        for (std::size_t j = 0; j < right->component(h).rank(); ++j) dd.raw.emplace_back(g, i, h, j);
    }
    const std::size_t raw = dd.raw.size();
    auto index = [&](const Degree& g, std::size_t i, const Degree& h, std::size_t j) {
      return dd.offset.at({g, h}) + i * right->component(h).rank() + j;
    };
    for (std::size_t r = 0; r < raw; ++r) {
      const auto& [g, i, h, j] = dd.raw[r];
      const std::int64_t o = std::gcd(left->component(g).order(i), right->component(h).order(j));
      if (o == n) continue;
      Vec rel(raw, 0);
      rel[r] = o;
      dd.relations.push_back(std::move(rel));
    }
    // balance: (r x) (x) y - x (x) (r y)
    for (const auto& a : R.support())
      for (const auto& g : lsupp) {
        const Degree ag = G.add(a, g);
        const Degree h = G.sub(k, ag);
        if (!right->in_support(h)) continue;
        const Degree ah = G.add(a, h);
        const bool left_lands = right->in_support(h) && left->in_support(ag);
        const bool right_lands = right->in_support(ah);
        if (!left_lands && !right_lands) continue;
        const ZnModule& A = R.component(a);
        for (std::size_t b = 0; b < A.rank(); ++b)
          for (std::size_t i = 0; i < left->component(g).rank(); ++i)
            for (std::size_t j = 0; j < right->component(h).rank(); ++j) {
              Vec rel(raw, 0);
              bool any = false;
              if (left_lands) {
                const Vec rx = ml->act(a, A.basis(b), g, left->basis(g, i));
                for (std::size_t l = 0; l < rx.size(); ++l)
                  if (rx[l]) {
                    auto& v = rel[index(ag, l, h, j)];
                    v = addmod(v, rx[l], n);
                    any = true;
                  }
              }
              if (right_lands && left->in_support(g)) {
                const Vec ry = mr->act(a, A.basis(b), h, right->basis(h, j));
                for (std::size_t l = 0; l < ry.size(); ++l)
                  if (ry[l]) {
                    auto& v = rel[index(g, i, ah, l)];
                    v = addmod(v, n - ry[l], n);
                    any = true;
                  }
              }
              if (any) dd.relations.push_back(std::move(rel));
            }
      }
    dd.pres = present(n, raw, dd.relations);
    out.set_component(k, ZnModule(n, dd.pres.orders));
  }
  // drop bookkeeping for degrees whose component vanished only in locate/expand
  w.module = std::make_shared<const GradedModule>(out);

  // action of the acting ring through the chosen factor
  const auto& A = *acting;
  for (const auto& a : A.support())
    for (const auto& k : out.support()) {
      const Degree ak = G.add(a, k);
      if (!out.in_support(ak)) continue;
      const ZnModule& Ra = A.component(a);
      const ZnModule& X = out.component(k);
      Table t(Ra.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < Ra.rank(); ++b)
        for (std::size_t c = 0; c < X.rank(); ++c) {
          Vec acc = out.component(ak).zero_element();
          for (const auto& term : w.expand(k, X.basis(c))) {
            Vec v;
            if (side == Side::Left) {
              v = w.locate(G.add(a, term.g), left->act(a, Ra.basis(b), term.g, left->basis(term.g, term.i)), term.h,
                           right->basis(term.h, term.j));
            } else {
              v = w.locate(term.g, left->basis(term.g, term.i), G.add(a, term.h),
                           right->act(a, Ra.basis(b), term.h, right->basis(term.h, term.j)));
            }
            acc = out.component(ak).add(acc, out.component(ak).scale(term.coef, v));
          }
          nonzero = nonzero || !out.component(ak).is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) out.action[{a, k}] = std::move(t);
    }
  w.module = make_module(std::move(out));
  return w;
}

/// M (x)_R N for modules over the same ring; the action is through M.
inline TensorWitness tensor(const ModulePtr& m, const ModulePtr& n) {
  require_same_ring(m->ring, n->ring, "tensor");
  auto id = identity_ring_hom(m->ring);
  return tensor(id, m, id, n, Side::Left);
}

// ---------------------------------------------------------------------------
// Hom

class HomWitness {
 public:
  struct DegreeData {
    std::map<Degree, std::size_t> offset;  // source degree -> first ambient coordinate
    ZnModule ambient;
    ZnMap inclusion;
    PreimageSolver locator;
  };

  GradedRingHom source_hom, target_hom;
  ModulePtr source, target;
  ModulePtr module;
  Side side = Side::Left;
  std::map<Degree, DegreeData> degrees;

  /// u(x) for u in Hom_g and x in source_h; lands in target_{h+g}.
  Vec evaluate(const Degree& g, const Vec& u, const Degree& h, const Vec& x) const {
    const Degree hg = module->group().add(h, g);
    const ZnModule& out = target->component(hg);
    auto it = degrees.find(g);
    if (it == degrees.end() || u.empty()) return out.zero_element();
    auto off = it->second.offset.find(h);
    if (off == it->second.offset.end()) return out.zero_element();
    const Vec amb = it->second.inclusion.apply(u);
    const std::int64_t n = out.modulus();
    Vec acc(out.rank(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      const std::size_t base = off->second + i * out.rank();
      for (std::size_t j = 0; j < out.rank(); ++j) acc[j] += mulmod(x[i], amb[base + j], n);
    }
    return out.reduce(acc);
  }

  /// The element of Hom_g sending each source generator (h, i) to image(h, i),
  /// or nullopt if that assignment is not a morphism.
  std::optional<Vec> locate(const Degree& g, const std::function<Vec(const Degree&, std::size_t)>& image) const {
    const ZnModule& out = module->component(g);
    auto it = degrees.find(g);
    if (it == degrees.end() || out.rank() == 0) {
      for (const auto& h : source->support())
        for (std::size_t i = 0; i < source->component(h).rank(); ++i) {
          const Vec v = image(h, i);
          if (!target->component(module->group().add(h, g)).is_zero_element(v)) return std::nullopt;
        }
      return out.zero_element();
    }
    const auto& dd = it->second;
    Vec amb(dd.ambient.rank(), 0);
    for (const auto& [h, off] : dd.offset) {
      const std::size_t w = target->component(module->group().add(h, g)).rank();
      for (std::size_t i = 0; i < source->component(h).rank(); ++i) {
        const Vec v = image(h, i);
        for (std::size_t j = 0; j < w; ++j) amb[off + i * w + j] = v[j];
      }
    }
    return dd.locator.solve(dd.ambient.reduce(amb));
  }

  /// Hom element of degree g as a morphism source -> target(g).
  GradedMorphism as_morphism(const Degree& g, const Vec& u, const ModulePtr& shifted_target) const {
    GradedMorphism f{source, shifted_target, {}};
    const auto& G = module->group();
    for (const auto& h : source->support()) {
      const ZnModule& X = source->component(h);
      const ZnModule& Y = shifted_target->component(h);
      ZnMatrix b(X.modulus(), X.rank(), Y.rank());
      for (std::size_t i = 0; i < X.rank(); ++i) {
        const Vec v = evaluate(g, u, h, X.basis(i));
        for (std::size_t j = 0; j < v.size(); ++j) b.set(i, j, v[j]);
      }
      (void)G;
      f.blocks[h] = b;
    }
    return f;
  }
};

namespace detail {

inline std::vector<Degree> hom_degrees(const FgAbelianGroup& G, const std::vector<Degree>& src,
                                       const std::vector<Degree>& tgt) {
  std::set<Degree> s;
  for (const auto& x : src)
    for (const auto& y : tgt) s.insert(G.sub(y, x));
  return {s.begin(), s.end()};
}

/// Hom_g(M, N) over R as a submodule of the ambient module of generator images.
inline HomWitness::DegreeData hom_degree(const GradedRing& R, const GradedModule& M, const GradedModule& N,
                                         const Degree& g) {
  const auto& G = R.group();
  const std::int64_t n = R.modulus();
  HomWitness::DegreeData dd;
  std::vector<std::int64_t> amb;
  for (const auto& h : M.support()) {
    const ZnModule& Y = N.component(G.add(h, g));
    if (Y.rank() == 0) continue;
    dd.offset[h] = amb.size();
    for (std::size_t i = 0; i < M.component(h).rank(); ++i) amb.insert(amb.end(), Y.orders().begin(), Y.orders().end());
  }
  dd.ambient = ZnModule(n, amb);
  auto coord = [&](const Degree& h, std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    auto it = dd.offset.find(h);
    if (it == dd.offset.end()) return std::nullopt;
    return it->second + i * N.component(G.add(h, g)).rank() + j;
  };
  // constraint columns
  std::vector<std::int64_t> corders;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(amb.size());
  auto add_block = [&](const ZnModule& Y) {
    const std::size_t base = corders.size();
    corders.insert(corders.end(), Y.orders().begin(), Y.orders().end());
    return base;
  };
  for (const auto& [h, off] : dd.offset) {
    const ZnModule& X = M.component(h);
    const ZnModule& Y = N.component(G.add(h, g));
    for (std::size_t i = 0; i < X.rank(); ++i) {
      if (X.order(i) == n) continue;
      const std::size_t base = add_block(Y);
      for (std::size_t j = 0; j < Y.rank(); ++j) rows[*coord(h, i, j)].emplace_back(base + j, X.order(i));
    }
  }
  for (const auto& a : R.support()) {
    const ZnModule& A = R.component(a);
    for (const auto& h : M.support()) {
      const Degree ah = G.add(a, h);
      const ZnModule& Y = N.component(G.add(ah, g));
      if (Y.rank() == 0) continue;
      const ZnModule& X = M.component(h);
      const ZnModule& Yh = N.component(G.add(h, g));
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t i = 0; i < X.rank(); ++i) {
          const std::size_t base = add_block(Y);
          // f(r e_i) = sum_l c_l f(e_l)
          const Vec rx = M.act(a, A.basis(b), h, X.basis(i));
          for (std::size_t l = 0; l < rx.size(); ++l) {
            if (rx[l] == 0) continue;
            for (std::size_t j = 0; j < Y.rank(); ++j) {
              auto c = coord(ah, l, j);
              if (c) rows[*c].emplace_back(base + j, rx[l]);
            }
          }
          // - r f(e_i)
          for (std::size_t j = 0; j < Yh.rank(); ++j) {
            const Vec ry = N.act(a, A.basis(b), G.add(h, g), Yh.basis(j));
            auto c = coord(h, i, j);
            if (!c) continue;
            for (std::size_t l = 0; l < ry.size(); ++l)
              if (ry[l]) rows[*c].emplace_back(base + l, n - ry[l]);
          }
        }
    }
  }
  ZnModule cmod(n, corders);
  ZnMatrix phi(n, amb.size(), corders.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) phi.set(r, c, phi.at(r, c) + v);
  Submodule k = kernel(ZnMap(dd.ambient, cmod, phi));
  dd.inclusion = k.inclusion;
  dd.locator = PreimageSolver(k.inclusion);
  return dd;
}

}  // namespace detail

/// Hom_R(source, target) where source lives over A via hs: R -> A and target
/// over B via ht: R -> B. Side::Left gives the A-action (a u)(x) = u(a x),
/// Side::Right the B-action (b u)(x) = b u(x).
inline HomWitness hom(const GradedRingHom& hs, const ModulePtr& source, const GradedRingHom& ht,
                      const ModulePtr& target, Side side) {
  require_same_ring(hs.source, ht.source, "hom");
  require_same_ring(hs.target, source->ring, "hom");
  require_same_ring(ht.target, target->ring, "hom");
  const auto& R = *hs.source;
  const auto& G = R.group();
  const ModulePtr ms = restrict(hs, source);
  const ModulePtr mt = restrict(ht, target);
  HomWitness w;
  w.source_hom = hs;
  w.target_hom = ht;
  w.source = source;
  w.target = target;
  w.side = side;
  const RingPtr acting = side == Side::Left ? source->ring : target->ring;
  GradedModule out(acting);
  for (const auto& g : detail::hom_degrees(G, source->support(), target->support())) {
    auto dd = detail::hom_degree(R, *ms, *mt, g);
    out.set_component(g, dd.inclusion.source());
    w.degrees.emplace(g, std::move(dd));
  }
  w.module = std::make_shared<const GradedModule>(out);
  const auto& A = *acting;
  for (const auto& a : A.support())
    for (const auto& g : out.support()) {
      const Degree ag = G.add(a, g);
      if (!out.in_support(ag)) continue;
      const ZnModule& Ra = A.component(a);
      const ZnModule& U = out.component(g);
      Table t(Ra.rank(), std::vector<Vec>(U.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < Ra.rank(); ++b)
        for (std::size_t c = 0; c < U.rank(); ++c) {
          const Vec r = Ra.basis(b);
          const Vec u = U.basis(c);
          std::function<Vec(const Degree&, std::size_t)> image;
          if (side == Side::Left) {
            image = [&](const Degree& h, std::size_t i) {
              return w.evaluate(g, u, G.add(a, h), source->act(a, r, h, source->basis(h, i)));
            };
          } else {
            image = [&](const Degree& h, std::size_t i) {
              return target->act(a, r, G.add(h, g), w.evaluate(g, u, h, source->basis(h, i)));
            };
          }
          auto v = w.locate(ag, image);
          if (!v) throw IllDefinedMap("hom: scalar action leaves the module of morphisms");
          nonzero = nonzero || !out.component(ag).is_zero_element(*v);
          t[b][c] = *v;
        }
      if (nonzero) out.action[{a, g}] = std::move(t);
    }
  w.module = make_module(std::move(out));
  return w;
}

/// Hom_R(M, N) for modules over the same ring.
inline HomWitness hom(const ModulePtr& m, const ModulePtr& n) {
  require_same_ring(m->ring, n->ring, "hom");
  auto id = identity_ring_hom(m->ring);
  return hom(id, m, id, n, Side::Left);
}

// ---------------------------------------------------------------------------
// change of rings

/// h^*(M) = S (x)_R M with S acting on the left factor.
inline TensorWitness extend(const GradedRingHom& h, const ModulePtr& m) {
  return tensor(h, regular_module(h.target), identity_ring_hom(h.source), m, Side::Left);
}

/// h~(M) = Hom_R(S, M) with (s u)(x) = u(s x).
inline HomWitness coextend(const GradedRingHom& h, const ModulePtr& m) {
  return hom(h, regular_module(h.target), identity_ring_hom(h.source), m, Side::Left);
}

/// h_+(M) = h_*(M (x)_S h~(R)); the witness is over S.
struct PlusWitness {
  HomWitness coextended_base;  // h~(R)
  TensorWitness tensor;        // M (x)_S h~(R)
  ModulePtr module;            // h_*(...)
};

inline PlusWitness h_plus(const GradedRingHom& h, const ModulePtr& m) {
  require_same_ring(h.target, m->ring, "h_plus");
  PlusWitness p{coextend(h, regular_module(h.source)), {}, nullptr};
  p.tensor = tensor(m, p.coextended_base.module);
  p.module = restrict(h, p.tensor.module);
  return p;
}

struct SharpWitness {
  HomWitness coextended_base;  // h~(R)
  HomWitness hom;              // Hom_S(h~(R), M)
  ModulePtr module;            // h_*(...)
};

inline SharpWitness h_sharp(const GradedRingHom& h, const ModulePtr& m) {
  require_same_ring(h.target, m->ring, "h_sharp");
  SharpWitness p{coextend(h, regular_module(h.source)), {}, nullptr};
  p.hom = hom(p.coextended_base.module, m);
  p.module = restrict(h, p.hom.module);
  return p;
}

// ---------------------------------------------------------------------------
// morphism construction from element formulas

/// Morphism sending canonical generator (g, i) of src to image(g, i); the
/// result is validated and IllDefinedMap is thrown on failure.
inline GradedMorphism morphism_from_generators(const ModulePtr& src, const ModulePtr& tgt,
                                               const std::function<Vec(const Degree&, std::size_t)>& image,
                                               const std::string& name) {
  GradedMorphism f{src, tgt, {}};
  for (const auto& g : src->support()) {
    const ZnModule& X = src->component(g);
    const ZnModule& Y = tgt->component(g);
    ZnMatrix b(X.modulus(), X.rank(), Y.rank());
    for (std::size_t i = 0; i < X.rank(); ++i) {
      const Vec v = image(g, i);
      if (v.size() != Y.rank()) throw IllDefinedMap(name + ": image has wrong length");
      for (std::size_t j = 0; j < v.size(); ++j) b.set(i, j, v[j]);
    }
    f.blocks[g] = b;
  }
  try {
    validate_morphism(f);
  } catch (const ValidationError& e) {
    throw IllDefinedMap(name + " is not a morphism (" + e.axiom() + "): " + e.what());
  }
  return f;
}

/// Morphism out of a tensor product given on pure tensors of generators. The
/// formula is checked against every defining relation.
inline GradedMorphism morphism_from_tensor(
    const TensorWitness& t, const ModulePtr& src, const ModulePtr& tgt,
    const std::function<Vec(const Degree&, std::size_t, const Degree&, std::size_t)>& image, const std::string& name) {
  GradedMorphism f{src, tgt, {}};
  const std::int64_t n = src->modulus();
  for (const auto& [k, dd] : t.degrees) {
    const ZnModule& Y = tgt->component(k);
    ZnMatrix raw(n, dd.raw.size(), Y.rank());
    for (std::size_t r = 0; r < dd.raw.size(); ++r) {
      const auto& [g, i, h, j] = dd.raw[r];
      const Vec v = image(g, i, h, j);
      if (v.size() != Y.rank()) throw IllDefinedMap(name + ": image has wrong length");
      for (std::size_t c = 0; c < v.size(); ++c) raw.set(r, c, v[c]);
    }
    for (const auto& rel : dd.relations)
      if (!Y.is_zero_element(raw.left_apply(rel)))
        throw IllDefinedMap(name + " is not well defined on the tensor product at degree " + format_vec(k));
    if (!src->in_support(k)) continue;
    f.blocks[k] = ZnMap(src->component(k), Y, dd.pres.from_canon * raw).matrix();
  }
  try {
    validate_morphism(f);
  } catch (const ValidationError& e) {
    throw IllDefinedMap(name + " is not a morphism (" + e.axiom() + "): " + e.what());
  }
  return f;
}

/// Element of a Hom module from images of all source generators; throws if
/// the assignment is not a morphism.
inline Vec hom_element(const HomWitness& w, const Degree& g,
                       const std::function<Vec(const Degree&, std::size_t)>& image, const std::string& name) {
  auto v = w.locate(g, image);
  if (!v) throw IllDefinedMap(name + ": assignment is not a morphism of the required kind");
  return *v;
}

/// u (x) v: left -> left', right -> right'.
inline GradedMorphism tensor_map(const TensorWitness& from, const TensorWitness& to, const GradedMorphism& u,
                                 const GradedMorphism& v) {
  return morphism_from_tensor(
      from, from.module, to.module,
      [&](const Degree& g, std::size_t i, const Degree& h, std::size_t j) {
        return to.locate(g, u.apply(g, from.left->basis(g, i)), h, v.apply(h, from.right->basis(h, j)));
      },
      "tensor_map");
}

/// Hom(u, v): f -> v o f o u, for u: M' -> M and v: N -> N'.
inline GradedMorphism hom_map(const HomWitness& from, const HomWitness& to, const GradedMorphism& u,
                              const GradedMorphism& v) {
  const auto& G = from.module->group();
  return morphism_from_generators(
      from.module, to.module,
      [&](const Degree& g, std::size_t c) {
        const Vec f = from.module->basis(g, c);
        return hom_element(
            to, g,
            [&](const Degree& h, std::size_t i) {
              return v.apply(G.add(h, g), from.evaluate(g, f, h, u.apply(h, to.source->basis(h, i))));
            },
            "hom_map");
      },
      "hom_map");
}

/// h^*(u)
inline GradedMorphism extend_map(const TensorWitness& from, const TensorWitness& to, const GradedMorphism& u) {
  return tensor_map(from, to, identity_morphism(from.left), u);
}

/// h~(u)
inline GradedMorphism coextend_map(const HomWitness& from, const HomWitness& to, const GradedMorphism& u) {
  return hom_map(from, to, identity_morphism(from.source), u);
}

}  // namespace grc
