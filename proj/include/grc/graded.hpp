#pragma once

// Finitely supported G-graded rings and modules with finite Z/n components.
//
// Every component is a canonical ZnModule. Multiplication and action are
// stored as tables on generators: table[b][i] is the product of generator b
// of the first degree with generator i of the second degree, as an element
// of the component in the sum degree. Degrees missing from a support carry
// the zero module.
//
// Shift convention: M(g)_h = M_{g+h}.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "grc/abelian.hpp"
#include "grc/znmodule.hpp"

namespace grc {

using Table = std::vector<std::vector<Vec>>;
using DegreePair = std::pair<Degree, Degree>;

/// Axiom identifiers carried by ValidationError.
namespace axiom {
inline constexpr const char* commutativity = "commutativity";
inline constexpr const char* associativity = "associativity";
inline constexpr const char* unitality = "unitality";
inline constexpr const char* well_defined = "well_defined";
inline constexpr const char* support_closure = "support_closure";
inline constexpr const char* linearity = "linearity";
inline constexpr const char* multiplicativity = "multiplicativity";
}  // namespace axiom

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string axiom_id, const std::string& message)
      : std::runtime_error(message), axiom_(std::move(axiom_id)) {}
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

class RingMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string degrees_text(std::initializer_list<Degree> ds) {
  std::string s = "(";
  bool first = true;
  for (const auto& d : ds) {
    s += first ? "" : ",";
    first = false;
    if (d.size() == 1) {
      s += std::to_string(d[0]);
    } else {
      s += format_vec(d);
    }
  }
  return s + ")";
}

/// Sum of r_b * x_i * table[b][i] in the target component.
inline Vec bilinear(const Table& t, const Vec& r, const Vec& x, const ZnModule& target) {
  Vec out = target.zero_element();
  const std::int64_t n = target.modulus();
  for (std::size_t b = 0; b < r.size(); ++b) {
    if (r[b] == 0) continue;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::int64_t c = mulmod(r[b], x[i], n);
      if (c == 0) continue;
      const Vec& v = t[b][i];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += mulmod(c, v[k], n);
    }
  }
  return target.reduce(out);
}

}  // namespace detail

/// Components of a graded object together with the zero module for missing degrees.
class GradedComponents {
 public:
  GradedComponents() = default;
  GradedComponents(FgAbelianGroup group, std::int64_t n) : group_(std::move(group)), zero_(n, {}) {}

  const FgAbelianGroup& group() const { return group_; }
  std::int64_t modulus() const { return zero_.modulus(); }
  const std::map<Degree, ZnModule>& components() const { return parts_; }
  const ZnModule& component(const Degree& d) const {
    auto it = parts_.find(d);
    return it == parts_.end() ? zero_ : it->second;
  }
  bool in_support(const Degree& d) const { return parts_.count(d) != 0; }
  std::vector<Degree> support() const {
    std::vector<Degree> s;
    for (const auto& [d, m] : parts_) s.push_back(d);
    return s;
  }
  bool is_zero() const { return parts_.empty(); }
  std::uint64_t cardinality() const {
    std::uint64_t c = 1;
    for (const auto& [d, m] : parts_) c *= m.cardinality();
    return c;
  }
  std::size_t generator_count() const {
    std::size_t c = 0;
    for (const auto& [d, m] : parts_) c += m.rank();
    return c;
  }

  /// Zero components are dropped.
  void set_component(const Degree& d, ZnModule m) {
    const Degree dd = group_.reduce(d);
    if (m.is_zero()) {
      parts_.erase(dd);
    } else {
      parts_[dd] = std::move(m);
    }
  }

  bool operator==(const GradedComponents&) const = default;

 private:
  FgAbelianGroup group_;
  ZnModule zero_;
  std::map<Degree, ZnModule> parts_;
};

struct GradedRing : GradedComponents {
  using GradedComponents::GradedComponents;

  std::map<DegreePair, Table> mult;
  Vec one;

  Vec multiply(const Degree& g, const Vec& x, const Degree& h, const Vec& y) const {
    const Degree k = group().add(g, h);
    const ZnModule& target = component(k);
    auto it = mult.find({g, h});
    if (it == mult.end()) return target.zero_element();
    return detail::bilinear(it->second, x, y, target);
  }

  Vec basis(const Degree& g, std::size_t i) const { return component(g).basis(i); }

  bool operator==(const GradedRing&) const = default;
};

using RingPtr = std::shared_ptr<const GradedRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

struct GradedModule : GradedComponents {
  GradedModule() = default;
  explicit GradedModule(RingPtr r) : GradedComponents(r->group(), r->modulus()), ring(std::move(r)) {}

  RingPtr ring;
  /// key (ring degree, module degree)
  std::map<DegreePair, Table> action;

  Vec act(const Degree& a, const Vec& r, const Degree& g, const Vec& x) const {
    const Degree k = group().add(a, g);
    const ZnModule& target = component(k);
    auto it = action.find({a, g});
    if (it == action.end()) return target.zero_element();
    return detail::bilinear(it->second, r, x, target);
  }

  Vec basis(const Degree& g, std::size_t i) const { return component(g).basis(i); }

  bool operator==(const GradedModule& o) const {
    return same_ring(ring, o.ring) && static_cast<const GradedComponents&>(*this) == o && action == o.action;
  }
};

using ModulePtr = std::shared_ptr<const GradedModule>;

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const std::string& where) {
  if (!same_ring(a, b)) throw RingMismatch(where + ": modules live over different rings");
}

inline void require_same_module(const ModulePtr& a, const ModulePtr& b, const std::string& where) {
  if (!(a == b || *a == *b)) throw RingMismatch(where + ": module mismatch");
}

/// Degree-zero morphism; blocks are keyed by every degree of the source support.
struct GradedMorphism {
  ModulePtr source, target;
  std::map<Degree, ZnMatrix> blocks;

  Vec apply(const Degree& g, const Vec& x) const {
    const ZnModule& t = target->component(g);
    auto it = blocks.find(g);
    if (it == blocks.end()) return t.zero_element();
    return t.reduce(it->second.left_apply(x));
  }

  ZnMap component_map(const Degree& g) const {
    const ZnModule& s = source->component(g);
    const ZnModule& t = target->component(g);
    auto it = blocks.find(g);
    if (it == blocks.end()) return ZnMap::zero(s, t);
    return ZnMap(s, t, it->second);
  }

  bool is_zero() const {
    for (const auto& [g, b] : blocks)
      if (!component_map(g).is_zero()) return false;
    return true;
  }

  bool operator==(const GradedMorphism& o) const {
    return (source == o.source || *source == *o.source) && (target == o.target || *target == *o.target) &&
           blocks == o.blocks;
  }
};

struct GradedRingHom {
  RingPtr source, target;
  std::map<Degree, ZnMatrix> blocks;

  Vec apply(const Degree& g, const Vec& x) const {
    const ZnModule& t = target->component(g);
    auto it = blocks.find(g);
    if (it == blocks.end()) return t.zero_element();
    return t.reduce(it->second.left_apply(x));
  }

  bool operator==(const GradedRingHom& o) const {
    return same_ring(source, o.source) && same_ring(target, o.target) && blocks == o.blocks;
  }
};

// ---------------------------------------------------------------------------
// validation

inline void validate_table_shape(const GradedComponents& left, const GradedComponents& right,
                                 const GradedComponents& out, const std::map<DegreePair, Table>& tables,
                                 const FgAbelianGroup& g) {
  for (const auto& [key, t] : tables) {
    const auto& [a, b] = key;
    const Degree s = g.add(a, b);
    if (!left.in_support(a) || !right.in_support(b))
      throw ValidationError(axiom::support_closure,
                            "table at degrees " + detail::degrees_text({a, b}) + " lies outside the support");
    if (!out.in_support(s))
      throw ValidationError(axiom::support_closure,
                            "support_closure fails at degrees " + detail::degrees_text({a, b}));
    const ZnModule& l = left.component(a);
    const ZnModule& r = right.component(b);
    const ZnModule& o = out.component(s);
    if (t.size() != l.rank()) throw ValidationError(axiom::well_defined, "table has wrong row count");
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if (t[i].size() != r.rank()) throw ValidationError(axiom::well_defined, "table has wrong column count");
      for (std::size_t j = 0; j < r.rank(); ++j) {
        const Vec& v = t[i][j];
        if (v.size() != o.rank() || o.reduce(v) != v)
          throw ValidationError(axiom::well_defined, "table entry not reduced at degrees " +
                                                         detail::degrees_text({a, b}));
        if (!o.is_zero_element(o.scale(l.order(i), v)) || !o.is_zero_element(o.scale(r.order(j), v)))
          throw ValidationError(axiom::well_defined,
                                "well_defined fails at degrees " + detail::degrees_text({a, b}));
      }
    }
  }
}

inline void validate_ring(const GradedRing& r) {
  const auto& G = r.group();
  validate_table_shape(r, r, r, r.mult, G);
  const Degree zero = G.zero();
  if (!r.is_zero()) {
    if (!r.in_support(zero))
      throw ValidationError(axiom::unitality, "unitality fails: degree 0 is not in the support");
    if (r.one.size() != r.component(zero).rank() || r.component(zero).reduce(r.one) != r.one)
      throw ValidationError(axiom::unitality, "unitality fails: one is not an element of degree 0");
  }
  const auto supp = r.support();
  for (const auto& g : supp)
    for (const auto& h : supp) {
      const auto& A = r.component(g);
      const auto& B = r.component(h);
      for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < B.rank(); ++j)
          if (r.multiply(g, A.basis(i), h, B.basis(j)) != r.multiply(h, B.basis(j), g, A.basis(i)))
            throw ValidationError(axiom::commutativity,
                                  "commutativity fails at degrees " + detail::degrees_text({g, h}));
    }
  for (const auto& g : supp) {
    const auto& A = r.component(g);
    for (std::size_t i = 0; i < A.rank(); ++i)
      if (r.multiply(zero, r.one, g, A.basis(i)) != A.basis(i))
        throw ValidationError(axiom::unitality, "unitality fails at degree " + detail::degrees_text({g}));
  }
  for (const auto& g : supp)
    for (const auto& h : supp)
      for (const auto& k : supp) {
        const auto& A = r.component(g);
        const auto& B = r.component(h);
        const auto& C = r.component(k);
        const Degree gh = G.add(g, h), hk = G.add(h, k);
        for (std::size_t i = 0; i < A.rank(); ++i)
          for (std::size_t j = 0; j < B.rank(); ++j) {
            const Vec xy = r.multiply(g, A.basis(i), h, B.basis(j));
            for (std::size_t l = 0; l < C.rank(); ++l) {
              const Vec left = r.multiply(gh, xy, k, C.basis(l));
              const Vec right = r.multiply(g, A.basis(i), hk, r.multiply(h, B.basis(j), k, C.basis(l)));
              if (left != right)
                throw ValidationError(axiom::associativity,
                                      "associativity fails at degrees " + detail::degrees_text({g, h, k}));
            }
          }
      }
}

inline void validate_module(const GradedModule& m) {
  const GradedRing& r = *m.ring;
  const auto& G = m.group();
  if (!(G == r.group()) || m.modulus() != r.modulus())
    throw RingMismatch("module grading group or modulus differs from its ring");
  validate_table_shape(r, m, m, m.action, G);
  const Degree zero = G.zero();
  const auto msupp = m.support();
  const auto rsupp = r.support();
  for (const auto& g : msupp) {
    const auto& X = m.component(g);
    for (std::size_t i = 0; i < X.rank(); ++i)
      if (m.act(zero, r.one, g, X.basis(i)) != X.basis(i))
        throw ValidationError(axiom::unitality, "unitality fails at degree " + detail::degrees_text({g}));
  }
  for (const auto& a : rsupp)
    for (const auto& b : rsupp)
      for (const auto& g : msupp) {
        const auto& A = r.component(a);
        const auto& B = r.component(b);
        const auto& X = m.component(g);
        const Degree ab = G.add(a, b), bg = G.add(b, g);
        for (std::size_t i = 0; i < A.rank(); ++i)
          for (std::size_t j = 0; j < B.rank(); ++j) {
            const Vec rs = r.multiply(a, A.basis(i), b, B.basis(j));
            for (std::size_t l = 0; l < X.rank(); ++l) {
              const Vec left = m.act(ab, rs, g, X.basis(l));
              const Vec right = m.act(a, A.basis(i), bg, m.act(b, B.basis(j), g, X.basis(l)));
              if (left != right)
                throw ValidationError(axiom::associativity,
                                      "associativity fails at degrees " + detail::degrees_text({a, b, g}));
            }
          }
      }
}

inline void validate_morphism(const GradedMorphism& f) {
  require_same_ring(f.source->ring, f.target->ring, "morphism");
  const auto& M = *f.source;
  const auto& N = *f.target;
  const auto& r = *M.ring;
  for (const auto& [g, b] : f.blocks) {
    if (!M.in_support(g))
      throw ValidationError(axiom::well_defined, "morphism block outside the source support");
    try {
      ZnMap check(M.component(g), N.component(g), b);
      if (!(check.matrix() == b))
        throw ValidationError(axiom::well_defined, "morphism block not reduced at degree " +
                                                       detail::degrees_text({g}));
    } catch (const IllDefinedMap& e) {
      throw ValidationError(axiom::well_defined,
                            "well_defined fails at degree " + detail::degrees_text({g}) + ": " + e.what());
    } catch (const ZnError& e) {
      throw ValidationError(axiom::well_defined,
                            "well_defined fails at degree " + detail::degrees_text({g}) + ": " + e.what());
    }
  }
  for (const auto& g : M.support())
    if (!f.blocks.count(g))
      throw ValidationError(axiom::well_defined, "morphism lacks a block at degree " + detail::degrees_text({g}));
  for (const auto& a : r.support())
    for (const auto& g : M.support()) {
      const auto& A = r.component(a);
      const auto& X = M.component(g);
      const Degree ag = r.group().add(a, g);
      for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t l = 0; l < X.rank(); ++l) {
          const Vec left = f.apply(ag, M.act(a, A.basis(i), g, X.basis(l)));
          const Vec right = N.act(a, A.basis(i), g, f.apply(g, X.basis(l)));
          if (left != right)
            throw ValidationError(axiom::linearity, "linearity fails at degrees " + detail::degrees_text({a, g}));
        }
    }
}

inline void validate_ring_hom(const GradedRingHom& h) {
  const auto& R = *h.source;
  const auto& S = *h.target;
  if (!(R.group() == S.group()) || R.modulus() != S.modulus())
    throw RingMismatch("ring morphism between rings over different groups or moduli");
  for (const auto& [g, b] : h.blocks) {
    if (!R.in_support(g)) throw ValidationError(axiom::well_defined, "ring morphism block outside support");
    try {
      ZnMap check(R.component(g), S.component(g), b);
      if (!(check.matrix() == b)) throw ValidationError(axiom::well_defined, "ring morphism block not reduced");
    } catch (const IllDefinedMap& e) {
      throw ValidationError(axiom::well_defined,
                            "well_defined fails at degree " + detail::degrees_text({g}) + ": " + e.what());
    } catch (const ZnError& e) {
      throw ValidationError(axiom::well_defined,
                            "well_defined fails at degree " + detail::degrees_text({g}) + ": " + e.what());
    }
  }
  for (const auto& g : R.support())
    if (!h.blocks.count(g)) throw ValidationError(axiom::well_defined, "ring morphism lacks a block");
  const Degree zero = R.group().zero();
  if (!R.is_zero() && h.apply(zero, R.one) != (S.is_zero() ? Vec{} : S.one))
    throw ValidationError(axiom::unitality, "unitality fails: one does not map to one");
  for (const auto& g : R.support())
    for (const auto& k : R.support()) {
      const auto& A = R.component(g);
      const auto& B = R.component(k);
      const Degree gk = R.group().add(g, k);
      for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < B.rank(); ++j) {
          const Vec left = h.apply(gk, R.multiply(g, A.basis(i), k, B.basis(j)));
          const Vec right = S.multiply(g, h.apply(g, A.basis(i)), k, h.apply(k, B.basis(j)));
          if (left != right)
            throw ValidationError(axiom::multiplicativity,
                                  "multiplicativity fails at degrees " + detail::degrees_text({g, k}));
        }
    }
}

// ---------------------------------------------------------------------------
// builders from raw presentations

struct ComponentSpec {
  std::size_t gens = 0;
  std::vector<Vec> relations;
};

/// Product of raw generator i in degree g with raw generator j in degree h.
struct BilinearEntry {
  Degree g;
  std::size_t i = 0;
  Degree h;
  std::size_t j = 0;
  Vec value;  // raw coordinates in degree g + h
};

struct RingSpec {
  FgAbelianGroup group;
  std::int64_t n = 2;
  std::map<Degree, ComponentSpec> components;
  std::vector<BilinearEntry> mult;
  Vec one;  // raw coordinates in degree 0
};

/// Action entries name canonical ring generators (g, i) and raw module generators (h, j).
struct ModuleSpec {
  RingPtr ring;
  std::map<Degree, ComponentSpec> components;
  std::vector<BilinearEntry> action;
};

struct MapEntry {
  Degree g;
  std::size_t i = 0;
  Vec value;  // coordinates in the target component
};

namespace detail {

struct RawDegree {
  ComponentSpec spec;
  Presentation pres;
  ZnModule module;
};

inline std::map<Degree, RawDegree> canonicalize_components(const FgAbelianGroup& G, std::int64_t n,
                                                           const std::map<Degree, ComponentSpec>& comps) {
  std::map<Degree, RawDegree> out;
  for (const auto& [d, c] : comps) {
    const Degree dd = G.reduce(d);
    if (out.count(dd)) throw ValidationError(axiom::well_defined, "component declared twice at degree " + format_vec(dd));
    auto [m, p] = ZnModule::presented(n, c.gens, c.relations);
    out[dd] = RawDegree{c, std::move(p), std::move(m)};
  }
  return out;
}

inline Vec raw_to_canon(const RawDegree* rd, const Vec& raw, const std::string& where) {
  if (!rd) {
    for (auto v : raw)
      if (v != 0) throw ValidationError(axiom::support_closure, where);
    return {};
  }
  if (raw.size() != rd->spec.gens) throw ValidationError(axiom::well_defined, "value has wrong length " + where);
  return rd->module.reduce(rd->pres.to_canon.left_apply(raw));
}

}  // namespace detail

inline RingPtr make_ring(GradedRing r) {
  validate_ring(r);
  return std::make_shared<const GradedRing>(std::move(r));
}

inline ModulePtr make_module(GradedModule m) {
  validate_module(m);
  return std::make_shared<const GradedModule>(std::move(m));
}

inline GradedMorphism make_morphism(ModulePtr s, ModulePtr t, std::map<Degree, ZnMatrix> blocks) {
  GradedMorphism f{std::move(s), std::move(t), std::move(blocks)};
  for (const auto& g : f.source->support()) {
    if (!f.blocks.count(g))
      f.blocks[g] = ZnMatrix(f.source->modulus(), f.source->component(g).rank(), f.target->component(g).rank());
    else
      f.blocks[g] = ZnMap(f.source->component(g), f.target->component(g), f.blocks[g]).matrix();
  }
  for (auto it = f.blocks.begin(); it != f.blocks.end();)
    it = f.source->in_support(it->first) ? std::next(it) : f.blocks.erase(it);
  validate_morphism(f);
  return f;
}

inline GradedRingHom make_ring_hom(RingPtr s, RingPtr t, std::map<Degree, ZnMatrix> blocks) {
  GradedRingHom h{std::move(s), std::move(t), std::move(blocks)};
  for (const auto& g : h.source->support()) {
    if (!h.blocks.count(g))
      h.blocks[g] = ZnMatrix(h.source->modulus(), h.source->component(g).rank(), h.target->component(g).rank());
    else
      h.blocks[g] = ZnMap(h.source->component(g), h.target->component(g), h.blocks[g]).matrix();
  }
  validate_ring_hom(h);
  return h;
}

/// Builds the canonical ring from a raw presentation. Products are symmetric:
/// an entry for (g,i,h,j) also defines (h,j,g,i).
inline RingPtr build_ring(const RingSpec& spec) {
  const auto& G = spec.group;
  const std::int64_t n = spec.n;
  auto raw = detail::canonicalize_components(G, n, spec.components);
  auto find = [&](const Degree& d) -> const detail::RawDegree* {
    auto it = raw.find(G.reduce(d));
    return it == raw.end() ? nullptr : &it->second;
  };
  // raw products on raw generators, canonical coordinates
  std::map<std::tuple<Degree, std::size_t, Degree, std::size_t>, Vec> prod;
  for (const auto& e : spec.mult) {
    const Degree g = G.reduce(e.g), h = G.reduce(e.h), k = G.add(g, h);
    const auto* rg = find(g);
    const auto* rh = find(h);
    if (!rg || !rh || e.i >= rg->spec.gens || e.j >= rh->spec.gens)
      throw ValidationError(axiom::well_defined, "product names an undeclared generator");
    Vec v = detail::raw_to_canon(find(k), e.value,
                                 "support_closure fails at degrees " + detail::degrees_text({g, h}));
    auto key = std::make_tuple(g, e.i, h, e.j);
    auto sym = std::make_tuple(h, e.j, g, e.i);
    for (const auto& kk : {key, sym}) {
      auto it = prod.find(kk);
      if (it != prod.end() && it->second != v)
        throw ValidationError(axiom::commutativity,
                              "commutativity fails at degrees " + detail::degrees_text({g, h}));
      prod[kk] = v;
    }
  }
  GradedRing r(G, n);
  for (const auto& [d, rd] : raw) r.set_component(d, rd.module);
  auto raw_product = [&](const Degree& g, std::size_t i, const Degree& h, std::size_t j, const ZnModule& out) {
    auto it = prod.find({g, i, h, j});
    return it == prod.end() ? out.zero_element() : it->second;
  };
  // relations must multiply to zero
  for (const auto& [g, rg] : raw)
    for (const auto& [h, rh] : raw) {
      const Degree k = G.add(g, h);
      const ZnModule& out = r.component(k);
      for (const auto& rel : rg.spec.relations)
        for (std::size_t j = 0; j < rh.spec.gens; ++j) {
          Vec acc = out.zero_element();
          for (std::size_t i = 0; i < rel.size(); ++i)
            acc = out.add(acc, out.scale(rel[i], raw_product(g, i, h, j, out)));
          if (!out.is_zero_element(acc))
            throw ValidationError(axiom::well_defined,
                                  "well_defined fails at degrees " + detail::degrees_text({g, h}));
        }
    }
  for (const auto& [g, rg] : raw)
    for (const auto& [h, rh] : raw) {
      const Degree k = G.add(g, h);
      if (rg.module.is_zero() || rh.module.is_zero() || !r.in_support(k)) continue;
      const ZnModule& out = r.component(k);
      Table t(rg.module.rank(), std::vector<Vec>(rh.module.rank(), out.zero_element()));
      bool nonzero = false;
      for (std::size_t b = 0; b < rg.module.rank(); ++b)
        for (std::size_t c = 0; c < rh.module.rank(); ++c) {
          Vec acc = out.zero_element();
          for (std::size_t i = 0; i < rg.spec.gens; ++i)
            for (std::size_t j = 0; j < rh.spec.gens; ++j) {
              const std::int64_t coef = mulmod(rg.pres.from_canon.at(b, i), rh.pres.from_canon.at(c, j), n);
              if (coef) acc = out.add(acc, out.scale(coef, raw_product(g, i, h, j, out)));
            }
          nonzero = nonzero || !out.is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) r.mult[{g, h}] = std::move(t);
    }
  const Degree zero = G.zero();
  if (!r.is_zero()) {
    const auto* r0 = find(zero);
    if (!r0) throw ValidationError(axiom::unitality, "unitality fails: no degree 0 component");
    r.one = detail::raw_to_canon(r0, spec.one, "one");
  }
  return make_ring(std::move(r));
}

inline ModulePtr build_module(const ModuleSpec& spec) {
  const GradedRing& R = *spec.ring;
  const auto& G = R.group();
  const std::int64_t n = R.modulus();
  auto raw = detail::canonicalize_components(G, n, spec.components);
  auto find = [&](const Degree& d) -> const detail::RawDegree* {
    auto it = raw.find(G.reduce(d));
    return it == raw.end() ? nullptr : &it->second;
  };
  std::map<std::tuple<Degree, std::size_t, Degree, std::size_t>, Vec> act;
  for (const auto& e : spec.action) {
    const Degree a = G.reduce(e.g), g = G.reduce(e.h), k = G.add(a, g);
    const auto* rg = find(g);
    if (!R.in_support(a) || e.i >= R.component(a).rank() || !rg || e.j >= rg->spec.gens)
      throw ValidationError(axiom::well_defined, "action names an undeclared generator");
    Vec v = detail::raw_to_canon(find(k), e.value,
                                 "support_closure fails at degrees " + detail::degrees_text({a, g}));
    auto key = std::make_tuple(a, e.i, g, e.j);
    if (act.count(key) && act[key] != v)
      throw ValidationError(axiom::well_defined, "action entry given twice with different values");
    act[key] = v;
  }
  GradedModule m(spec.ring);
  for (const auto& [d, rd] : raw) m.set_component(d, rd.module);
  const Degree zero = G.zero();
  auto raw_act = [&](const Degree& a, std::size_t b, const Degree& g, std::size_t j, const ZnModule& out) {
    auto it = act.find({a, b, g, j});
    if (it != act.end()) return it->second;
    // the unit acts as the identity unless stated otherwise
    if (a == zero && !R.is_zero() && R.one == R.basis(zero, b)) {
      const auto* rg = find(g);
      Vec e(rg->spec.gens, 0);
      e[j] = 1;
      return rg->module.reduce(rg->pres.to_canon.left_apply(e));
    }
    return out.zero_element();
  };
  for (const auto& a : R.support())
    for (const auto& [g, rg] : raw) {
      const Degree k = G.add(a, g);
      const ZnModule& out = m.component(k);
      const ZnModule& A = R.component(a);
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (const auto& rel : rg.spec.relations) {
          Vec acc = out.zero_element();
          for (std::size_t j = 0; j < rel.size(); ++j) acc = out.add(acc, out.scale(rel[j], raw_act(a, b, g, j, out)));
          if (!out.is_zero_element(acc))
            throw ValidationError(axiom::well_defined,
                                  "well_defined fails at degrees " + detail::degrees_text({a, g}));
        }
      if (rg.module.is_zero() || !m.in_support(k)) continue;
      Table t(A.rank(), std::vector<Vec>(rg.module.rank(), out.zero_element()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < rg.module.rank(); ++c) {
          Vec acc = out.zero_element();
          for (std::size_t j = 0; j < rg.spec.gens; ++j) {
            const std::int64_t coef = rg.pres.from_canon.at(c, j);
            if (coef) acc = out.add(acc, out.scale(coef, raw_act(a, b, g, j, out)));
          }
          nonzero = nonzero || !out.is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) m.action[{a, g}] = std::move(t);
    }
  return make_module(std::move(m));
}

/// Morphism from images of canonical source generators.
inline GradedMorphism build_morphism(ModulePtr s, ModulePtr t, const std::vector<MapEntry>& entries) {
  std::map<Degree, ZnMatrix> blocks;
  const auto& G = s->group();
  for (const auto& g : s->support())
    blocks[g] = ZnMatrix(s->modulus(), s->component(g).rank(), t->component(g).rank());
  for (const auto& e : entries) {
    const Degree g = G.reduce(e.g);
    auto it = blocks.find(g);
    if (it == blocks.end() || e.i >= s->component(g).rank())
      throw ValidationError(axiom::well_defined, "map entry names an undeclared generator");
    if (e.value.size() != t->component(g).rank())
      throw ValidationError(axiom::well_defined, "map entry value has wrong length");
    for (std::size_t j = 0; j < e.value.size(); ++j) it->second.set(e.i, j, e.value[j]);
  }
  return make_morphism(std::move(s), std::move(t), std::move(blocks));
}

inline GradedRingHom build_ring_hom(RingPtr s, RingPtr t, const std::vector<MapEntry>& entries) {
  std::map<Degree, ZnMatrix> blocks;
  const auto& G = s->group();
  for (const auto& g : s->support())
    blocks[g] = ZnMatrix(s->modulus(), s->component(g).rank(), t->component(g).rank());
  for (const auto& e : entries) {
    const Degree g = G.reduce(e.g);
    auto it = blocks.find(g);
    if (it == blocks.end() || e.i >= s->component(g).rank())
      throw ValidationError(axiom::well_defined, "map entry names an undeclared generator");
    if (e.value.size() != t->component(g).rank())
      throw ValidationError(axiom::well_defined, "map entry value has wrong length");
    for (std::size_t j = 0; j < e.value.size(); ++j) it->second.set(e.i, j, e.value[j]);
  }
  return make_ring_hom(std::move(s), std::move(t), std::move(blocks));
}

/// Per-degree matrices in canonical coordinates for a map given on raw
/// generators: raw_image(g, i) lists raw target coordinates in degree g.
inline std::map<Degree, ZnMatrix> blocks_from_raw(const FgAbelianGroup& G, std::int64_t n,
                                                  const std::map<Degree, ComponentSpec>& source,
                                                  const std::map<Degree, ComponentSpec>& target,
                                                  const std::function<Vec(const Degree&, std::size_t)>& raw_image) {
  auto src = detail::canonicalize_components(G, n, source);
  auto tgt = detail::canonicalize_components(G, n, target);
  std::map<Degree, ZnMatrix> out;
  for (const auto& [g, rs] : src) {
    auto it = tgt.find(g);
    const detail::RawDegree* rt = it == tgt.end() ? nullptr : &it->second;
    const std::size_t cols = rt ? rt->module.rank() : 0;
    std::vector<Vec> images;
    for (std::size_t i = 0; i < rs.spec.gens; ++i)
      images.push_back(detail::raw_to_canon(rt, raw_image(g, i), "image leaves the target support"));
    ZnMatrix b(n, rs.module.rank(), cols);
    for (std::size_t c = 0; c < rs.module.rank(); ++c)
      for (std::size_t i = 0; i < rs.spec.gens; ++i) {
        const std::int64_t coef = rs.pres.from_canon.at(c, i);
        if (coef)
          for (std::size_t j = 0; j < cols; ++j) b.set(c, j, b.at(c, j) + mulmod(coef, images[i][j], n));
      }
    out[g] = b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// basic constructions

inline ModulePtr regular_module(const RingPtr& r) {
  GradedModule m(r);
  for (const auto& [d, c] : r->components()) m.set_component(d, c);
  m.action = r->mult;
  return std::make_shared<const GradedModule>(std::move(m));
}

inline ModulePtr zero_module(const RingPtr& r) { return std::make_shared<const GradedModule>(GradedModule(r)); }

inline GradedMorphism identity_morphism(const ModulePtr& m) {
  GradedMorphism f{m, m, {}};
  for (const auto& [g, c] : m->components()) f.blocks[g] = ZnMatrix::identity(m->modulus(), c.rank());
  return f;
}

inline GradedMorphism zero_morphism(const ModulePtr& s, const ModulePtr& t) {
  GradedMorphism f{s, t, {}};
  for (const auto& [g, c] : s->components()) f.blocks[g] = ZnMatrix(s->modulus(), c.rank(), t->component(g).rank());
  return f;
}

inline GradedRingHom identity_ring_hom(const RingPtr& r) {
  GradedRingHom h{r, r, {}};
  for (const auto& [g, c] : r->components()) h.blocks[g] = ZnMatrix::identity(r->modulus(), c.rank());
  return h;
}

/// u, then v.
inline GradedMorphism compose(const GradedMorphism& u, const GradedMorphism& v) {
  require_same_module(u.target, v.source, "compose");
  GradedMorphism w{u.source, v.target, {}};
  for (const auto& [g, b] : u.blocks) {
    auto it = v.blocks.find(g);
    if (it == v.blocks.end()) {
      w.blocks[g] = ZnMatrix(u.source->modulus(), b.rows(), v.target->component(g).rank());
    } else {
      w.blocks[g] = ZnMap(u.source->component(g), v.target->component(g), b * it->second).matrix();
    }
  }
  return w;
}

inline GradedRingHom compose(const GradedRingHom& u, const GradedRingHom& v) {
  if (!same_ring(u.target, v.source)) throw RingMismatch("compose: ring mismatch");
  GradedRingHom w{u.source, v.target, {}};
  for (const auto& [g, b] : u.blocks) {
    auto it = v.blocks.find(g);
    w.blocks[g] = it == v.blocks.end()
                      ? ZnMatrix(u.source->modulus(), b.rows(), v.target->component(g).rank())
                      : ZnMap(u.source->component(g), v.target->component(g), b * it->second).matrix();
  }
  return w;
}

/// Two-sided inverse of an isomorphism; throws IllDefinedMap otherwise.
inline GradedMorphism inverse(const GradedMorphism& u) {
  GradedMorphism w{u.target, u.source, {}};
  for (const auto& g : u.target->support()) {
    if (!u.source->in_support(g)) throw IllDefinedMap("inverse: not an isomorphism at degree " + format_vec(g));
    const ZnMap f = u.component_map(g);
    if (!is_injective(f)) throw IllDefinedMap("inverse: not injective at degree " + format_vec(g));
    const PreimageSolver solver(f);
    const ZnModule& t = u.target->component(g);
    ZnMatrix b(t.modulus(), t.rank(), f.source().rank());
    for (std::size_t j = 0; j < t.rank(); ++j) {
      auto x = solver.solve(t.basis(j));
      if (!x) throw IllDefinedMap("inverse: not surjective at degree " + format_vec(g));
      for (std::size_t i = 0; i < x->size(); ++i) b.set(j, i, (*x)[i]);
    }
    w.blocks[g] = b;
  }
  for (const auto& g : u.source->support())
    if (!u.target->in_support(g)) throw IllDefinedMap("inverse: not an isomorphism at degree " + format_vec(g));
  return w;
}

/// u + v
inline GradedMorphism add(const GradedMorphism& u, const GradedMorphism& v) {
  require_same_module(u.source, v.source, "add");
  require_same_module(u.target, v.target, "add");
  GradedMorphism w{u.source, u.target, {}};
  for (const auto& [g, b] : u.blocks) {
    ZnMatrix s = b;
    const ZnMatrix& o = v.blocks.at(g);
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) s.set(i, j, b.at(i, j) + o.at(i, j));
    w.blocks[g] = ZnMap(u.source->component(g), u.target->component(g), s).matrix();
  }
  return w;
}

/// M(g), with M(g)_h = M_{g+h}.
inline ModulePtr shift(const ModulePtr& m, const Degree& g) {
  const auto& G = m->group();
  const Degree gg = G.reduce(g);
  GradedModule out(m->ring);
  for (const auto& [d, c] : m->components()) out.set_component(G.sub(d, gg), c);
  for (const auto& [key, t] : m->action) out.action[{key.first, G.sub(key.second, gg)}] = t;
  return std::make_shared<const GradedModule>(std::move(out));
}

/// u(g): the same blocks, re-indexed.
inline GradedMorphism shift(const GradedMorphism& u, const Degree& g, const ModulePtr& s, const ModulePtr& t) {
  const auto& G = u.source->group();
  GradedMorphism w{s, t, {}};
  for (const auto& [d, b] : u.blocks) w.blocks[G.sub(d, G.reduce(g))] = b;
  return w;
}

/// Multiplication by a homogeneous ring element r of degree a, as M -> M(a).
inline GradedMorphism multiplication(const ModulePtr& m, const Degree& a, const Vec& r) {
  auto t = shift(m, a);
  const auto& G = m->group();
  GradedMorphism f{m, t, {}};
  for (const auto& g : m->support()) {
    const ZnModule& X = m->component(g);
    ZnMatrix b(m->modulus(), X.rank(), t->component(g).rank());
    for (std::size_t i = 0; i < X.rank(); ++i) {
      const Vec y = m->act(G.reduce(a), r, g, X.basis(i));
      for (std::size_t j = 0; j < y.size(); ++j) b.set(i, j, y[j]);
    }
    f.blocks[g] = b;
  }
  return f;
}

struct GradedDirectSum {
  ModulePtr module;
  std::vector<GradedMorphism> injections;
  std::vector<GradedMorphism> projections;
};

inline GradedDirectSum direct_sum(const RingPtr& ring, const std::vector<ModulePtr>& parts) {
  for (const auto& p : parts) require_same_ring(ring, p->ring, "direct_sum");
  const auto& G = ring->group();
  std::map<Degree, DirectSum> sums;
  std::set<Degree> degrees;
  for (const auto& p : parts)
    for (const auto& d : p->support()) degrees.insert(d);
  GradedModule m(ring);
  for (const auto& d : degrees) {
    std::vector<ZnModule> comps;
    for (const auto& p : parts) comps.push_back(p->component(d));
    sums[d] = grc::direct_sum(ring->modulus(), comps);
    m.set_component(d, sums[d].module);
  }
  for (const auto& a : ring->support())
    for (const auto& d : degrees) {
      const Degree k = G.add(a, d);
      if (!m.in_support(k) || !m.in_support(d)) continue;
      const ZnModule& A = ring->component(a);
      const ZnModule& X = m.component(d);
      const ZnModule& out = m.component(k);
      Table t(A.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < X.rank(); ++c) {
          Vec acc = out.zero_element();
          for (std::size_t p = 0; p < parts.size(); ++p) {
            const Vec xp = parts[p]->component(d).reduce(sums[d].projections[p].row(c));
            const Vec y = parts[p]->act(a, A.basis(b), d, xp);
            if (y.empty()) continue;
            acc = out.add(acc, out.reduce(sums[k].injections[p].left_apply(y)));
          }
          nonzero = nonzero || !out.is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) m.action[{a, d}] = std::move(t);
    }
  GradedDirectSum out{std::make_shared<const GradedModule>(std::move(m)), {}, {}};
  for (std::size_t p = 0; p < parts.size(); ++p) {
    GradedMorphism inj{parts[p], out.module, {}};
    for (const auto& d : parts[p]->support())
      inj.blocks[d] = ZnMap(parts[p]->component(d), out.module->component(d), sums[d].injections[p]).matrix();
    GradedMorphism proj{out.module, parts[p], {}};
    for (const auto& d : out.module->support())
      proj.blocks[d] = ZnMap(out.module->component(d), parts[p]->component(d), sums[d].projections[p]).matrix();
    out.injections.push_back(std::move(inj));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

/// ⊕ R(g_i)
inline ModulePtr free_module(const RingPtr& r, const std::vector<Degree>& shifts) {
  std::vector<ModulePtr> parts;
  auto reg = regular_module(r);
  for (const auto& g : shifts) parts.push_back(shift(reg, g));
  return direct_sum(r, parts).module;
}

// ---------------------------------------------------------------------------
// kernels, images, cokernels

struct GradedSubmodule {
  ModulePtr module;
  GradedMorphism inclusion;
};

struct GradedQuotient {
  ModulePtr module;
  GradedMorphism projection;
};

/// Submodule of m with the given per-degree generators; the span must be
/// closed under the action.
inline GradedSubmodule graded_submodule(const ModulePtr& m, const std::map<Degree, ZnMatrix>& gens) {
  const auto& R = *m->ring;
  const auto& G = m->group();
  std::map<Degree, Submodule> subs;
  std::map<Degree, PreimageSolver> solvers;
  GradedModule out(m->ring);
  for (const auto& [d, g] : gens) {
    subs[d] = submodule(m->component(d), g);
    out.set_component(d, subs[d].module);
  }
  for (const auto& d : out.support()) solvers[d] = PreimageSolver(subs[d].inclusion);
  for (const auto& a : R.support())
    for (const auto& d : out.support()) {
      const Degree k = G.add(a, d);
      const ZnModule& A = R.component(a);
      const ZnModule& X = out.component(d);
      Table t(A.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < X.rank(); ++c) {
          const Vec y = m->act(a, A.basis(b), d, subs[d].inclusion.apply(X.basis(c)));
          if (!out.in_support(k)) {
            if (!m->component(k).is_zero_element(y))
              throw ValidationError(axiom::support_closure, "submodule is not closed under the action");
            continue;
          }
          auto x = solvers[k].solve(y);
          if (!x) throw ValidationError(axiom::support_closure, "submodule is not closed under the action");
          nonzero = nonzero || !out.component(k).is_zero_element(*x);
          t[b][c] = *x;
        }
      if (nonzero && out.in_support(k)) out.action[{a, d}] = std::move(t);
    }
  auto ptr = std::make_shared<const GradedModule>(std::move(out));
  GradedMorphism incl{ptr, m, {}};
  for (const auto& d : ptr->support()) incl.blocks[d] = subs[d].inclusion.matrix();
  return {ptr, incl};
}

inline GradedSubmodule kernel(const GradedMorphism& u) {
  std::map<Degree, ZnMatrix> gens;
  for (const auto& d : u.source->support()) {
    auto k = kernel(u.component_map(d));
    gens[d] = k.inclusion.matrix();
  }
  return graded_submodule(u.source, gens);
}

inline GradedSubmodule image(const GradedMorphism& u) {
  std::map<Degree, ZnMatrix> gens;
  for (const auto& d : u.source->support()) gens[d] = u.blocks.at(d);
  return graded_submodule(u.target, gens);
}

inline GradedQuotient cokernel(const GradedMorphism& u) {
  const auto& m = u.target;
  const auto& R = *m->ring;
  const auto& G = m->group();
  std::map<Degree, Quotient> qs;
  GradedModule out(m->ring);
  for (const auto& d : m->support()) {
    qs[d] = cokernel(u.component_map(d));
    out.set_component(d, qs[d].module);
  }
  for (const auto& a : R.support())
    for (const auto& d : out.support()) {
      const Degree k = G.add(a, d);
      if (!out.in_support(k)) continue;
      const ZnModule& A = R.component(a);
      const ZnModule& X = out.component(d);
      Table t(A.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < X.rank(); ++c) {
          const Vec lift = m->component(d).reduce(qs[d].lift.row(c));
          t[b][c] = qs[k].projection.apply(m->act(a, A.basis(b), d, lift));
          nonzero = nonzero || !out.component(k).is_zero_element(t[b][c]);
        }
      if (nonzero) out.action[{a, d}] = std::move(t);
    }
  auto ptr = std::make_shared<const GradedModule>(std::move(out));
  GradedMorphism proj{m, ptr, {}};
  for (const auto& d : m->support()) proj.blocks[d] = qs[d].projection.matrix();
  return {ptr, proj};
}

// ---------------------------------------------------------------------------
// coarsening along an epimorphism psi: G -> H

struct CoarsenWitness {
  GroupEpi psi;
  std::map<Degree, ZnMatrix> embed;    // fine degree g: X_g -> X_[psi](psi g)
  std::map<Degree, ZnMatrix> project;  // fine degree g: X_[psi](psi g) -> X_g
};

namespace detail {

inline CoarsenWitness coarsen_components(const GradedComponents& x, const GroupEpi& psi,
                                         GradedComponents& out) {
  std::map<Degree, std::vector<Degree>> fibers;
  for (const auto& g : x.support()) fibers[psi.apply(g)].push_back(g);
  CoarsenWitness w{psi, {}, {}};
  for (const auto& [d, fiber] : fibers) {
    std::vector<ZnModule> comps;
    for (const auto& g : fiber) comps.push_back(x.component(g));
    DirectSum s = grc::direct_sum(x.modulus(), comps);
    out.set_component(d, s.module);
    for (std::size_t k = 0; k < fiber.size(); ++k) {
      w.embed[fiber[k]] = s.injections[k];
      w.project[fiber[k]] = s.projections[k];
    }
  }
  return w;
}

}  // namespace detail

inline Vec coarse_embed(const CoarsenWitness& w, const GradedComponents& coarse, const Degree& g, const Vec& x) {
  const ZnModule& out = coarse.component(w.psi.apply(g));
  auto it = w.embed.find(g);
  if (it == w.embed.end()) return out.zero_element();
  return out.reduce(it->second.left_apply(x));
}

inline Vec coarse_project(const CoarsenWitness& w, const GradedComponents& fine, const Degree& g, const Vec& y) {
  const ZnModule& out = fine.component(g);
  auto it = w.project.find(g);
  if (it == w.project.end()) return out.zero_element();
  return out.reduce(it->second.left_apply(y));
}

/// Fine degrees of the support lying over d.
inline std::vector<Degree> fiber(const CoarsenWitness& w, const Degree& d) {
  std::vector<Degree> out;
  for (const auto& [g, m] : w.embed)
    if (w.psi.apply(g) == d) out.push_back(g);
  return out;
}

struct CoarseRing {
  RingPtr ring;
  CoarsenWitness witness;
};

struct CoarseModule {
  ModulePtr module;
  CoarsenWitness witness;
};

inline CoarseRing coarsen_ring(const RingPtr& r, const GroupEpi& psi) {
  if (!(psi.source() == r->group())) throw GroupMismatch("coarsen: psi does not start at the grading group");
  const auto& H = psi.target();
  GradedRing out(H, r->modulus());
  CoarsenWitness w = detail::coarsen_components(*r, psi, out);
  for (const auto& d : out.support())
    for (const auto& e : out.support()) {
      const Degree de = H.add(d, e);
      if (!out.in_support(de)) continue;
      const ZnModule& A = out.component(d);
      const ZnModule& B = out.component(e);
      const ZnModule& C = out.component(de);
      Table t(A.rank(), std::vector<Vec>(B.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < B.rank(); ++c) {
          Vec acc = C.zero_element();
          for (const auto& g : fiber(w, d))
            for (const auto& h : fiber(w, e)) {
              const Vec x = coarse_project(w, *r, g, A.basis(b));
              const Vec y = coarse_project(w, *r, h, B.basis(c));
              const Degree gh = r->group().add(g, h);
              acc = C.add(acc, coarse_embed(w, out, gh, r->multiply(g, x, h, y)));
            }
          nonzero = nonzero || !C.is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) out.mult[{d, e}] = std::move(t);
    }
  if (!r->is_zero()) out.one = coarse_embed(w, out, r->group().zero(), r->one);
  return {make_ring(std::move(out)), w};
}

/// coarse_ring must be the coarsening of m's ring along the same psi.
inline CoarseModule coarsen_module(const ModulePtr& m, const CoarseRing& coarse_ring) {
  const auto& psi = coarse_ring.witness.psi;
  if (!(psi.source() == m->group())) throw GroupMismatch("coarsen: psi does not start at the grading group");
  const auto& H = psi.target();
  const auto& R = *m->ring;
  const auto& cw = coarse_ring.witness;
  GradedModule out(coarse_ring.ring);
  CoarsenWitness w = detail::coarsen_components(*m, psi, out);
  const auto& CR = *coarse_ring.ring;
  for (const auto& d : CR.support())
    for (const auto& e : out.support()) {
      const Degree de = H.add(d, e);
      if (!out.in_support(de)) continue;
      const ZnModule& A = CR.component(d);
      const ZnModule& X = out.component(e);
      const ZnModule& C = out.component(de);
      Table t(A.rank(), std::vector<Vec>(X.rank()));
      bool nonzero = false;
      for (std::size_t b = 0; b < A.rank(); ++b)
        for (std::size_t c = 0; c < X.rank(); ++c) {
          Vec acc = C.zero_element();
          for (const auto& a : fiber(cw, d))
            for (const auto& g : fiber(w, e)) {
              const Vec r = coarse_project(cw, R, a, A.basis(b));
              const Vec x = coarse_project(w, *m, g, X.basis(c));
              acc = C.add(acc, coarse_embed(w, out, m->group().add(a, g), m->act(a, r, g, x)));
            }
          nonzero = nonzero || !C.is_zero_element(acc);
          t[b][c] = acc;
        }
      if (nonzero) out.action[{d, e}] = std::move(t);
    }
  return {std::make_shared<const GradedModule>(std::move(out)), w};
}

inline GradedMorphism coarsen_morphism(const GradedMorphism& u, const CoarseModule& s, const CoarseModule& t) {
  GradedMorphism out{s.module, t.module, {}};
  for (const auto& d : s.module->support()) {
    const ZnModule& X = s.module->component(d);
    const ZnModule& Y = t.module->component(d);
    ZnMatrix b(X.modulus(), X.rank(), Y.rank());
    for (std::size_t c = 0; c < X.rank(); ++c) {
      Vec acc = Y.zero_element();
      for (const auto& g : fiber(s.witness, d)) {
        const Vec x = coarse_project(s.witness, *u.source, g, X.basis(c));
        acc = Y.add(acc, coarse_embed(t.witness, *t.module, g, u.apply(g, x)));
      }
      for (std::size_t j = 0; j < Y.rank(); ++j) b.set(c, j, acc[j]);
    }
    out.blocks[d] = b;
  }
  return out;
}

inline GradedRingHom coarsen_ring_hom(const GradedRingHom& h, const CoarseRing& s, const CoarseRing& t) {
  GradedRingHom out{s.ring, t.ring, {}};
  for (const auto& d : s.ring->support()) {
    const ZnModule& X = s.ring->component(d);
    const ZnModule& Y = t.ring->component(d);
    ZnMatrix b(X.modulus(), X.rank(), Y.rank());
    for (std::size_t c = 0; c < X.rank(); ++c) {
      Vec acc = Y.zero_element();
      for (const auto& g : fiber(s.witness, d)) {
        const Vec x = coarse_project(s.witness, *h.source, g, X.basis(c));
        acc = Y.add(acc, coarse_embed(t.witness, *t.ring, g, h.apply(g, x)));
      }
      for (std::size_t j = 0; j < Y.rank(); ++j) b.set(c, j, acc[j]);
    }
    out.blocks[d] = b;
  }
  validate_ring_hom(out);
  return out;
}

}  // namespace grc
