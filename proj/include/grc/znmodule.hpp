#pragma once

// Finite Z/n-modules in invariant-factor form and maps between them.
//
// A module is (Z/d_1) x ... x (Z/d_k) with each d_i | n. Its relation
// matrix diag(d_1..d_k) is already in Howell form, so two modules are equal
// exactly when their order lists agree. Maps act on row vectors, x -> x * A.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grc/zn.hpp"

namespace grc {

class ZnModule {
 public:
  ZnModule() = default;
  ZnModule(std::int64_t n, std::vector<std::int64_t> orders) : n_(n), orders_(std::move(orders)) {
    check_modulus(n);
    for (auto d : orders_)
      if (d < 1 || n % d != 0)
        throw ZnError("component order " + std::to_string(d) + " does not divide " + std::to_string(n));
  }

  static ZnModule zero(std::int64_t n) { return ZnModule(n, {}); }
  static ZnModule free(std::int64_t n, std::size_t rank) {
    return ZnModule(n, std::vector<std::int64_t>(rank, n));
  }

  /// Canonical module of (Z/n)^gens / span(relations), plus the coordinate change.
  static std::pair<ZnModule, Presentation> presented(std::int64_t n, std::size_t gens,
                                                     const std::vector<Vec>& relations) {
    Presentation p = present(n, gens, relations);
    ZnModule m(n, p.orders);
    return {m, std::move(p)};
  }

  std::int64_t modulus() const { return n_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::int64_t order(std::size_t i) const { return orders_[i]; }
  bool is_zero() const {
    for (auto d : orders_)
      if (d != 1) return false;
    return true;
  }

  /// Orders ascending along a divisibility chain with no trivial factor.
  bool is_canonical() const {
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (orders_[i] == 1) return false;
      if (i && orders_[i] % orders_[i - 1] != 0) return false;
    }
    return true;
  }

  std::uint64_t cardinality() const {
    unsigned __int128 c = 1;
    for (auto d : orders_) {
      c *= static_cast<unsigned __int128>(d);
      if (c > UINT64_MAX) throw ZnError("module cardinality overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
  }

  /// Relation matrix in Howell form.
  ZnMatrix relations() const {
    ZnMatrix r(n_, 0, rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      if (orders_[i] == n_) continue;
      Vec row(rank(), 0);
      row[i] = orders_[i];
      r.append_row(row);
    }
    return r;
  }

  Vec reduce(Vec x) const {
    if (x.size() != rank()) throw ZnError("element has wrong length for module");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
    return x;
  }

  Vec zero_element() const { return Vec(rank(), 0); }
  Vec basis(std::size_t i) const {
    Vec e(rank(), 0);
    e[i] = mod(1, orders_[i]);
    return e;
  }

  bool is_zero_element(const Vec& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (mod(x[i], orders_[i]) != 0) return false;
    return true;
  }

  Vec add(const Vec& x, const Vec& y) const {
    Vec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(x[i] + y[i], orders_[i]);
    return z;
  }

  Vec scale(std::int64_t c, const Vec& x) const {
    Vec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(mulmod(c, x[i], n_), orders_[i]);
    return z;
  }

  /// n / d_i for each coordinate; x is zero iff x * diag(scale) = 0 mod n.
  Vec zero_test_scale() const {
    Vec s(rank());
    for (std::size_t i = 0; i < rank(); ++i) s[i] = n_ / orders_[i];
    return s;
  }

  /// Every element, in lexicographic order. Only for small modules.
  std::vector<Vec> elements() const {
    std::vector<Vec> out{zero_element()};
    for (std::size_t i = 0; i < rank(); ++i) {
      std::vector<Vec> next;
      next.reserve(out.size() * static_cast<std::size_t>(orders_[i]));
      for (const auto& e : out)
        for (std::int64_t v = 0; v < orders_[i]; ++v) {
          Vec f = e;
          f[i] = v;
          next.push_back(std::move(f));
        }
      out = std::move(next);
    }
    return out;
  }

  bool operator==(const ZnModule&) const = default;

 private:
  std::int64_t n_ = 2;
  std::vector<std::int64_t> orders_;
};

class IllDefinedMap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZnMap {
 public:
  ZnMap() = default;
  ZnMap(ZnModule source, ZnModule target, ZnMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != source_.rank() || matrix_.cols() != target_.rank())
      throw ZnError("map matrix has wrong shape");
    const std::int64_t n = source_.modulus();
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      for (std::size_t j = 0; j < matrix_.cols(); ++j) {
        const std::int64_t v = mod(matrix_.at(i, j), target_.order(j));
        if (mulmod(source_.order(i), v, n) % target_.order(j) != 0)
          throw IllDefinedMap("generator " + std::to_string(i) + " of order " +
                              std::to_string(source_.order(i)) + " cannot map to coordinate " +
                              std::to_string(j) + " value " + std::to_string(v));
        matrix_.set(i, j, v);
      }
  }

  static ZnMap identity(const ZnModule& m) {
    return ZnMap(m, m, ZnMatrix::identity(m.modulus(), m.rank()));
  }
  static ZnMap zero(const ZnModule& s, const ZnModule& t) {
    return ZnMap(s, t, ZnMatrix(s.modulus(), s.rank(), t.rank()));
  }

  const ZnModule& source() const { return source_; }
  const ZnModule& target() const { return target_; }
  const ZnMatrix& matrix() const { return matrix_; }

  Vec apply(const Vec& x) const { return target_.reduce(matrix_.left_apply(x)); }

  /// this, then g.
  ZnMap then(const ZnMap& g) const {
    if (!(target_ == g.source_)) throw ZnError("composition: module mismatch");
    return ZnMap(source_, g.target_, matrix_ * g.matrix_);
  }

  bool is_zero() const {
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (matrix_.at(i, j) != 0) return false;
    return true;
  }

  bool operator==(const ZnMap&) const = default;

 private:
  ZnModule source_, target_;
  ZnMatrix matrix_;
};

/// A module together with a map into an ambient module.
struct Submodule {
  ZnModule module;
  ZnMap inclusion;
};

/// Quotient module with the projection and a lift of each canonical generator.
struct Quotient {
  ZnModule module;
  ZnMap projection;
  ZnMatrix lift;
};

/// Submodule of m generated by the rows of gens (elements of m).
inline Submodule submodule(const ZnModule& m, const ZnMatrix& gens) {
  const std::int64_t n = m.modulus();
  ZnMatrix scaled = gens.scale_columns(m.zero_test_scale());
  ZnMatrix rel = left_kernel(scaled);
  auto [sub, p] = ZnModule::presented(n, gens.rows(), rel.row_list());
  ZnMatrix incl = p.from_canon * gens;
  return {sub, ZnMap(sub, m, incl)};
}

inline Submodule kernel(const ZnMap& f) {
  ZnMatrix scaled = f.matrix().scale_columns(f.target().zero_test_scale());
  return submodule(f.source(), left_kernel(scaled));
}

inline Submodule image(const ZnMap& f) { return submodule(f.target(), f.matrix()); }

inline Quotient cokernel(const ZnMap& f) {
  const ZnModule& t = f.target();
  const std::int64_t n = t.modulus();
  std::vector<Vec> rel = f.matrix().row_list();
  for (std::size_t j = 0; j < t.rank(); ++j) {
    Vec r(t.rank(), 0);
    r[j] = t.order(j);
    rel.push_back(r);
  }
  auto [q, p] = ZnModule::presented(n, t.rank(), rel);
  return {q, ZnMap(t, q, p.to_canon), p.from_canon};
}

/// Solver for x with f(x) = y, reused across right-hand sides.
class PreimageSolver {
 public:
  PreimageSolver() = default;
  explicit PreimageSolver(const ZnMap& f) : source_(f.source()) {
    ZnMatrix stacked = f.matrix();
    const ZnModule& t = f.target();
    for (std::size_t j = 0; j < t.rank(); ++j) {
      Vec r(t.rank(), 0);
      r[j] = t.order(j);
      stacked.append_row(r);
    }
    solver_ = LeftSolver(stacked);
  }

  std::optional<Vec> solve(const Vec& y) const {
    auto x = solver_.solve(y);
    if (!x) return std::nullopt;
    Vec head(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(source_.rank()));
    return source_.reduce(std::move(head));
  }

 private:
  ZnModule source_;
  LeftSolver solver_;
};

inline std::optional<Vec> preimage(const ZnMap& f, const Vec& y) { return PreimageSolver(f).solve(y); }

inline bool is_injective(const ZnMap& f) { return kernel(f).module.is_zero(); }
inline bool is_surjective(const ZnMap& f) { return cokernel(f).module.is_zero(); }

/// Canonical direct sum with injections and projections.
struct DirectSum {
  ZnModule module;
  std::vector<ZnMatrix> injections;   // summand_k -> sum
  std::vector<ZnMatrix> projections;  // sum -> summand_k
};

inline DirectSum direct_sum(std::int64_t n, const std::vector<ZnModule>& parts) {
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> offset;
  for (const auto& p : parts) {
    offset.push_back(orders.size());
    orders.insert(orders.end(), p.orders().begin(), p.orders().end());
  }
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    Vec r(orders.size(), 0);
    r[i] = orders[i];
    rel.push_back(r);
  }
  auto [sum, pr] = ZnModule::presented(n, orders.size(), rel);
  DirectSum out{sum, {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < parts[k].rank(); ++i) idx.push_back(offset[k] + i);
    out.injections.push_back(pr.to_canon.select_rows(idx));
    out.projections.push_back(pr.from_canon.select_columns(idx));
  }
  return out;
}

/// Hom_{Z/n}(M, N) as a submodule of N^{rank M}; row i*rank(N)+j of a
/// generator is the coefficient of target generator j in the image of e_i.
inline Submodule hom_module(const ZnModule& m, const ZnModule& n_mod) {
  const std::int64_t n = m.modulus();
  std::vector<std::int64_t> amb;
  for (std::size_t i = 0; i < m.rank(); ++i)
    amb.insert(amb.end(), n_mod.orders().begin(), n_mod.orders().end());
  ZnModule ambient(n, amb);
  // well-definedness: d_i * f(e_i) = 0
  ZnMatrix phi(n, amb.size(), amb.size());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < n_mod.rank(); ++j) {
      const std::size_t k = i * n_mod.rank() + j;
      phi.set(k, k, m.order(i));
    }
  return kernel(ZnMap(ambient, ambient, phi));
}

/// Evaluate an element of hom_module(m, n) as a map.
inline ZnMap hom_evaluate(const Submodule& hom, const ZnModule& m, const ZnModule& n_mod, const Vec& u) {
  Vec flat = hom.inclusion.apply(u);
  ZnMatrix a(m.modulus(), m.rank(), n_mod.rank());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < n_mod.rank(); ++j) a.set(i, j, flat[i * n_mod.rank() + j]);
  return ZnMap(m, n_mod, a);
}

/// M (x)_{Z/n} N with the locator of pure tensors of basis elements:
/// pure[i * rank(N) + j] is the image of e_i (x) e_j.
struct ZnTensor {
  ZnModule module;
  ZnMatrix pure;
};

inline ZnTensor tensor_zn(const ZnModule& m, const ZnModule& n_mod) {
  const std::int64_t n = m.modulus();
  const std::size_t raw = m.rank() * n_mod.rank();
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < n_mod.rank(); ++j) {
      Vec r(raw, 0);
      r[i * n_mod.rank() + j] = std::gcd(m.order(i), n_mod.order(j));
      rel.push_back(r);
    }
  auto [t, p] = ZnModule::presented(n, raw, rel);
  return {t, p.to_canon};
}

}  // namespace grc
