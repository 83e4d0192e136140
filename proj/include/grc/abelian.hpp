#pragma once

// Finitely generated abelian grading groups and epimorphisms between them.
//
// A group is a list of moduli m_1..m_k; m_i = 0 is a factor Z and m_i >= 2 a
// factor Z/m_i. Elements are integer vectors reduced coordinatewise.

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grc/zn.hpp"

namespace grc {

using Degree = Vec;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotWellDefined : public GroupError {
 public:
  using GroupError::GroupError;
};

class NotSurjective : public GroupError {
 public:
  using GroupError::GroupError;
};

class GroupMismatch : public GroupError {
 public:
  using GroupError::GroupError;
};

inline std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Integer matrix with column transforms: rows * Q = D (after row operations),
/// Q * Qinv = I.
struct IntSmith {
  std::vector<std::int64_t> diagonal;  // length min(rows, cols); trailing zeros allowed
  std::vector<Vec> q;
  std::vector<Vec> qinv;
};

namespace detail {

inline std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw GroupError("integer overflow in Smith form");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

inline IntSmith int_smith(std::vector<Vec> a, std::size_t cols) {
  const std::size_t rows = a.size();
  IntSmith out;
  out.q.assign(cols, Vec(cols, 0));
  out.qinv.assign(cols, Vec(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.q[i][i] = out.qinv[i][i] = 1;
  auto& q = out.q;
  auto& qinv = out.qinv;

  auto row_sub = [&](std::size_t dst, std::size_t src, std::int64_t c) {
    for (std::size_t j = 0; j < cols; ++j)
      a[dst][j] = detail::checked(static_cast<__int128>(a[dst][j]) - static_cast<__int128>(c) * a[src][j]);
  };
  // col_j -= c * col_t, mirrored on q and qinv
  auto col_sub = [&](std::size_t t, std::size_t j, std::int64_t c) {
    for (std::size_t i = 0; i < rows; ++i)
      a[i][j] = detail::checked(static_cast<__int128>(a[i][j]) - static_cast<__int128>(c) * a[i][t]);
    for (std::size_t i = 0; i < cols; ++i)
      q[i][j] = detail::checked(static_cast<__int128>(q[i][j]) - static_cast<__int128>(c) * q[i][t]);
    for (std::size_t k = 0; k < cols; ++k)
      qinv[t][k] = detail::checked(static_cast<__int128>(qinv[t][k]) + static_cast<__int128>(c) * qinv[j][k]);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& r : a) std::swap(r[x], r[y]);
    for (auto& r : q) std::swap(r[x], r[y]);
    std::swap(qinv[x], qinv[y]);
  };
  auto col_negate = [&](std::size_t t) {
    for (auto& r : a) r[t] = -r[t];
    for (auto& r : q) r[t] = -r[t];
    for (auto& v : qinv[t]) v = -v;
  };

  const std::size_t lim = std::min(rows, cols);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (bi == rows) break;
      std::swap(a[t], a[bi]);
      col_swap(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        row_sub(i, t, a[i][t] / a[t][t]);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        col_sub(t, j, a[t][j] / a[t][t]);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    if (a[t][t] < 0) col_negate(t);
  }
  out.diagonal.resize(lim);
  for (std::size_t t = 0; t < lim; ++t) out.diagonal[t] = a[t][t];
  return out;
}

class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  explicit FgAbelianGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    for (auto m : moduli_)
      if (m == 1 || m < 0) throw GroupError("invalid group modulus " + std::to_string(m));
  }

  /// Normalize Z^gens / span(relations) to a product of cyclic groups.
  /// Also returns the coordinate change old -> new (rows = old generators).
  static std::pair<FgAbelianGroup, std::vector<Vec>> from_presentation(
      std::size_t gens, const std::vector<Vec>& relations) {
    IntSmith s = int_smith(relations, gens);
    std::vector<std::int64_t> moduli;
    std::vector<std::size_t> kept;
    for (std::size_t t = 0; t < gens; ++t) {
      const std::int64_t d = t < s.diagonal.size() ? s.diagonal[t] : 0;
      if (d == 1) continue;
      kept.push_back(t);
      moduli.push_back(d);
    }
    std::vector<Vec> to(gens, Vec(kept.size(), 0));
    for (std::size_t i = 0; i < gens; ++i)
      for (std::size_t k = 0; k < kept.size(); ++k) to[i][k] = s.q[i][kept[k]];
    FgAbelianGroup g(std::move(moduli));
    for (auto& r : to) r = g.reduce(r);
    return {g, to};
  }

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  bool is_trivial() const { return moduli_.empty(); }
  std::size_t free_rank() const {
    std::size_t r = 0;
    for (auto m : moduli_) r += m == 0;
    return r;
  }
  bool is_finite() const { return free_rank() == 0; }

  Degree zero() const { return Degree(moduli_.size(), 0); }

  Degree reduce(Degree x) const {
    if (x.size() != moduli_.size())
      throw GroupError("element " + format_vec(x) + " has wrong length for group");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (moduli_[i] != 0) x[i] = mod(x[i], moduli_[i]);
    return x;
  }

  Degree add(const Degree& x, const Degree& y) const {
    Degree z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return reduce(std::move(z));
  }

  Degree negate(const Degree& x) const {
    Degree z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    return reduce(std::move(z));
  }

  Degree sub(const Degree& x, const Degree& y) const { return add(x, negate(y)); }

  /// All elements, for finite groups only.
  std::vector<Degree> elements() const {
    if (!is_finite()) throw GroupError("cannot enumerate an infinite group");
    std::vector<Degree> out{zero()};
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      std::vector<Degree> next;
      for (const auto& e : out)
        for (std::int64_t v = 0; v < moduli_[i]; ++v) {
          Degree f = e;
          f[i] = v;
          next.push_back(std::move(f));
        }
      out = std::move(next);
    }
    return out;
  }

  bool operator==(const FgAbelianGroup&) const = default;

 private:
  std::vector<std::int64_t> moduli_;
};

inline FgAbelianGroup make_group(std::vector<std::int64_t> moduli) {
  return FgAbelianGroup(std::move(moduli));
}

class GroupEpi {
 public:
  GroupEpi() = default;
  /// matrix[i] is the image of source generator i.
  GroupEpi(FgAbelianGroup source, FgAbelianGroup target, std::vector<Vec> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != source_.rank())
      throw GroupError("epimorphism matrix needs one row per source generator");
    for (auto& r : matrix_) r = target_.reduce(r);
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
      const std::int64_t m = source_.moduli()[i];
      if (m == 0) continue;
      Vec scaled(matrix_[i].size());
      for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = m * matrix_[i][j];
      if (target_.reduce(scaled) != target_.zero())
        throw NotWellDefined("generator " + std::to_string(i) + " of order " + std::to_string(m) +
                             " maps to " + format_vec(matrix_[i]) + " of incompatible order");
    }
    // image lattice plus target relations must be all of Z^k
    const std::size_t k = target_.rank();
    std::vector<Vec> lattice = matrix_;
    for (std::size_t j = 0; j < k; ++j)
      if (target_.moduli()[j] != 0) {
        Vec r(k, 0);
        r[j] = target_.moduli()[j];
        lattice.push_back(r);
      }
    IntSmith s = int_smith(lattice, k);
    for (std::size_t j = 0; j < k; ++j)
      if (j >= s.diagonal.size() || s.diagonal[j] != 1)
        throw NotSurjective("map is not surjective onto the target group");
  }

  static GroupEpi identity(const FgAbelianGroup& g) {
    std::vector<Vec> m(g.rank(), Vec(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = 1;
    return GroupEpi(g, g, m);
  }

  const FgAbelianGroup& source() const { return source_; }
  const FgAbelianGroup& target() const { return target_; }
  const std::vector<Vec>& matrix() const { return matrix_; }

  Degree apply(const Degree& x) const {
    Degree y = target_.zero();
    const Degree xs = source_.reduce(x);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) y[j] += xs[i] * matrix_[i][j];
    return target_.reduce(y);
  }

  bool kernel_is_finite() const { return source_.free_rank() == target_.free_rank(); }

  bool operator==(const GroupEpi&) const = default;

 private:
  FgAbelianGroup source_, target_;
  std::vector<Vec> matrix_;
};

inline GroupEpi make_epi(FgAbelianGroup source, FgAbelianGroup target, std::vector<Vec> matrix) {
  return GroupEpi(std::move(source), std::move(target), std::move(matrix));
}

}  // namespace grc
