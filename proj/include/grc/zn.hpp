#pragma once

// Exact linear algebra over Z/nZ: Howell normal form, left kernels,
// linear solving and Smith-style presentation canonicalization.
//
// Vectors are row vectors; a matrix A acts on the right, x -> x * A.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace grc {

using Vec = std::vector<std::int64_t>;

class ZnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return mod(static_cast<std::int64_t>(static_cast<__int128>(a) * b % n), n);
}

inline std::int64_t addmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return mod(a + b, n);
}

/// Extended gcd on non-negative integers: returns (g, s, t) with s*a + t*b = g.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a,
                                                                   std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m, requires gcd(a, m) = 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  auto [g, s, t] = ext_gcd(mod(a, m), m);
  (void)t;
  if (g != 1) throw ZnError("inverse_mod: not a unit");
  return mod(s, m);
}

/// A unit u of Z/n with a*u = gcd(a, n) mod n.
inline std::int64_t unit_normalizer(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  if (a == 0) return 1;
  const std::int64_t g = std::gcd(a, n);
  const std::int64_t nn = n / g;
  const std::int64_t base = inverse_mod(a / g, nn);
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t u = base + k * nn;
    if (u >= n && n > 1) break;
    if (std::gcd(u, n) == 1) return mod(u, n);
  }
  throw ZnError("unit_normalizer: no unit found");
}

inline void check_modulus(std::int64_t n) {
  if (n < 2) throw ZnError("modulus must be at least 2, got " + std::to_string(n));
  if (n > kMaxModulus) throw ZnError("modulus exceeds 2^31: " + std::to_string(n));
}

class ZnMatrix {
 public:
  ZnMatrix() = default;
  ZnMatrix(std::int64_t n, std::size_t rows, std::size_t cols)
      : n_(n), cols_(cols), rows_(rows, Vec(cols, 0)) {
    check_modulus(n);
  }

  static ZnMatrix from_rows(std::int64_t n, std::size_t cols, const std::vector<Vec>& rows) {
    ZnMatrix m(n, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  static ZnMatrix identity(std::int64_t n, std::size_t k) {
    ZnMatrix m(n, k, k);
    for (std::size_t i = 0; i < k; ++i) m.rows_[i][i] = mod(1, n);
    return m;
  }

  std::int64_t modulus() const { return n_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { rows_[i][j] = mod(v, n_); }
  const Vec& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Vec>& row_list() const { return rows_; }
  std::vector<Vec>& mutable_rows() { return rows_; }

  void append_row(const Vec& r) {
    if (r.size() != cols_) throw ZnError("append_row: width mismatch");
    Vec red(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) red[j] = mod(r[j], n_);
    rows_.push_back(std::move(red));
  }

  bool is_zero() const {
    for (const auto& r : rows_)
      for (auto v : r)
        if (v != 0) return false;
    return true;
  }

  /// x * A
  Vec left_apply(const Vec& x) const {
    if (x.size() != rows_.size()) throw ZnError("left_apply: dimension mismatch");
    Vec out(cols_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::int64_t xi = mod(x[i], n_);
      if (xi == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (rows_[i][j] != 0) out[j] = addmod(out[j], mulmod(xi, rows_[i][j], n_), n_);
    }
    return out;
  }

  ZnMatrix operator*(const ZnMatrix& b) const {
    if (cols_ != b.rows()) throw ZnError("matrix product: dimension mismatch");
    ZnMatrix out(n_, rows(), b.cols());
    for (std::size_t i = 0; i < rows(); ++i) out.rows_[i] = b.left_apply(rows_[i]);
    return out;
  }

  ZnMatrix transpose() const {
    ZnMatrix t(n_, cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.rows_[j][i] = rows_[i][j];
    return t;
  }

  /// Columns scaled by the given factors.
  ZnMatrix scale_columns(const Vec& factors) const {
    ZnMatrix out = *this;
    for (auto& r : out.rows_)
      for (std::size_t j = 0; j < cols_; ++j) r[j] = mulmod(r[j], mod(factors[j], n_), n_);
    return out;
  }

  ZnMatrix hstack(const ZnMatrix& b) const {
    if (rows() != b.rows()) throw ZnError("hstack: row mismatch");
    ZnMatrix out(n_, rows(), cols_ + b.cols());
    for (std::size_t i = 0; i < rows(); ++i) {
      std::copy(rows_[i].begin(), rows_[i].end(), out.rows_[i].begin());
      std::copy(b.rows_[i].begin(), b.rows_[i].end(), out.rows_[i].begin() + cols_);
    }
    return out;
  }

  ZnMatrix vstack(const ZnMatrix& b) const {
    if (cols_ != b.cols()) throw ZnError("vstack: column mismatch");
    ZnMatrix out = *this;
    for (const auto& r : b.rows_) out.rows_.push_back(r);
    return out;
  }

  ZnMatrix select_columns(const std::vector<std::size_t>& idx) const {
    ZnMatrix out(n_, rows(), idx.size());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out.rows_[i][k] = rows_[i][idx[k]];
    return out;
  }

  ZnMatrix select_rows(const std::vector<std::size_t>& idx) const {
    ZnMatrix out(n_, 0, cols_);
    for (auto i : idx) out.rows_.push_back(rows_[i]);
    return out;
  }

  bool operator==(const ZnMatrix&) const = default;

 private:
  friend ZnMatrix howell(ZnMatrix);
  std::int64_t n_ = 2;
  std::size_t cols_ = 0;
  std::vector<Vec> rows_;
};

namespace detail {

inline void row_axpy(Vec& dst, const Vec& src, std::int64_t c, std::int64_t n) {
  c = mod(c, n);
  if (c == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] = addmod(dst[j], mulmod(c, src[j], n), n);
}

inline void row_scale(Vec& r, std::int64_t c, std::int64_t n) {
  for (auto& v : r) v = mulmod(v, mod(c, n), n);
}

inline bool row_is_zero(const Vec& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
}

/// Replace (a, b) by the unimodular combination that puts gcd(a_c, b_c) in a and 0 in b.
inline void bezout_rows(Vec& a, Vec& b, std::size_t c, std::int64_t n) {
  auto [g, s, t] = ext_gcd(a[c], b[c]);
  const std::int64_t ag = a[c] / g, bg = b[c] / g;
  Vec na(a.size()), nb(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    na[j] = addmod(mulmod(mod(s, n), a[j], n), mulmod(mod(t, n), b[j], n), n);
    nb[j] = addmod(mulmod(mod(bg, n), a[j], n), mulmod(mod(-ag, n), b[j], n), n);
  }
  a = std::move(na);
  b = std::move(nb);
}

}  // namespace detail

/// Howell normal form of the row span of A. Zero rows are dropped; the
/// result has at most max(rows, cols) rows and is unique for a given span.
inline ZnMatrix howell(ZnMatrix a) {
  const std::int64_t n = a.n_;
  auto& rows = a.rows_;
  const std::size_t cols = a.cols_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      if (i == r) continue;
      if (rows[r][c] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      detail::bezout_rows(rows[r], rows[i], c, n);
    }
    if (r >= rows.size() || rows[r][c] == 0) continue;
    detail::row_scale(rows[r], unit_normalizer(rows[r][c], n), n);
    const std::int64_t p = rows[r][c];
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t q = rows[i][c] / p;
      if (q != 0) detail::row_axpy(rows[i], rows[r], -q, n);
    }
    Vec extra = rows[r];
    detail::row_scale(extra, n / p, n);
    if (!detail::row_is_zero(extra)) rows.push_back(std::move(extra));
    ++r;
  }
  rows.resize(r);
  return a;
}

/// Leading column of a nonzero row, or cols if the row is zero.
inline std::size_t leading_column(const Vec& r) {
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) return j;
  return r.size();
}

/// Reduce v modulo the row span of a Howell form; the result is the
/// lexicographically smallest element of the coset v + span(H).
inline Vec howell_reduce(const ZnMatrix& h, Vec v) {
  const std::int64_t n = h.modulus();
  for (auto& x : v) x = mod(x, n);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const std::size_t c = leading_column(h.row(i));
    if (c == h.cols()) continue;
    const std::int64_t q = v[c] / h.at(i, c);
    if (q != 0) detail::row_axpy(v, h.row(i), -q, n);
  }
  return v;
}

/// Basis rows (Howell form) of { x : x * A = 0 }.
inline ZnMatrix left_kernel(const ZnMatrix& a) {
  const std::int64_t n = a.modulus();
  const std::size_t m = a.rows(), c = a.cols();
  ZnMatrix aug = a.hstack(ZnMatrix::identity(n, m));
  ZnMatrix h = howell(aug);
  ZnMatrix out(n, 0, m);
  for (const auto& r : h.row_list()) {
    if (leading_column(r) < c) continue;
    out.append_row(Vec(r.begin() + static_cast<std::ptrdiff_t>(c), r.end()));
  }
  return howell(out);
}

/// Precomputed solver for x * M = b over Z/n.
class LeftSolver {
 public:
  LeftSolver() = default;
  explicit LeftSolver(const ZnMatrix& m)
      : n_(m.modulus()), rows_(m.rows()), cols_(m.cols()),
        aug_(howell(m.hstack(ZnMatrix::identity(m.modulus(), m.rows())))),
        kernel_(left_kernel(m)) {}

  std::optional<Vec> solve(const Vec& b) const {
    if (b.size() != cols_) throw ZnError("solve: right-hand side has wrong length");
    Vec v(cols_ + rows_, 0);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = mod(b[j], n_);
    for (std::size_t i = 0; i < aug_.rows(); ++i) {
      const std::size_t c = leading_column(aug_.row(i));
      if (c >= cols_) break;
      const std::int64_t p = aug_.at(i, c);
      if (v[c] % p != 0) return std::nullopt;
      const std::int64_t q = v[c] / p;
      if (q != 0) detail::row_axpy(v, aug_.row(i), -q, n_);
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) return std::nullopt;
    Vec x(rows_);
    for (std::size_t i = 0; i < rows_; ++i) x[i] = mod(-v[cols_ + i], n_);
    return howell_reduce(kernel_, std::move(x));
  }

  const ZnMatrix& kernel() const { return kernel_; }

 private:
  std::int64_t n_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  ZnMatrix aug_;
  ZnMatrix kernel_;
};

/// Some x with x * M = b (lexicographically minimal), or nullopt.
inline std::optional<Vec> solve_left(const ZnMatrix& m, const Vec& b) {
  return LeftSolver(m).solve(b);
}

/// Column convention: some x with A x = b (lexicographically minimal), or nullopt.
inline std::optional<Vec> solve(const ZnMatrix& a, const Vec& b) {
  return solve_left(a.transpose(), b);
}

/// Result of canonicalizing (Z/n)^gens / span(relations) into invariant-factor form.
///
/// orders are ascending and each divides the next and n; a generator of
/// order n is free. to_canon maps old coordinates to new ones and
/// from_canon maps back (both as right-acting matrices).
struct Presentation {
  std::vector<std::int64_t> orders;
  ZnMatrix to_canon;
  ZnMatrix from_canon;
};

inline Presentation present(std::int64_t n, std::size_t gens, const std::vector<Vec>& relations) {
  check_modulus(n);
  std::vector<Vec> rel;
  rel.reserve(relations.size());
  for (const auto& r : relations) {
    if (r.size() != gens) throw ZnError("present: relation width mismatch");
    Vec red(gens);
    for (std::size_t j = 0; j < gens; ++j) red[j] = mod(r[j], n);
    if (!detail::row_is_zero(red)) rel.push_back(std::move(red));
  }
  // the result depends only on the span of the relations
  if (!rel.empty()) {
    std::vector<Vec> canon;
    const ZnMatrix hf = howell(ZnMatrix::from_rows(n, gens, rel));
    for (const auto& r : hf.row_list())
      if (!detail::row_is_zero(r)) canon.push_back(r);
    rel = std::move(canon);
  }
  ZnMatrix q = ZnMatrix::identity(n, gens);
  ZnMatrix qinv = ZnMatrix::identity(n, gens);
  // Column operations are mirrored on q (right) and qinv (left, inverse).
  auto& qr = q.mutable_rows();
  auto& qir = qinv.mutable_rows();

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& r : rel) std::swap(r[a], r[b]);
    for (auto& r : qr) std::swap(r[a], r[b]);
    std::swap(qir[a], qir[b]);
  };
  // col_j -= c * col_t
  auto col_axpy = [&](std::size_t t, std::size_t j, std::int64_t c) {
    c = mod(c, n);
    if (c == 0) return;
    for (auto& r : rel) r[j] = addmod(r[j], mulmod(n - c, r[t], n), n);
    for (auto& r : qr) r[j] = addmod(r[j], mulmod(n - c, r[t], n), n);
    detail::row_axpy(qir[t], qir[j], c, n);
  };
  auto col_bezout = [&](std::size_t t, std::size_t j, std::int64_t p, std::int64_t b) {
    auto [g, s, tt] = ext_gcd(p, b);
    const std::int64_t pg = p / g, bg = b / g;
    auto apply = [&](Vec& r) {
      const std::int64_t x = r[t], y = r[j];
      r[t] = addmod(mulmod(mod(s, n), x, n), mulmod(mod(tt, n), y, n), n);
      r[j] = addmod(mulmod(mod(-bg, n), x, n), mulmod(mod(pg, n), y, n), n);
    };
    for (auto& r : rel) apply(r);
    for (auto& r : qr) apply(r);
    Vec rt = qir[t], rj = qir[j];
    for (std::size_t k = 0; k < gens; ++k) {
      qir[t][k] = addmod(mulmod(mod(pg, n), rt[k], n), mulmod(mod(bg, n), rj[k], n), n);
      qir[j][k] = addmod(mulmod(mod(-tt, n), rt[k], n), mulmod(mod(s, n), rj[k], n), n);
    }
  };

  std::vector<std::int64_t> pivots;
  for (std::size_t t = 0; t < gens; ++t) {
    // choose entry of minimal gcd with n in the trailing block
    std::size_t bi = rel.size(), bj = gens;
    std::int64_t best = n + 1;
    for (std::size_t i = t; i < rel.size(); ++i)
      for (std::size_t j = t; j < gens; ++j)
        if (rel[i][j] != 0) {
          const std::int64_t g = std::gcd(rel[i][j], n);
          if (g < best) {
            best = g;
            bi = i;
            bj = j;
          }
        }
    if (bi == rel.size()) break;
    std::swap(rel[t], rel[bi]);
    swap_cols(t, bj);
    for (;;) {
      for (std::size_t i = t + 1; i < rel.size(); ++i)
        if (rel[i][t] != 0) detail::bezout_rows(rel[t], rel[i], t, n);
      detail::row_scale(rel[t], unit_normalizer(rel[t][t], n), n);
      bool col_dirty = false;
      for (std::size_t j = t + 1; j < gens; ++j) {
        const std::int64_t p = rel[t][t], b = rel[t][j];
        if (b == 0) continue;
        if (b % p == 0) {
          col_axpy(t, j, b / p);
        } else {
          col_bezout(t, j, p, b);
          col_dirty = true;
        }
      }
      if (col_dirty) {
        bool below = false;
        for (std::size_t i = t + 1; i < rel.size(); ++i) below = below || rel[i][t] != 0;
        if (below || rel[t][t] != std::gcd(rel[t][t], n)) continue;
        bool right = false;
        for (std::size_t j = t + 1; j < gens; ++j) right = right || rel[t][j] != 0;
        if (right) continue;
      }
      const std::int64_t p = rel[t][t];
      std::size_t bad = rel.size();
      for (std::size_t i = t + 1; i < rel.size() && bad == rel.size(); ++i)
        for (std::size_t j = t + 1; j < gens; ++j)
          if (rel[i][j] % p != 0) {
            bad = i;
            break;
          }
      if (bad == rel.size()) break;
      detail::row_axpy(rel[t], rel[bad], 1, n);
    }
    pivots.push_back(rel[t][t]);
    // drop rows that became zero to keep the working set small
    std::vector<Vec> keep(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(t + 1));
    for (std::size_t i = t + 1; i < rel.size(); ++i)
      if (!detail::row_is_zero(rel[i])) keep.push_back(std::move(rel[i]));
    rel = std::move(keep);
  }

  Presentation out;
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < gens; ++t) {
    const std::int64_t order = t < pivots.size() ? pivots[t] : n;
    if (order == 1) continue;
    kept.push_back(t);
    out.orders.push_back(order);
  }
  out.to_canon = q.select_columns(kept);
  out.from_canon = qinv.select_rows(kept);
  return out;
}

}  // namespace grc
