#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "grc/znmodule.hpp"

using namespace grc;

namespace {

// Brute-force row span of a matrix over Z/n.
std::set<Vec> span_of(const ZnMatrix& a) {
  const std::int64_t n = a.modulus();
  std::set<Vec> seen{Vec(a.cols(), 0)};
  std::vector<Vec> frontier{Vec(a.cols(), 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& r : a.row_list()) {
        Vec w(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) w[j] = mod(v[j] + r[j], n);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<Vec> all_vectors(std::int64_t n, std::size_t len) {
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (std::int64_t x = 0; x < n; ++x) {
        Vec w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

ZnMatrix random_matrix(std::mt19937_64& rng, std::int64_t n, std::size_t r, std::size_t c) {
  ZnMatrix a(n, r, c);
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a.set(i, j, d(rng));
  return a;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

ZnModule random_module(std::mt19937_64& rng, std::int64_t n, std::size_t rank) {
  auto ds = divisors(n);
  std::uniform_int_distribution<std::size_t> pick(1, ds.size() - 1);
  std::vector<std::int64_t> o;
  for (std::size_t i = 0; i < rank; ++i) o.push_back(ds[pick(rng)]);
  return ZnModule(n, o);
}

ZnMap random_map(std::mt19937_64& rng, const ZnModule& s, const ZnModule& t) {
  const std::int64_t n = s.modulus();
  ZnMatrix a(n, s.rank(), t.rank());
  for (std::size_t i = 0; i < s.rank(); ++i)
    for (std::size_t j = 0; j < t.rank(); ++j) {
      // values v with d_i v = 0 mod d_j are the multiples of d_j / gcd(d_i, d_j)
      const std::int64_t step = t.order(j) / std::gcd(s.order(i), t.order(j));
      std::uniform_int_distribution<std::int64_t> d(0, t.order(j) / step - 1);
      a.set(i, j, step * d(rng));
    }
  return ZnMap(s, t, a);
}

const std::int64_t kModuli[] = {2, 3, 4, 6, 8};

}  // namespace

TEST(Howell, examples) {
  EXPECT_EQ(howell(ZnMatrix::from_rows(4, 1, {{2}})), ZnMatrix::from_rows(4, 1, {{2}}));
  EXPECT_EQ(howell(ZnMatrix::from_rows(4, 1, {{2}, {2}})), ZnMatrix::from_rows(4, 1, {{2}}));
  EXPECT_EQ(howell(ZnMatrix::from_rows(6, 1, {{2}, {3}})), ZnMatrix::from_rows(6, 1, {{1}}));
}

TEST(Howell, canonical_on_all_2x2) {
  for (std::int64_t n : kModuli) {
    std::map<std::set<Vec>, ZnMatrix> by_span;
    for (const auto& entries : all_vectors(n, 4)) {
      ZnMatrix a = ZnMatrix::from_rows(n, 2, {{entries[0], entries[1]}, {entries[2], entries[3]}});
      ZnMatrix h = howell(a);
      auto s = span_of(a);
      ASSERT_EQ(span_of(h.rows() ? h : ZnMatrix(n, 0, 2)), s);
      auto [it, fresh] = by_span.emplace(s, h);
      if (!fresh) ASSERT_EQ(it->second, h) << "n=" << n;
    }
  }
}

TEST(Howell, canonical_under_row_operations) {
  std::mt19937_64 rng(7);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      ZnMatrix a = random_matrix(rng, n, r, c);
      // B: random combinations of rows of A appended, then rows of A shuffled
      ZnMatrix b = random_matrix(rng, n, 2, r) * a;
      std::vector<std::size_t> perm(r);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      b = b.vstack(a.select_rows(perm));
      ASSERT_EQ(howell(a), howell(b));
      ASSERT_EQ(span_of(howell(a)), span_of(a));
    }
}

TEST(Solve, examples) {
  auto a = ZnMatrix::from_rows(4, 1, {{2}});
  EXPECT_EQ(solve(a, {2}), (Vec{1}));
  EXPECT_FALSE(solve(a, {1}).has_value());
  auto id = ZnMatrix::identity(2, 3);
  EXPECT_EQ(solve(id, {1, 0, 1}), (Vec{1, 0, 1}));
}

TEST(Solve, sound_complete_and_minimal_by_exhaustion) {
  std::mt19937_64 rng(11);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
      ZnMatrix a = random_matrix(rng, n, r, c);
      auto xs = all_vectors(n, c);
      for (const auto& b : all_vectors(n, r)) {
        std::optional<Vec> best;
        for (const auto& x : xs) {
          Vec ax = a.transpose().left_apply(x);
          if (ax == b) {
            best = x;
            break;
          }
        }
        auto got = solve(a, b);
        ASSERT_EQ(got.has_value(), best.has_value());
        if (got) ASSERT_EQ(*got, *best);
      }
    }
}

TEST(LeftKernel, matches_enumeration) {
  std::mt19937_64 rng(13);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
      ZnMatrix a = random_matrix(rng, n, r, c);
      std::set<Vec> brute;
      for (const auto& x : all_vectors(n, r))
        if (a.left_apply(x) == Vec(c, 0)) brute.insert(x);
      ZnMatrix k = left_kernel(a);
      ASSERT_EQ(span_of(k.rows() ? k : ZnMatrix(n, 0, r)), brute);
    }
}

TEST(Present, cardinality_and_transforms) {
  std::mt19937_64 rng(17);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t g = 1 + rng() % 4, r = rng() % 4;
      ZnMatrix rel = random_matrix(rng, n, r, g);
      auto [m, p] = ZnModule::presented(n, g, rel.row_list());
      ASSERT_TRUE(m.is_canonical());
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < g; ++i) total *= static_cast<std::uint64_t>(n);
      ASSERT_EQ(m.cardinality() * span_of(rel.rows() ? rel : ZnMatrix(n, 0, g)).size(), total);
      // relations vanish, and from_canon is a section of to_canon
      for (const auto& row : rel.row_list()) ASSERT_TRUE(m.is_zero_element(p.to_canon.left_apply(row)));
      for (std::size_t i = 0; i < m.rank(); ++i) {
        Vec back = p.to_canon.left_apply(p.from_canon.row(i));
        ASSERT_EQ(m.reduce(back), m.basis(i));
      }
    }
}

TEST(ZnModuleMaps, kernel_image_cardinality_by_exhaustion) {
  std::mt19937_64 rng(19);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 60; ++trial) {
      ZnModule s = random_module(rng, n, 1 + rng() % 3);
      ZnModule t = random_module(rng, n, 1 + rng() % 3);
      ZnMap f = random_map(rng, s, t);
      std::set<Vec> img;
      std::uint64_t ker = 0;
      for (const auto& x : s.elements()) {
        Vec y = f.apply(x);
        img.insert(y);
        ker += t.is_zero_element(y);
      }
      auto k = kernel(f);
      auto im = image(f);
      ASSERT_EQ(k.module.cardinality(), ker);
      ASSERT_EQ(im.module.cardinality(), img.size());
      ASSERT_EQ(k.module.cardinality() * im.module.cardinality(), s.cardinality());
      ASSERT_EQ(cokernel(f).module.cardinality() * img.size(), t.cardinality());
      for (std::size_t i = 0; i < k.module.rank(); ++i)
        ASSERT_TRUE(t.is_zero_element(f.apply(k.inclusion.apply(k.module.basis(i)))));
      for (const auto& y : t.elements()) {
        auto x = preimage(f, y);
        ASSERT_EQ(x.has_value(), img.count(y) == 1);
        if (x) ASSERT_EQ(f.apply(*x), y);
      }
    }
}

TEST(ZnModuleMaps, kernel_examples) {
  ZnModule z4(4, {4});
  EXPECT_EQ(kernel(ZnMap::zero(z4, z4)).module, z4);
  auto k = kernel(ZnMap(z4, z4, ZnMatrix::from_rows(4, 1, {{2}})));
  EXPECT_EQ(k.module, ZnModule(4, {2}));
  EXPECT_EQ(k.inclusion.apply({1}), (Vec{2}));
  EXPECT_TRUE(kernel(ZnMap::identity(z4)).module.is_zero());
}

TEST(ZnModuleMaps, ill_defined_rejected) {
  EXPECT_THROW(ZnMap(ZnModule(4, {2}), ZnModule(4, {4}), ZnMatrix::from_rows(4, 1, {{1}})),
               IllDefinedMap);
}

TEST(HomModule, examples_and_counts) {
  EXPECT_EQ(hom_module(ZnModule(4, {2}), ZnModule(4, {4})).module, ZnModule(4, {2}));
  EXPECT_EQ(hom_module(ZnModule(4, {4}), ZnModule(4, {4})).module, ZnModule(4, {4}));
  EXPECT_TRUE(hom_module(ZnModule(4, {2}), ZnModule::zero(4)).module.is_zero());
  auto h = hom_module(ZnModule(4, {2}), ZnModule(4, {4}));
  EXPECT_EQ(hom_evaluate(h, ZnModule(4, {2}), ZnModule(4, {4}), {1}).apply({1}), (Vec{2}));

  std::mt19937_64 rng(23);
  for (std::int64_t n : kModuli)
    for (int trial = 0; trial < 30; ++trial) {
      ZnModule m = random_module(rng, n, 1 + rng() % 2);
      ZnModule t = random_module(rng, n, 1 + rng() % 2);
      std::uint64_t count = 0;
      for (const auto& flat : all_vectors(n, m.rank() * t.rank())) {
        bool ok = true;
        for (std::size_t i = 0; i < m.rank() && ok; ++i)
          for (std::size_t j = 0; j < t.rank() && ok; ++j) {
            const std::int64_t v = flat[i * t.rank() + j];
            ok = v < t.order(j) && mulmod(m.order(i), v, n) % t.order(j) == 0;
          }
        count += ok;
      }
      ASSERT_EQ(hom_module(m, t).module.cardinality(), count);
    }
}

TEST(TensorZn, examples) {
  EXPECT_EQ(tensor_zn(ZnModule(4, {2}), ZnModule(4, {2})).module, ZnModule(4, {2}));
  EXPECT_EQ(tensor_zn(ZnModule(4, {4}), ZnModule(4, {4})).module, ZnModule(4, {4}));
  EXPECT_TRUE(tensor_zn(ZnModule(4, {2}), ZnModule::zero(4)).module.is_zero());
}

TEST(DirectSum, injections_and_projections) {
  auto ds = direct_sum(4, {ZnModule(4, {2}), ZnModule(4, {2})});
  EXPECT_EQ(ds.module.cardinality(), 4u);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      ZnMatrix c = ds.injections[a] * ds.projections[b];
      ZnModule part(4, {2});
      EXPECT_EQ(part.reduce(c.row(0)), a == b ? Vec{1} : Vec{0});
    }
  EXPECT_EQ(direct_sum(4, {ZnModule(4, {2, 4}), ZnModule::zero(4)}).module, ZnModule(4, {2, 4}));
}

TEST(Modulus, bounds) {
  EXPECT_THROW(ZnMatrix(1, 1, 1), ZnError);
  EXPECT_THROW(ZnMatrix((std::int64_t{1} << 31) + 1, 1, 1), ZnError);
  EXPECT_NO_THROW(ZnMatrix(std::int64_t{1} << 31, 1, 1));
  EXPECT_EQ(unit_normalizer(6, 8) * 6 % 8, 2);
}
