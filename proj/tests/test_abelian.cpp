#include <gtest/gtest.h>

#include <random>
#include <set>

#include "grc/abelian.hpp"

using namespace grc;

TEST(Group, construction) {
  EXPECT_TRUE(make_group({}).is_trivial());
  EXPECT_EQ(make_group({2}).elements().size(), 2u);
  EXPECT_EQ(make_group({0}).free_rank(), 1u);
  EXPECT_THROW(make_group({1}), GroupError);
  EXPECT_THROW(make_group({3, 1}), GroupError);
}

TEST(Group, reduce_idempotent_and_arithmetic) {
  auto g = make_group({0, 6, 4});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int i = 0; i < 200; ++i) {
    Degree x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)};
    EXPECT_EQ(g.reduce(g.reduce(x)), g.reduce(x));
    EXPECT_EQ(g.add(x, g.negate(x)), g.zero());
    EXPECT_EQ(g.sub(g.add(x, y), y), g.reduce(x));
  }
}

TEST(Group, from_presentation) {
  // Z^2 / <(2, 4), (0, 6)> = Z/2 x Z/6... invariant factors 2, 6
  auto [g, to] = FgAbelianGroup::from_presentation(2, {{2, 4}, {0, 6}});
  EXPECT_EQ(g.moduli(), (std::vector<std::int64_t>{2, 6}));
  // Z^2 / <(1, 1)> = Z
  auto [z, to2] = FgAbelianGroup::from_presentation(2, {{1, 1}});
  EXPECT_EQ(z.moduli(), (std::vector<std::int64_t>{0}));
  // the image of the relation is zero
  Degree img = z.zero();
  for (std::size_t i = 0; i < 2; ++i) img[0] += to2[i][0];
  EXPECT_EQ(z.reduce(img), z.zero());
  // Z/2 x Z/3 -> Z/6
  auto [c6, to3] = FgAbelianGroup::from_presentation(2, {{2, 0}, {0, 3}});
  EXPECT_EQ(c6.moduli(), (std::vector<std::int64_t>{6}));
}

TEST(Epi, examples) {
  auto z4 = make_group({4}), z2 = make_group({2}), z = make_group({0}), triv = make_group({});
  auto psi = make_epi(z4, z2, {{1}});
  std::set<Degree> image;
  for (const auto& x : z4.elements()) image.insert(psi.apply(x));
  EXPECT_EQ(image.size(), 2u);
  EXPECT_EQ(psi.apply({2}), (Degree{0}));
  EXPECT_TRUE(psi.kernel_is_finite());

  auto to_zero = make_epi(z, triv, {{}});
  EXPECT_FALSE(to_zero.kernel_is_finite());

  EXPECT_THROW(make_epi(z2, z4, {{1}}), NotWellDefined);
  EXPECT_THROW(make_epi(z4, z4, {{2}}), NotSurjective);
  EXPECT_THROW(make_epi(z, make_group({0, 0}), {{1, 0}}), NotSurjective);

  auto proj = make_epi(make_group({0, 2}), z, {{1}, {0}});
  EXPECT_TRUE(proj.kernel_is_finite());
}

TEST(Epi, additive_and_kernel_finiteness_agrees_with_enumeration) {
  auto g = make_group({2, 4}), h = make_group({2});
  auto psi = make_epi(g, h, {{1}, {1}});
  for (const auto& x : g.elements())
    for (const auto& y : g.elements())
      EXPECT_EQ(psi.apply(g.add(x, y)), h.add(psi.apply(x), psi.apply(y)));
  std::size_t ker = 0;
  for (const auto& x : g.elements()) ker += psi.apply(x) == h.zero();
  EXPECT_EQ(ker, 4u);
  EXPECT_TRUE(psi.kernel_is_finite());

  auto zz = make_group({0, 0}), z = make_group({0});
  auto sum = make_epi(zz, z, {{1}, {1}});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-100, 100);
  for (int i = 0; i < 100; ++i) {
    Degree x{d(rng), d(rng)}, y{d(rng), d(rng)};
    EXPECT_EQ(sum.apply(zz.add(x, y)), z.add(sum.apply(x), sum.apply(y)));
  }
  EXPECT_FALSE(sum.kernel_is_finite());
}
