#include <gtest/gtest.h>

#include <random>

#include "grc/analyze.hpp"

using namespace grc;

TEST(Morphism, flags_and_witnesses) {
  auto z = z4_identity();
  auto reg = regular_module(z.h.source);
  auto id = analyze_morphism(identity_morphism(reg));
  EXPECT_TRUE(id.mono && id.epi && id.iso && id.section && id.retraction && id.pure);
  auto two = build_morphism(reg, reg, {{{}, 0, {2}}});
  auto a = analyze_morphism(two);
  EXPECT_FALSE(a.mono);
  EXPECT_FALSE(a.epi);
  ASSERT_TRUE(a.kernel_element);
  EXPECT_EQ(a.kernel_element->value, (Vec{2}));
  ASSERT_TRUE(a.missed_element);
  EXPECT_EQ(a.missed_element->value, (Vec{1}));

  auto fr = frobenius(true);
  auto hf = analyze_morphism(underline(fr.h));
  EXPECT_TRUE(hf.mono && hf.section && hf.pure);
  EXPECT_FALSE(hf.epi);
  ASSERT_TRUE(hf.left_inverse);
  EXPECT_EQ(compose(underline(fr.h), *hf.left_inverse), identity_morphism(regular_module(fr.h.source)));

  auto z2 = z4_to_z2();
  auto hz = analyze_morphism(underline(z2.h));
  EXPECT_TRUE(hz.epi && hz.retraction == false);
  EXPECT_FALSE(hz.section || hz.mono || hz.pure);

  auto sig = analyze_morphism(sigma_s(fr.h));
  EXPECT_TRUE(sig.epi);
  EXPECT_FALSE(sig.mono);
}

TEST(Module, freeness_and_projectivity) {
  auto fr = frobenius(true);
  auto hs = restrict(fr.h, regular_module(fr.h.target));
  auto shifts = free_shifts(hs);
  ASSERT_TRUE(shifts);
  std::vector<Degree> got = *shifts;
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<Degree>{{0}, {1}}));
  EXPECT_EQ(*free_shifts(regular_module(fr.h.source)), (std::vector<Degree>{{0}}));

  auto z = z4_to_z2();
  auto half = restrict(z.h, regular_module(z.h.target));
  EXPECT_FALSE(is_free(half));
  EXPECT_FALSE(is_projective(half));
  EXPECT_FALSE(is_flat(half));
  EXPECT_TRUE(is_projective(regular_module(z.h.target)));
  EXPECT_TRUE(is_free(free_module(z.h.source, {{}, {}})));

  // over Z/6 the summand Z/2 is projective but not free
  auto z6 = truncated_polynomial(make_group({}), 6, 6, 1, {});
  auto p2 = truncated_polynomial(make_group({}), 6, 2, 1, {});
  auto h6 = polynomial_map(z6, p2);
  auto z2over6 = restrict(h6, regular_module(p2.ring));
  EXPECT_TRUE(is_projective(z2over6));
  EXPECT_FALSE(is_free(z2over6));

  auto an = analyze_module(half);
  EXPECT_EQ(an.generators, 1u);
  EXPECT_EQ(an.relations, 1u);
  EXPECT_TRUE(an.finite_type && an.finite_presentation && an.small);
}

TEST(Module, predicates_survive_coarsening) {
  std::mt19937_64 rng(211);
  for (const auto& inst : standard_instances())
    for (const auto& psi : inst.coarsenings) {
      auto cr = coarsen_ring(inst.h.source, psi);
      for (int trial = 0; trial < 3; ++trial) {
        auto m = random_module(inst.h.source, rng);
        auto cm = coarsen_module(m, cr);
        EXPECT_EQ(is_projective(m), is_projective(cm.module)) << inst.name;
        auto k = kernel(multiplication(m, inst.h.source->support().back(),
                                       inst.h.source->basis(inst.h.source->support().back(), 0)));
        auto ck = coarsen_module(k.module, cr);
        auto ci = coarsen_morphism(k.inclusion, ck, cm);
        EXPECT_EQ(is_section(k.inclusion), is_section(ci)) << inst.name;
        EXPECT_EQ(is_pure(k.inclusion), is_pure(ci)) << inst.name;
      }
    }
}

TEST(Iso, search) {
  auto fr = frobenius(true);
  auto s = regular_module(fr.h.target);
  auto hr = coextend(fr.h, regular_module(fr.h.source)).module;
  EXPECT_FALSE(find_isomorphism(s, hr));
  EXPECT_TRUE(find_isomorphism(shift(s, {1}), hr));
  auto fu = frobenius(false);
  auto f = find_isomorphism(regular_module(fu.h.target), coextend(fu.h, regular_module(fu.h.source)).module);
  ASSERT_TRUE(f);
  EXPECT_TRUE(is_iso(*f));
  auto big = free_module(fu.h.target, {{}, {}, {}, {}, {}});
  EXPECT_THROW(find_isomorphism(big, big, 16), BudgetExceeded);
}

TEST(Ring, epimorphism_and_battery) {
  EXPECT_TRUE(is_ring_epimorphism(z4_to_z2().h));
  EXPECT_FALSE(is_ring_epimorphism(frobenius(true).h));
  auto b = d70_battery(z4_to_z2().h);
  for (bool v : b.verdicts) EXPECT_TRUE(v);
  auto f = d70_battery(frobenius(true).h);
  for (bool v : f.verdicts) EXPECT_FALSE(v);
  for (const auto& inst : standard_instances()) EXPECT_NO_THROW(d70_battery(inst.h)) << inst.name;
  for (const auto& inst : standard_instances())
    for (const auto& psi : inst.coarsenings) {
      auto [fine, coarse] = d80_check(inst.h, psi);
      EXPECT_EQ(fine, coarse) << inst.name;
    }
}

TEST(Ring, c50_flags) {
  std::mt19937_64 rng(223);
  for (const auto& inst : standard_instances()) {
    std::vector<ModulePtr> fam;
    for (int i = 0; i < 4; ++i) fam.push_back(random_module(inst.h.source, rng));
    auto r = c50_check(inst.h, fam);
    EXPECT_TRUE(r.consistent()) << inst.name;
  }
  auto fr = c50_check(frobenius(true).h);
  EXPECT_TRUE(fr.underline.pure && !fr.underline.iso);
  auto zz = c50_check(z4_to_z2().h);
  EXPECT_TRUE(zz.underline.epi && !zz.underline.iso);
}

TEST(Ring, morita) {
  auto fu = frobenius(false);
  auto r = morita_check(fu.h);
  EXPECT_TRUE(r.result());
  std::mt19937_64 rng(227);
  for (int i = 0; i < 6; ++i) {
    auto m = random_module(fu.h.source, rng);
    EXPECT_TRUE(is_iso(morita_iso(fu.h, *r.base_iso, m)));
  }
  EXPECT_FALSE(morita_check(z4_to_z2().h).result());
  auto g = morita_check(frobenius(true).h);
  EXPECT_TRUE(g.projective);
  EXPECT_FALSE(g.base_iso);
  EXPECT_TRUE(morita_check(z4_identity().h).result());
}

TEST(Ring, plus_and_sharp_adjunctions) {
  std::mt19937_64 rng(229);
  for (const auto& inst : {frobenius(false), frobenius(true), cubic_identity()}) {
    ASSERT_TRUE(is_projective(restrict(inst.h, regular_module(inst.h.target))));
    for (int i = 0; i < 4; ++i) {
      auto m = random_module(inst.h.source, rng);
      auto n = random_module(inst.h.target, rng);
      for (const auto& t : plus_triangles(inst.h, n, m)) EXPECT_TRUE(t.holds) << inst.name << " " << t.name;
      for (const auto& t : sharp_triangles(inst.h, m, n)) EXPECT_TRUE(t.holds) << inst.name << " " << t.name;
    }
  }
}
