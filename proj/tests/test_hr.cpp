#include "equivar/config.hpp"
#include "equivar/hr.hpp"

#include <gtest/gtest.h>

using namespace equivar;

namespace {

SparseVec e(int j) { return SparseVec{{j, Int(1)}}; }

DiscreteEsigmaRing zbar() { return DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(0)); }

// A^{D_2m} modulo the Green ideal of 2 - [D_2m/mu_m].
Mackey burnside_quotient(const GroupPtr& g) {
  int top = g->whole();
  auto a = Mackey::representable(GSet::point(g, top));
  int mu = dihedral_rotation_subgroup(*g, g->dihedral_m());
  SparseVec x = sparse_add(sparse_add(a.unit(top), a.unit(top)), e(a.rep()->index(top, mu, 0)), -1);
  return a.quotient_by_congruence({{top, x}});
}

int num_divisors(int m) {
  int n = 0;
  for (int k = 1; k <= m; ++k) n += m % k == 0;
  return n;
}

}  // namespace

TEST(Esigma, IntegersGiveConstantZ) {
  auto m = zbar();
  std::string why;
  EXPECT_TRUE(m.check(&why)) << why;
  EXPECT_TRUE(m.unit_generated());
  auto z = constant_Z(m.group());
  int top = m.group()->whole();
  auto c = iso_from_forward(z, m.mackey(), morphism_from_images(z, m.mackey(), {m.mackey().unit(top)}));
  EXPECT_TRUE(c.found) << c.reason;
}

TEST(Esigma, GaussianIntegers) {
  auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::gaussian());
  std::string why;
  EXPECT_TRUE(m.check(&why)) << why;
  EXPECT_FALSE(m.unit_generated());
  int top = m.group()->whole();
  EXPECT_EQ(m.mackey().value(top).describe(), "Z");
  EXPECT_EQ(m.mackey().value(0).describe(), "Z^2");
  const auto& tr = m.mackey().tr(0, top);
  EXPECT_EQ(tr.apply(e(0)), (SparseVec{{0, Int(2)}}));  // tr(1) = 2
  EXPECT_TRUE(tr.apply(e(1)).empty());                 // tr(i) = 0
  EXPECT_THROW(m.cyclic_modulus(), std::invalid_argument);
}

TEST(Esigma, IntegersModFour) {
  auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(4));
  std::string why;
  EXPECT_TRUE(m.check(&why)) << why;
  int top = m.group()->whole();
  EXPECT_EQ(m.mackey().value(top).describe(), "Z/4");
  EXPECT_EQ(m.mackey().tr(0, top).apply(e(0)), (SparseVec{{0, Int(2)}}));
  EXPECT_EQ(m.cyclic_modulus(), 4);
}

TEST(Esigma, RejectsBadInvolution) {
  auto r = RingWithAntiInvolution::integers_mod(0);
  r.tau = Mat::from_rows({{-1}});
  EXPECT_FALSE(r.check());
  EXPECT_THROW(DiscreteEsigmaRing::from_ring_with_anti_involution(r), std::invalid_argument);
  auto q = RingWithAntiInvolution::gaussian();
  q.tau = Mat::from_rows({{1, 1}, {0, -1}});
  EXPECT_THROW(DiscreteEsigmaRing::from_ring_with_anti_involution(q), std::invalid_argument);
}

TEST(Esigma, PresentationRealizesFixedPointFunctor) {
  for (long long n : {0LL, 2LL, 4LL, 6LL}) {
    auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(n));
    auto p = esigma_presentation(m, m.group(), m.group()->whole());
    std::string why;
    EXPECT_TRUE(p.check(&why)) << why;
    auto c = presentation_certificate(m);
    EXPECT_TRUE(c.found) << n << ": " << c.reason;
  }
}

TEST(Twisted, ModuleAxioms) {
  for (long long n : {0LL, 4LL})
    for (int mm : {1, 3}) {
      auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(n));
      auto t = twisted_module_structures(m, Group::dihedral(mm));
      std::string why;
      EXPECT_TRUE(t.check(&why)) << n << " " << mm << ": " << why;
    }
}

TEST(Twisted, AtMOneLeftIsM) {
  auto m = zbar();
  auto g = Group::dihedral(1);
  auto t = twisted_module_structures(m, g);
  EXPECT_TRUE(mackey_iso(t.left, constant_Z(g)).found);
  EXPECT_TRUE(mackey_iso(t.right, constant_Z(g)).found);
}

TEST(Twisted, RightEndIsConjugationTransport) {
  for (int mm : {3, 5}) {
    auto g = Group::dihedral(mm);
    auto t = twisted_module_structures(zbar(), g);
    auto c = mackey_iso(t.right, conjugation_transport(t.left, g->zeta()));
    EXPECT_TRUE(c.found) << mm << ": " << c.reason;
  }
}

TEST(Bar, ShapeAndFaces) {
  auto g = Group::dihedral(3);
  auto b = hr_complex(zbar(), g, 2);
  ASSERT_EQ(b.terms.size(), 3u);
  EXPECT_TRUE(mackey_iso(b.terms[0], box(b.ends.left, b.ends.right)).found);
  EXPECT_EQ(b.faces[1][0].name, "d_0 = psi_R box id");
  EXPECT_EQ(b.faces[1][1].name, "d_1 = id box psi_L");
  EXPECT_EQ(b.faces[2].size(), 3u);
  EXPECT_EQ(b.degens[1].size(), 2u);
}

TEST(Bar, SimplicialIdentitiesAndDSquared) {
  for (long long n : {0LL, 4LL})
    for (int mm : {1, 3}) {
      auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(n));
      auto b = hr_complex(m, Group::dihedral(mm), 3);
      std::string why;
      EXPECT_TRUE(b.check_simplicial(&why)) << why;
      EXPECT_TRUE(b.check_d_squared(&why)) << why;
    }
}

TEST(Bar, DegreeBudget) { EXPECT_THROW(hr_complex(zbar(), Group::dihedral(3), 4), BudgetExceeded); }

TEST(Bar, RejectsEvenAndNonCyclic) {
  EXPECT_THROW(hr_complex(zbar(), Group::dihedral(2), 1), std::invalid_argument);
  auto gi = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::gaussian());
  EXPECT_THROW(hr_complex(gi, Group::dihedral(3), 1), std::invalid_argument);
}

TEST(Hr0, TrivialGroupCase) {
  auto g = Group::dihedral(1);
  auto h = hr0(zbar(), g);
  EXPECT_EQ(h.value(0).describe(), "Z");
  EXPECT_TRUE(mackey_iso(h, constant_Z(g)).found);
}

TEST(Hr0, BurnsideQuotient) {
  for (int mm : {3, 5, 9}) {
    auto g = Group::dihedral(mm);
    auto h = hr0(zbar(), g);
    auto c = mackey_iso(h, burnside_quotient(g));
    EXPECT_TRUE(c.found) << mm << ": " << c.reason;
    EXPECT_EQ(h.value(g->whole()).rank(), num_divisors(mm));
    EXPECT_TRUE(h.value(g->whole()).is_free());
    // underlying Hochschild degree zero of Z; the rotation level is A(mu_m)
    EXPECT_EQ(h.value(0).describe(), "Z");
    EXPECT_EQ(h.value(dihedral_rotation_subgroup(*g, mm)).rank(), num_divisors(mm));
  }
}

TEST(Hr0, ModFour) {
  auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(4));
  auto g = Group::dihedral(3);
  auto h = hr0(m, g);
  EXPECT_EQ(h.value(0).describe(), "Z/4");
  EXPECT_EQ(h.value(dihedral_rotation_subgroup(*g, 3)).describe(), "Z/4 + Z/4");
}

TEST(HrHomologyTest, DegreeZeroIsHr0) {
  auto g = Group::dihedral(3);
  auto b = hr_complex(zbar(), g, 2);
  auto h0 = hr_homology(b, 0);
  auto direct = hr0(b);
  for (size_t i = 0; i < h0.levels.size(); ++i) EXPECT_TRUE(h0.groups[i].isomorphic(direct.value(h0.levels[i])));
}

TEST(HrHomologyTest, TorOracleAtMOne) {
  // Over D2 the middle factor is the unit A, so Tor is the box product in degree 0 and vanishes above.
  auto g = Group::dihedral(1);
  auto b = hr_complex(zbar(), g, 3);
  auto zz = box(constant_Z_presentation(g, g->whole()).realize(), constant_Z_presentation(g, g->whole()).realize());
  for (int n = 0; n <= 2; ++n) {
    auto h = hr_homology(b, n);
    for (size_t i = 0; i < h.levels.size(); ++i) {
      if (n == 0)
        EXPECT_TRUE(h.groups[i].isomorphic(zz.value(h.levels[i]))) << h.describe(*g);
      else
        EXPECT_TRUE(h.groups[i].is_zero()) << n << "\n" << h.describe(*g);
    }
  }
}

TEST(HrHomologyTest, ZeroRing) {
  auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(1));
  auto b = hr_complex(m, Group::dihedral(3), 2);
  for (int n = 0; n <= 1; ++n) {
    auto h = hr_homology(b, n);
    for (const auto& grp : h.groups) EXPECT_TRUE(grp.is_zero());
  }
}

TEST(HrHomologyTest, BadDegree) {
  auto b = hr_complex(zbar(), Group::dihedral(3), 1);
  EXPECT_THROW(hr_homology(b, 1), std::invalid_argument);
}

TEST(Phi, IdentityCase) {
  auto c = phi_compatibility_check(zbar(), 3, 1, 1);
  EXPECT_TRUE(c.found()) << c.to_json();
}

TEST(Phi, D6ToD2) {
  auto c = phi_compatibility_check(zbar(), 3, 3, 1);
  EXPECT_TRUE(c.found()) << c.to_json();
  EXPECT_EQ(c.degree.size(), 2u);
}

TEST(Phi, D18ToD6) {
  auto c = phi_compatibility_check(zbar(), 9, 3, 0);
  EXPECT_TRUE(c.found()) << c.to_json();
}
