#include "equivar/config.hpp"
#include "equivar/witt.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace equivar;

namespace {

DiscreteEsigmaRing zbar() { return DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(0)); }

FgAbelianGroup coker_of(const Mat& m) { return FgAbelianGroup(m.rows(), m); }

bool injective(const AbHom& f) { return kernel(f).is_zero(); }

}  // namespace

TEST(ClassicalWitt, GhostImageIsDworkLattice) {
  std::mt19937_64 rng(3);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      Vec a(3);
      for (auto& x : a) x = static_cast<long long>(rng() % 11) - 5;
      EXPECT_TRUE(classical_witt::in_ghost_image(p, classical_witt::ghost(p, a)));
    }
    EXPECT_FALSE(classical_witt::in_ghost_image(p, Vec{0, 1}));
  }
}

TEST(ClassicalWitt, FrobeniusVerschiebung) {
  for (int p : {3, 5})
    for (int n = 1; n <= 3; ++n) {
      Mat fv = classical_witt::frobenius(p, n) * classical_witt::verschiebung(p, n);
      Mat want = Mat::identity(n);
      for (int i = 0; i < n; ++i) want(i, i) = p;
      EXPECT_EQ(fv, want);
    }
  EXPECT_TRUE(classical_witt::coinvariants(3, 0).isomorphic(FgAbelianGroup::free(1)));
  EXPECT_EQ(classical_witt::coinvariants(3, 2).describe(), "Z/9");
}

TEST(Witt, LevelsAreFreeOfRankKPlusOne) {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 0}, {3, 1}, {3, 2}, {5, 0}, {5, 1}}) {
    auto w = truncated_witt(zbar(), p, k);
    EXPECT_TRUE(w.top().is_free()) << p << " " << k;
    EXPECT_TRUE(w.under().is_free()) << p << " " << k;
    EXPECT_EQ(w.top().rank(), k + 1) << p << " " << k;
    EXPECT_EQ(w.under().rank(), k + 1) << p << " " << k;
    EXPECT_TRUE(w.top().isomorphic(w.under()));
    EXPECT_TRUE(injective(w.res())) << p << " " << k;
    EXPECT_EQ(w.value.levels().size(), 2u);
  }
}

TEST(Witt, FirstTruncationIsHr0OverD2) {
  auto w = truncated_witt(zbar(), 3, 0);
  auto h = hr0(zbar(), Group::dihedral(1));
  EXPECT_TRUE(w.top().isomorphic(h.value(h.top())));
  EXPECT_TRUE(w.under().isomorphic(h.value(0)));
}

TEST(Witt, Budget) {
  EXPECT_THROW(truncated_witt(zbar(), 3, 4), BudgetExceeded);
  EXPECT_THROW(truncated_witt(zbar(), 2, 1), std::invalid_argument);
  EXPECT_THROW(truncated_witt(zbar(), 9, 1), std::invalid_argument);
  EXPECT_THROW(restriction_R(zbar(), 3, 0), std::invalid_argument);
  // p^k = 27 is inside the index budget but the middle norm over D54 is not
  EXPECT_THROW(witt_tower(zbar(), 3, 3), BudgetExceeded);
}

TEST(Witt, TowerCommutes) {
  for (auto [p, K] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}}) {
    auto t = witt_tower(zbar(), p, K);
    std::string why;
    EXPECT_TRUE(t.check(&why)) << p << ": " << why;
  }
}

TEST(Witt, RestrictionAtKOne) {
  auto r = restriction_R(zbar(), 3, 1);
  EXPECT_TRUE(cokernel(r.top).is_zero());
  auto ker = kernel(r.top);
  EXPECT_TRUE(ker.is_free());
  EXPECT_EQ(ker.rank(), 1);
}

TEST(Witt, RestrictionKillsFreeTransfers) {
  auto t = witt_tower(zbar(), 3, 2);
  for (int k = 1; k <= 2; ++k) {
    const auto& w = t.levels[k];
    SparseVec x = w.hr0.tr(0, w.top_sub).apply(SparseVec{{0, Int(1)}});
    Vec img = t.r(k).top.matrix * to_dense(x, w.top().ngens());
    const Mat& rels = t.r(k).top.target.rels();
    Lattice l(rels.rows());
    for (int j = 0; j < rels.cols(); ++j) l.add(rels.column(j));
    EXPECT_TRUE(l.contains(img)) << k;
  }
}

TEST(Witt, FrobeniusVerschiebungAtUnderlyingLevel) {
  auto t = witt_tower(zbar(), 3, 2);
  for (int k = 1; k <= 2; ++k) {
    const auto& small = t.levels[k - 1];
    EXPECT_TRUE(same_map(compose(t.f(k).under, t.v(k).under), scalar(small.under(), 3))) << k;
    Mat fv = classical_witt::frobenius(3, k) * classical_witt::verschiebung(3, k);
    EXPECT_TRUE(coker_of(fv).isomorphic(cokernel(compose(t.f(k).under, t.v(k).under))));
  }
}

TEST(Witt, OperatorsMatchClassical) {
  for (auto [p, K] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}}) {
    auto t = witt_tower(zbar(), p, K);
    for (int k = 1; k <= K; ++k) {
      auto r = classical_witt::restriction(p, k);
      auto f = classical_witt::frobenius(p, k);
      auto v = classical_witt::verschiebung(p, k);
      for (int lvl = 0; lvl < 2; ++lvl) {
        auto sel = [&](const LevelPair& x) -> const AbHom& { return lvl ? x.under : x.top; };
        std::string at = std::to_string(p) + " " + std::to_string(k) + " " + std::to_string(lvl);
        EXPECT_TRUE(cokernel(sel(t.r(k))).isomorphic(coker_of(r))) << at;
        EXPECT_TRUE(cokernel(sel(t.f(k))).isomorphic(coker_of(f))) << at;
        EXPECT_TRUE(cokernel(sel(t.v(k))).isomorphic(coker_of(v))) << at;
        EXPECT_TRUE(cokernel(subtract(sel(t.r(k)), sel(t.f(k)))).isomorphic(coker_of(r - f))) << at;
      }
    }
  }
}

TEST(Witt, VerschiebungOfZero) {
  auto v = verschiebung_V(zbar(), 3, 1);
  Vec zero(v.top.source.ngens(), 0);
  for (const auto& x : v.top.matrix * zero) EXPECT_EQ(x, 0);
}

TEST(Witt, Coinvariants) {
  auto c = witt_coinvariants_F(zbar(), 3, 2);
  ASSERT_EQ(c.top.size(), 3u);
  EXPECT_TRUE(c.artifact_at_zero);
  EXPECT_TRUE(c.top[0].isomorphic(truncated_witt(zbar(), 3, 0).top()));
  for (int k = 0; k <= 2; ++k) {
    EXPECT_TRUE(c.top[k].isomorphic(classical_witt::coinvariants(3, k))) << k << " " << c.top[k].describe();
    EXPECT_TRUE(c.under[k].isomorphic(classical_witt::coinvariants(3, k))) << k << " " << c.under[k].describe();
  }
  EXPECT_FALSE(c.stable[2]);
}

TEST(Witt, ZeroRing) {
  auto m = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(1));
  auto t = witt_tower(m, 3, 1);
  for (const auto& l : t.levels) {
    EXPECT_TRUE(l.top().is_zero());
    EXPECT_TRUE(l.under().is_zero());
  }
  auto c = witt_coinvariants_F(t);
  for (const auto& g : c.top) EXPECT_TRUE(g.is_zero());
}
