#include "equivar/gsets.hpp"
#include "oracles/brute.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace equivar;

namespace {

oracle::Table table_of(const GroupPtr& g) {
  return {g->order(), [g](int a, int b) { return g->mul(a, b); }};
}
oracle::Set as_set(const Group& g, int s) { return {g.sub(s).elems.begin(), g.sub(s).elems.end()}; }

std::int64_t pow_i(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t c_count(int p) { return pow_i(2, (p - 1) / 2) - 1; }
std::int64_t d_count(int p) { return (pow_i(2, p - 1) - 1) / p + 1 - pow_i(2, (p - 1) / 2); }

OrbitType type_of(const Group& g, int top, std::initializer_list<std::pair<int, std::int64_t>> parts) {
  OrbitType t;
  for (auto [s, c] : parts) t[g.local_rep(top, s)] += c;
  return t;
}

}  // namespace

TEST(GSetBasics, FreeOrbitHasNoFixedPointsForNontrivialSubgroup) {
  auto g = Group::dihedral(3);
  auto free = GSet::cosets(g, g->whole(), 0);
  for (int h = 1; h < g->num_subgroups(); ++h) EXPECT_TRUE(free.fixed_points(h).empty());
}

TEST(GSetBasics, FixedCosetsMatchOracle) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  EXPECT_EQ(GSet::cosets(g, g->whole(), d2).num_fixed(d2), 1);
  for (auto gg : {Group::dihedral(6), Group::alternating(4)}) {
    auto t = table_of(gg);
    for (int h = 0; h < gg->num_subgroups(); ++h) {
      auto x = GSet::cosets(gg, gg->whole(), h);
      ASSERT_TRUE(x.verify());
      for (int k = 0; k < gg->num_subgroups(); ++k)
        EXPECT_EQ(x.num_fixed(k), oracle::fixed_cosets(t, as_set(*gg, h), as_set(*gg, k)));
    }
  }
}

TEST(GSetBasics, ProductOrbitsAreDoubleCosets) {
  auto g = Group::dihedral(6);
  for (int h = 0; h < g->num_subgroups(); ++h)
    for (int k = 0; k < g->num_subgroups(); ++k) {
      auto p = product(GSet::cosets(g, g->whole(), h), GSet::cosets(g, g->whole(), k));
      EXPECT_EQ(p.orbits().size(), g->double_coset_reps(g->whole(), h, k).size());
    }
}

TEST(GSetBasics, RestrictCosetsOfD2ToD2) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  auto r = GSet::cosets(g, g->whole(), d2).restrict(d2);
  EXPECT_EQ(iso_type(r), type_of(*g, d2, {{d2, 1}, {0, 1}}));
}

TEST(GSetBasics, RestrictRotationCosetsToRotations) {
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    int mu = dihedral_rotation_subgroup(*g, m);
    auto r = GSet::cosets(g, g->whole(), mu).restrict(mu);
    EXPECT_EQ(r.num_fixed(mu), 2);
    EXPECT_EQ(r.size(), 2);
  }
}

TEST(GSetBasics, InducePointFromTrivialIsFree) {
  auto g = Group::dihedral(4);
  auto x = induce(GSet::point(g, 0), g->whole());
  EXPECT_TRUE(x.verify());
  EXPECT_TRUE(gsets_isomorphic(x, GSet::cosets(g, g->whole(), 0)));
}

TEST(GSetBasics, InduceSizes) {
  auto g = Group::symmetric(4);
  for (int h = 0; h < g->num_subgroups(); ++h) {
    auto t = GSet::trivial(g, h, 2);
    auto x = induce(t, g->whole());
    ASSERT_TRUE(x.verify());
    EXPECT_EQ(x.size(), 2 * g->order() / g->sub_order(h));
  }
}

TEST(Coinduction, TwoLetterFunctionsOnD6) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  auto x = coinduce(GSet::trivial(g, d2, 2), g->whole());
  ASSERT_TRUE(x.verify());
  EXPECT_EQ(x.size(), 8);
  EXPECT_EQ(iso_type(x), type_of(*g, g->whole(), {{g->whole(), 2}, {d2, 2}}));
}

TEST(Coinduction, OrbitCountsForOddPrimes) {
  for (int p : {3, 5, 7, 11}) {
    auto g = Group::dihedral(p);
    int d2 = g->parse_subgroup("D2");
    CoinductionIndex ci(GSet::trivial(g, d2, 2), g->whole());
    auto t = coinduction_type(ci);
    EXPECT_EQ(t[g->whole()], 2);
    EXPECT_EQ(t[g->local_rep(g->whole(), d2)], pow_i(2, (p + 1) / 2) - 2);
    EXPECT_EQ(t[0], d_count(p));
    EXPECT_EQ(orbit_type_size(*g, g->whole(), t), pow_i(2, p));
  }
}

TEST(Coinduction, OrbitCountsAgainstBruteForceFunctions) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int d2 = g->parse_subgroup("D2");
    auto orb = oracle::coinduced_orbits(table_of(g), as_set(*g, d2), 2, [](int, int v) { return v; });
    CoinductionIndex ci(GSet::trivial(g, d2, 2), g->whole());
    std::map<int, int> by_size;
    ci.for_each_orbit([&](const CoinductionIndex::OrbitRec& r) { by_size[static_cast<int>(r.size)] += 1; });
    EXPECT_EQ(by_size, orb.orbits_by_size);
  }
}

TEST(Coinduction, FreeD2FiberGivesRotationOrbitPlusFree) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int d2 = g->parse_subgroup("D2");
    auto x = coinduce(GSet::cosets(g, d2, 0), g->whole());
    int mu = dihedral_rotation_subgroup(*g, p);
    EXPECT_EQ(iso_type(x), type_of(*g, g->whole(), {{mu, 1}, {0, c_count(p) + d_count(p)}}));
  }
}

TEST(Coinduction, PointCoinducesToPoint) {
  auto g = Group::symmetric(4);
  for (int h = 0; h < g->num_subgroups(); ++h) EXPECT_EQ(coinduce(GSet::point(g, h), g->whole()).size(), 1);
}

TEST(CoinductionProperty, SizeIsPowerForTrivialAction) {
  for (auto g : {Group::dihedral(6), Group::symmetric(4), Group::cyclic(12)})
    for (int h = 0; h < g->num_subgroups(); ++h) {
      int idx = g->order() / g->sub_order(h);
      if (idx > 12) continue;
      for (int t = 1; t <= 3; ++t) {
        CoinductionIndex ci(GSet::trivial(g, h, t), g->whole());
        EXPECT_EQ(ci.count(), pow_i(t, idx));
        EXPECT_EQ(orbit_type_size(*g, g->whole(), coinduction_type(ci)), pow_i(t, idx));
      }
    }
}

TEST(CoinductionProperty, FixedPointsFollowDoubleCosets) {
  for (auto g : {Group::dihedral(6), Group::alternating(4)})
    for (int h = 0; h < g->num_subgroups(); ++h) {
      if (g->order() / g->sub_order(h) > 8) continue;
      for (int k0 = 0; k0 < g->num_subgroups(); ++k0) {
        if (!g->le(k0, h) || g->sub_order(h) / g->sub_order(k0) > 3) continue;
        auto t = GSet::cosets(g, h, k0);
        auto x = coinduce(t, g->whole());
        for (int k = 0; k < g->num_subgroups(); ++k) {
          std::int64_t expect = 1;
          for (int gamma : g->double_coset_reps(g->whole(), k, h))
            expect *= t.num_fixed(g->meet(g->conj(g->inv(gamma), k), h));
          EXPECT_EQ(x.num_fixed(k), expect);
        }
      }
    }
}

TEST(CoinductionProperty, NormalSubgroupCanBeDividedOut) {
  // Map^H(G, T) with N <= H normal and acting trivially on T, against the quotient groups.
  for (auto [m, d] : {std::pair{9, 3}, std::pair{6, 3}, std::pair{15, 5}}) {
    auto g = Group::dihedral(m);
    auto q = Group::dihedral(m / d);
    auto pi = dihedral_quotient(g, q);
    int n = dihedral_rotation_subgroup(*g, d);
    for (int h = 0; h < g->num_subgroups(); ++h) {
      if (!g->le(n, h) || g->order() / g->sub_order(h) > 10) continue;
      int hq = pi.map_subgroup(h);
      for (int k = 0; k < g->num_subgroups(); ++k) {
        if (!g->le(n, k) || !g->le(k, h) || g->sub_order(h) / g->sub_order(k) > 3) continue;
        int kq = pi.map_subgroup(k);
        auto big = coinduce(GSet::cosets(g, h, k), g->whole());
        auto small = coinduce(GSet::cosets(q, hq, kq), q->whole());
        OrbitType mapped;
        for (auto [s, c] : iso_type(big)) {
          ASSERT_TRUE(g->le(n, s));
          mapped[q->local_rep(q->whole(), pi.map_subgroup(s))] += c;
        }
        EXPECT_EQ(mapped, iso_type(small));
      }
    }
  }
}

TEST(Marks, D2Table) {
  auto g = Group::dihedral(1);
  EXPECT_EQ(table_of_marks(*g, g->whole()), Mat::from_rows({{2, 0}, {1, 1}}));
}

TEST(Marks, D6EntriesAndDiagonal) {
  auto g = Group::dihedral(3);
  Mat m = table_of_marks(*g, g->whole());
  auto reps = g->local_class_reps(g->whole());
  ASSERT_EQ(reps.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_GT(m(i, i), 0);
    EXPECT_EQ(m(3, i), 1);
    for (int j = i + 1; j < 4; ++j) EXPECT_EQ(m(i, j), 0);
  }
  int mu = dihedral_rotation_subgroup(*g, 3);
  auto pos = [&](int s) { return static_cast<int>(std::find(reps.begin(), reps.end(), s) - reps.begin()); };
  EXPECT_EQ(m(pos(mu), pos(mu)), 2);
}

TEST(Marks, InvertibleForSeveralGroups) {
  for (auto g : {Group::dihedral(6), Group::dihedral(15), Group::symmetric(4), Group::cyclic(24)})
    EXPECT_NE(det(table_of_marks(*g, g->whole())), 0);
}

TEST(Marks, AgreeWithFixedPointCounts) {
  auto g = Group::symmetric(4);
  Mat m = table_of_marks(*g, g->whole());
  auto reps = g->local_class_reps(g->whole());
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j)
      EXPECT_EQ(m(i, j), GSet::cosets(g, g->whole(), reps[i]).num_fixed(reps[j]));
}

TEST(Isomorphism, Reflexive) {
  auto g = Group::dihedral(5);
  auto x = product(GSet::cosets(g, g->whole(), 1), GSet::cosets(g, g->whole(), 2));
  EXPECT_TRUE(gsets_isomorphic(x, x));
}

TEST(Isomorphism, CirclePointsDecompose) {
  int m = 3, k = 2;
  auto g = Group::dihedral(m);
  auto circle = circle_points(g, 2 * m * (k + 1));
  ASSERT_TRUE(circle.verify());
  int d2 = g->parse_subgroup("D2");
  int zt = g->generated({g->mul(g->zeta(), g->tau())});
  auto rhs = disjoint_union(disjoint_union(GSet::cosets(g, g->whole(), d2), multiple(GSet::cosets(g, g->whole(), 0), k)),
                            GSet::cosets(g, g->whole(), zt));
  EXPECT_TRUE(gsets_isomorphic(circle, rhs));
}

TEST(Isomorphism, ProductWithRotationCosets) {
  int m = 9;
  auto g = Group::dihedral(m);
  int mu = dihedral_rotation_subgroup(*g, m);
  auto rot = GSet::cosets(g, g->whole(), mu);
  for (int h = 0; h < g->num_subgroups(); ++h) {
    auto lhs = product(GSet::cosets(g, g->whole(), h), rot);
    int order = g->sub_order(h);
    GSet rhs = order % 2 == 0 ? GSet::cosets(g, g->whole(), dihedral_rotation_subgroup(*g, std::gcd(m, order)))
                              : multiple(GSet::cosets(g, g->whole(), h), 2);
    EXPECT_TRUE(gsets_isomorphic(lhs, rhs)) << g->subgroup_name(h);
  }
}

TEST(DependentProduct, WholeGroupIsCoinduction) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  auto t0 = GSet::trivial(g, d2, 2);
  auto dp = dependent_product(t0, g->whole(), g->whole());
  EXPECT_TRUE(gsets_isomorphic(dp.pi, coinduce(t0, g->whole())));
  EXPECT_EQ(dp.base.size(), 1);
}

TEST(DependentProduct, PointFiberGivesBase) {
  auto g = Group::dihedral(6);
  int h = g->parse_subgroup("D2"), k = g->parse_subgroup("D6");
  auto dp = dependent_product(GSet::point(g, h), k, g->whole());
  EXPECT_TRUE(gsets_isomorphic(dp.pi, dp.base));
  GMap hp{dp.hprime};
  EXPECT_TRUE(is_equivariant(dp.pi, dp.base, hp));
}

TEST(DependentProduct, FreeCaseCardinality) {
  auto g = Group::dihedral(3);
  auto dp = dependent_product(GSet::trivial(g, 0, 2), g->whole(), g->whole());
  EXPECT_EQ(dp.pi.size(), 64);
}

TEST(ExponentialDiagram, IdentityH) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  auto x = GSet::cosets(g, g->whole(), d2);
  std::vector<int> id(x.size());
  std::iota(id.begin(), id.end(), 0);
  auto e = exponential_diagram(x, id, d2, g->whole());
  EXPECT_EQ(e.Pi.size(), 1);
  EXPECT_EQ(e.XPi.size(), x.size());
  EXPECT_TRUE(is_equivariant(e.XPi, e.A, e.fprime));
  for (int i = 0; i < e.XPi.size(); ++i) EXPECT_EQ(e.h.val[e.fprime.val[i]], i);
}

TEST(ExponentialDiagram, FoldIsEvaluation) {
  auto g = Group::dihedral(3);
  int d2 = g->parse_subgroup("D2");
  auto x = GSet::cosets(g, g->whole(), d2);
  auto a = disjoint_union(x, x);
  std::vector<int> fold(a.size());
  for (int i = 0; i < a.size(); ++i) fold[i] = i % x.size();
  auto e = exponential_diagram(a, fold, d2, g->whole());
  EXPECT_EQ(e.Pi.size(), 8);
  for (auto [src, dst, f] : {std::tuple{&e.XPi, &e.A, &e.fprime}, std::tuple{&e.XPi, &e.Pi, &e.gprime},
                             std::tuple{&e.Pi, &e.Y, &e.hprime}, std::tuple{&e.X, &e.Y, &e.g}})
    EXPECT_TRUE(is_equivariant(*src, *dst, *f));
  CoinductionIndex ci(GSet::trivial(g, d2, 2), g->whole());
  for (int q = 0; q < e.XPi.size(); ++q) {
    int xi = e.h.val[e.fprime.val[q]];
    EXPECT_EQ(e.g.val[xi], e.hprime.val[e.gprime.val[q]]);
    if (xi == 0) {
      auto vals = ci.decode(static_cast<std::uint64_t>(e.gprime.val[q]));
      EXPECT_EQ(e.fprime.val[q] / x.size(), ci.value_at(vals, 0));
    }
  }
  // pullback: each (x, pi) over the same point of Y occurs exactly once
  std::set<std::pair<int, int>> pairs;
  for (int q = 0; q < e.XPi.size(); ++q) pairs.insert({e.h.val[e.fprime.val[q]], e.gprime.val[q]});
  EXPECT_EQ(static_cast<int>(pairs.size()), e.XPi.size());
  EXPECT_EQ(e.XPi.size(), x.size() * e.Pi.size());
}
