#include "equivar/config.hpp"
#include "equivar/gsets.hpp"
#include "equivar/tambara.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace equivar;

namespace {

int d2_of(const Group& g) { return g.generated({g.tau()}); }

long long c_p(int p) { return (1LL << ((p - 1) / 2)) - 1; }
long long d_p(int p) { return ((1LL << (p - 1)) - 1) / p + 1 - (1LL << ((p - 1) / 2)); }

int count_ops(const TambaraExpr& e, TambaraOp op) {
  int n = e->op == op;
  for (const auto& k : e->kids) n += count_ops(k, op);
  return n;
}

}  // namespace

TEST(Expr, LevelsChecked) {
  auto g = Group::dihedral(3);
  int h = d2_of(*g);
  EXPECT_THROW(ttr(*g, tvar(0, g->whole()), h), std::invalid_argument);
  EXPECT_THROW(tres(*g, tvar(0, h), g->whole()), std::invalid_argument);
  auto e = tnorm(*g, tconj(*g, tres(*g, tvar(0, h), 0), g->zeta()), h);
  EXPECT_TRUE(well_formed(*g, e));
  EXPECT_EQ(to_text(*g, e), "N_e^D2([z]res^D2_e(a))");
  EXPECT_EQ(to_latex(*g, e), "N_{e}^{D_{2}}(\\zeta\\,\\mathrm{res}^{D_{2}}_{e}(a))");
  auto bad = tsum({tvar(0, h), tvar(1, 0)}, h);
  EXPECT_FALSE(well_formed(*g, bad));
}

TEST(Expr, JsonCarriesLevels) {
  auto g = Group::dihedral(3);
  auto e = tnorm(*g, tvar(1, d2_of(*g)), g->whole());
  EXPECT_EQ(to_json(*g, e), R"({"op":"norm","level":"D6","from":"D2","args":[{"op":"var","level":"D2","var":"b"}]})");
}

TEST(Reciprocity, WholeGroupIsSum) {
  for (auto g : {Group::dihedral(3), Group::cyclic(4), Group::alternating(4)})
    EXPECT_EQ(to_text(*g, reciprocity_sum(*g, g->whole(), g->whole())), "a + b");
}

TEST(Reciprocity, D6OverD2) {
  auto g = Group::dihedral(3);
  auto e = reciprocity_sum(*g, g->whole(), d2_of(*g));
  EXPECT_TRUE(well_formed(*g, e));
  // The ζ printed in the published p = 3 example is the rotation z of D6 here.
  EXPECT_EQ(to_text(*g, e),
            "N_D2^D6(a) + N_D2^D6(b) + tr_D2^D6(a * N_e^D2([z]res^D2_e(b))) + tr_D2^D6(b * N_e^D2([z]res^D2_e(a)))");
}

TEST(Reciprocity, WordCounts) {
  EXPECT_EQ(dihedral_words(3).x.size(), 2u);
  EXPECT_EQ(dihedral_words(3).y.size(), 0u);
  EXPECT_EQ(dihedral_words(5).x.size(), 6u);
  EXPECT_EQ(dihedral_words(5).y.size(), 0u);
  EXPECT_EQ(dihedral_words(7).y.size(), 2u);
  for (int p : {3, 5, 7, 11}) {
    auto w = dihedral_words(p);
    EXPECT_EQ(static_cast<long long>(w.x.size()), 2 * c_p(p)) << p;
    EXPECT_EQ(static_cast<long long>(w.y.size()), d_p(p)) << p;
  }
}

TEST(Reciprocity, DihedralMatchesGeneral) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    auto general = reciprocity_sum(*g, g->whole(), d2_of(*g));
    auto special = reciprocity_sum_dihedral(g);
    EXPECT_TRUE(well_formed(*g, special));
    EXPECT_EQ(to_text(*g, special), to_text(*g, general)) << p;
    EXPECT_EQ(to_json(*g, special), to_json(*g, general)) << p;
  }
}

TEST(Reciprocity, D14HasFreeSummand) {
  auto g = Group::dihedral(7);
  auto e = reciprocity_sum(*g, g->whole(), d2_of(*g));
  int free = 0;
  for (const auto& s : e->kids)
    if (s->op == TambaraOp::Tr && s->from == 0) {
      ++free;
      ASSERT_EQ(s->kids[0]->op, TambaraOp::Product);
      EXPECT_EQ(s->kids[0]->kids.size(), 7u);
    }
  EXPECT_EQ(free, 2);
}

TEST(Reciprocity, SummandsMatchCoinductionOrbits) {
  std::vector<GroupPtr> groups{Group::dihedral(3), Group::dihedral(4), Group::dihedral(5), Group::cyclic(6),
                               Group::alternating(4), Group::symmetric(4)};
  for (const auto& g : groups) {
    for (int h = 0; h < g->num_subgroups(); ++h) {
      if (g->sub_order(h) * 12 < g->order()) continue;  // keep coinduction small
      auto x = coinduce(GSet::trivial(g, h, 2), g->whole());
      auto orbits = reciprocity_orbits(*g, g->whole(), h);
      EXPECT_EQ(orbits.size(), x.orbits().size()) << g->descriptor() << " " << g->subgroup_name(h);
      auto e = reciprocity_sum(*g, g->whole(), h);
      EXPECT_TRUE(well_formed(*g, e));
      EXPECT_EQ(e->kids.size(), orbits.size());
    }
  }
}

TEST(Reciprocity, GeneralTopSubgroup) {
  auto g = Group::symmetric(4);
  for (int top = 0; top < g->num_subgroups(); ++top)
    for (int h = 0; h < g->num_subgroups(); ++h) {
      if (!g->le(h, top) || g->sub_order(top) / g->sub_order(h) > 12) continue;
      auto e = reciprocity_sum(*g, top, h);
      EXPECT_TRUE(well_formed(*g, e));
      EXPECT_EQ(e->level, top);
    }
}

TEST(Reciprocity, BZeroGivesNorm) {
  for (auto g : {Group::dihedral(3), Group::dihedral(5), Group::symmetric(4)}) {
    int h = g->num_subgroups() / 2;
    if (!g->le(h, g->whole())) continue;
    auto e = substitute_b_zero(*g, reciprocity_sum(*g, g->whole(), h));
    ASSERT_TRUE(e);
    if (h == g->whole())
      EXPECT_EQ(to_text(*g, e), "a");
    else
      EXPECT_EQ(to_text(*g, e), to_text(*g, tnorm(*g, tvar(0, h), g->whole())));
  }
}

TEST(Reciprocity, OrbitsBudgeted) {
  auto g = Group::cyclic(24);
  auto saved = budgets();
  budgets().max_coinduction = 1000;
  EXPECT_THROW(reciprocity_orbits(*g, g->whole(), 0), BudgetExceeded);
  budgets() = saved;
}

TEST(Evaluate, SumOfOnes) {
  auto g = Group::dihedral(3);
  auto r = burnside_tambara(g);
  int top = g->whole();
  auto one = r->integer(top, 1);
  EXPECT_EQ(evaluate(*r, tsum({tvar(0, top), tvar(1, top)}, top), one, one), r->integer(top, 2));
}

TEST(Evaluate, NormOfTwo) {
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    auto r = burnside_tambara(g);
    int top = g->whole(), h = d2_of(*g);
    auto ring = BurnsideRing::get(g, top);
    auto want = BurnsideElement::integer(ring, 2) + BurnsideElement::basis(ring, h).scaled(2 * c_p(p)) +
                BurnsideElement::basis(ring, 0).scaled(d_p(p));
    auto one = r->integer(h, 1);
    EXPECT_EQ(evaluate(*r, reciprocity_sum(*g, top, h), one, one), want.coeffs) << p;
    EXPECT_EQ(r->brute_norm_of_sum(h, top, one, one), want.coeffs) << p;
  }
}

TEST(Evaluate, StreamingAgreesWithTree) {
  auto g = Group::symmetric(4);
  int top = g->whole();
  for (int h = 0; h < g->num_subgroups(); ++h) {
    if (g->sub_order(h) < 2) continue;
    auto expr = reciprocity_sum(*g, top, h);
    auto orbits = reciprocity_orbits(*g, top, h);
    std::vector<std::unique_ptr<TambaraInstance>> rs;
    rs.push_back(burnside_tambara(g));
    rs.push_back(fixed_point_tambara(g, 6));
    for (const auto& r : rs) {
      std::mt19937_64 rng(h);
      std::vector<std::pair<Vec, Vec>> in;
      for (int i = 0; i < 3; ++i) in.push_back({r->random_element(h, rng), r->random_element(h, rng)});
      auto got = evaluate_reciprocity(*r, top, h, orbits, in);
      for (int i = 0; i < 3; ++i) EXPECT_EQ(got[i], evaluate(*r, expr, in[i].first, in[i].second));
    }
  }
}

TEST(Evaluate, ZeroInputs) {
  auto g = Group::dihedral(5);
  auto r = burnside_tambara(g);
  int top = g->whole(), h = d2_of(*g);
  std::mt19937_64 rng(7);
  auto a = r->random_element(h, rng);
  auto zero = r->integer(h, 0);
  auto e = reciprocity_sum(*g, top, h);
  EXPECT_EQ(evaluate(*r, e, zero, a), r->norm(h, top, a));
  EXPECT_EQ(evaluate(*r, e, a, zero), r->norm(h, top, a));
}

TEST(Instance, BruteNormIsCoinduction) {
  auto g = Group::dihedral(3);
  auto r = burnside_tambara(g);
  int h = d2_of(*g);
  auto x = coinduce(GSet::trivial(g, h, 2), g->whole());
  auto one = r->integer(h, 1);
  EXPECT_EQ(r->brute_norm_of_sum(h, g->whole(), one, one), burnside_class(x).coeffs);
}

TEST(Instance, FixedPointPowers) {
  auto g = Group::dihedral(3);
  auto z = fixed_point_tambara(g, 0);
  int h = d2_of(*g);
  EXPECT_EQ(z->brute_norm_of_sum(h, g->whole(), {Int(2)}, {Int(1)}), Vec{Int(27)});
  EXPECT_EQ(z->tr(h, g->whole(), {Int(5)}), Vec{Int(15)});
  auto z4 = fixed_point_tambara(g, 4);
  EXPECT_EQ(z4->brute_norm_of_sum(h, g->whole(), {Int(2)}, {Int(1)}), Vec{Int(3)});
  EXPECT_THROW(fixed_point_tambara(g, 1), std::invalid_argument);
}

TEST(Verify, SmallGroups) {
  std::vector<GroupPtr> groups{Group::cyclic(6), Group::dihedral(3), Group::dihedral(4), Group::alternating(4),
                               Group::symmetric(4)};
  for (const auto& g : groups) {
    std::vector<std::unique_ptr<TambaraInstance>> rs;
    rs.push_back(burnside_tambara(g));
    for (long long n : {0LL, 4LL, 6LL}) rs.push_back(fixed_point_tambara(g, n));
    for (int h = 0; h < g->num_subgroups(); ++h) {
      if (g->local_rep(g->whole(), h) != h || g->sub_order(h) * 8 < g->order()) continue;
      for (const auto& r : rs) {
        auto c = verify_reciprocity(*r, g->whole(), h, 5, 11);
        EXPECT_EQ(c.failures, 0) << c.group << " " << c.sub << " " << c.instance << ": " << c.first_failure;
      }
    }
  }
}
