#include "equivar/burnside.hpp"
#include "equivar/mackey.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <set>

using namespace equivar;

namespace {

SparseVec e(int j) { return SparseVec{{j, Int(1)}}; }

// Z at every level, res = 1, tr = index, trivial conjugation; built by hand.
Mackey hand_constant_Z(const GroupPtr& g) {
  std::vector<Mackey::Level> levels;
  for (int s : g->subgroups_of(g->whole())) {
    Mackey::Level l;
    l.sub = s;
    l.labels = {"1"};
    l.rels = Lattice(1);
    levels.push_back(std::move(l));
  }
  Mackey m(g, g->whole(), std::move(levels));
  for (int s : m.levels()) {
    for (int u : g->subgroups_of(s)) {
      m.set_res(s, u, SparseMat::identity(1));
      m.set_tr(u, s, SparseMat::identity(1).scaled(g->sub_order(s) / g->sub_order(u)));
    }
    for (int x = 0; x < g->order(); ++x) m.set_conj(x, s, SparseMat::identity(1));
  }
  return m;
}

// Number of s-orbits on {(t, x) : t <= s, t fixes x}, by union-find over explicit pairs.
int span_count(const GSet& x, int s) {
  const auto& g = *x.group();
  std::vector<std::pair<int, int>> pairs;
  for (int t : g.subgroups_of(s))
    for (int p : x.fixed_points(t)) pairs.push_back({t, p});
  std::set<std::pair<int, int>> seen;
  int orbits = 0;
  for (auto pr : pairs) {
    if (seen.count(pr)) continue;
    ++orbits;
    for (int h : g.sub(s).elems) seen.insert({g.conj(h, pr.first), x.act(h, pr.second)});
  }
  return orbits;
}

bool reduces_equal(const Mackey& m, int s, const SparseVec& a, const SparseVec& b) {
  return m.rels(s).contains(sparse_add(a, b, -1));
}

void expect_axioms(const Mackey& m) {
  std::string why;
  EXPECT_TRUE(m.check_axioms(&why)) << why;
}

}  // namespace

TEST(Representable, PointGivesBurnsideRings) {
  for (int mm : {1, 2, 3, 4, 6}) {
    auto g = Group::dihedral(mm);
    auto a = Mackey::representable(GSet::point(g, g->whole()));
    for (int s : a.levels()) EXPECT_EQ(a.ngens(s), BurnsideRing::get(g, s)->rank());
    expect_axioms(a);
    std::string why;
    EXPECT_TRUE(a.check_green(&why)) << why;
  }
}

TEST(Representable, BurnsideOfD2Diagram) {
  auto g = Group::dihedral(1);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  int top = g->whole();
  ASSERT_EQ(a.ngens(top), 2);
  ASSERT_EQ(a.ngens(0), 1);
  int one = a.rep()->index(top, top, 0), free = a.rep()->index(top, 0, 0);
  EXPECT_EQ(a.res(top, 0).apply(e(one)), e(0));
  EXPECT_EQ(a.res(top, 0).apply(e(free)), (SparseVec{{0, Int(2)}}));
  EXPECT_EQ(a.tr(0, top).apply(e(0)), e(free));
  EXPECT_EQ(a.label(top, one), "[D2/D2]");
  EXPECT_EQ(a.value(top).describe(), "Z^2");
}

TEST(Representable, FreeOrbitOverD2HasOneSpanAtTop) {
  auto g = Group::dihedral(1);
  auto a = Mackey::representable(GSet::cosets(g, g->whole(), 0));
  EXPECT_EQ(a.ngens(g->whole()), 1);
  EXPECT_TRUE(a.value(g->whole()).isomorphic(FgAbelianGroup::free(1)));
  expect_axioms(a);
}

TEST(Representable, EmptySetGivesZero) {
  auto g = Group::dihedral(3);
  auto a = Mackey::representable(GSet::empty(g, g->whole()));
  for (int s : a.levels()) EXPECT_EQ(a.ngens(s), 0);
  expect_axioms(a);
}

TEST(Representable, DisjointUnionIsDirectSum) {
  auto g = Group::dihedral(3);
  int top = g->whole();
  auto x = GSet::cosets(g, top, g->parse_subgroup("D2"));
  auto y = GSet::cosets(g, top, dihedral_rotation_subgroup(*g, 3));
  auto ax = Mackey::representable(x), ay = Mackey::representable(y);
  auto axy = Mackey::representable(disjoint_union(x, y));
  for (int s : axy.levels()) EXPECT_EQ(axy.ngens(s), ax.ngens(s) + ay.ngens(s));
  expect_axioms(axy);
}

TEST(Representable, RankMatchesSpanEnumeration) {
  for (int mm : {2, 3, 4, 6}) {
    auto g = Group::dihedral(mm);
    int top = g->whole();
    for (int k : g->class_reps()) {
      auto x = disjoint_union(GSet::cosets(g, top, k), GSet::point(g, top));
      auto a = Mackey::representable(x);
      for (int s : a.levels()) EXPECT_EQ(a.ngens(s), span_count(x, s)) << g->subgroup_name(s);
      expect_axioms(a);
    }
  }
  auto s4 = Group::symmetric(4);
  auto x = GSet::cosets(s4, s4->whole(), s4->class_reps()[3]);
  auto a = Mackey::representable(x);
  for (int s : a.levels()) EXPECT_EQ(a.ngens(s), span_count(x, s));
  expect_axioms(a);
}

TEST(ConstantZ, RealizesToZAtBothLevels) {
  auto g = Group::dihedral(1);
  auto z = constant_Z(g);
  int top = g->whole();
  EXPECT_EQ(z.value(top).describe(), "Z");
  EXPECT_EQ(z.value(0).describe(), "Z");
  expect_axioms(z);
  std::string why;
  EXPECT_TRUE(z.check_green(&why)) << why;
  EXPECT_TRUE(reduces_equal(z, 0, z.res(top, 0).apply(z.unit(top)), e(0)));
  SparseVec t = z.tr(0, top).apply(e(0));
  EXPECT_TRUE(reduces_equal(z, top, t, sparse_add(z.unit(top), z.unit(top))));
  EXPECT_EQ(z.res(top, 0).apply(t), (SparseVec{{0, Int(2)}}));
  EXPECT_EQ(z.conj(g->tau(), 0).apply(e(0)), e(0));
}

TEST(ConstantZ, IsoToHandBuiltDiagram) {
  auto g = Group::dihedral(1);
  auto z = constant_Z(g);
  auto h = hand_constant_Z(g);
  auto fwd = morphism_from_images(z, h, {e(0)});
  MackeyMap bwd;
  for (int s : h.levels()) {
    SparseMat m(z.ngens(s), 1);
    m.cols[0] = s == g->whole() ? z.unit(s) : e(0);
    bwd.at.push_back(m);
  }
  auto c = certify_iso(z, h, fwd, bwd);
  EXPECT_TRUE(c.found) << c.reason;
}

TEST(ConstantZ, NotIsoToBurnside) {
  auto g = Group::dihedral(1);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  auto c = mackey_iso(constant_Z(g), a);
  EXPECT_FALSE(c.found);
  EXPECT_TRUE(c.invariants_differ);
}

TEST(Iso, IdentityCertificate) {
  auto g = Group::dihedral(3);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  auto c = mackey_iso(a, a);
  EXPECT_TRUE(c.found) << c.reason;
  auto j = nlohmann::json::parse(c.to_json());
  EXPECT_TRUE(j["found"].get<bool>());
}

TEST(Congruence, TwoMinusRotationCosetsOverD6) {
  auto g = Group::dihedral(3);
  int top = g->whole();
  auto a = Mackey::representable(GSet::point(g, top));
  int mu = dihedral_rotation_subgroup(*g, 3);
  SparseVec x = sparse_add(sparse_add(a.unit(top), a.unit(top)), e(a.rep()->index(top, mu, 0)), -1);
  auto q = a.quotient_by_congruence({{top, x}});
  EXPECT_EQ(q.value(top).describe(), "Z^2");
  // 1 and [D6/D2] form a basis of the top level.
  Lattice l = q.rels(top);
  l.add(q.unit(top));
  l.add(e(q.rep()->index(top, g->parse_subgroup("D2"), 0)));
  for (int j = 0; j < q.ngens(top); ++j) EXPECT_TRUE(l.contains(e(j)));
  EXPECT_EQ(l.rank(), q.ngens(top));
  expect_axioms(q);
  std::string why;
  EXPECT_TRUE(q.check_green(&why)) << why;
}

TEST(Congruence, OverD2GivesConstantZ) {
  auto g = Group::dihedral(1);
  int top = g->whole();
  auto a = Mackey::representable(GSet::point(g, top));
  SparseVec x = sparse_add(sparse_add(a.unit(top), a.unit(top)), e(a.rep()->index(top, 0, 0)), -1);
  auto q = a.quotient_by_congruence({{top, x}});
  EXPECT_TRUE(mackey_iso(q, constant_Z(g)).found);
}

TEST(Congruence, ByZeroIsIdentity) {
  auto g = Group::dihedral(3);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  auto q = a.quotient_by_congruence({{g->whole(), SparseVec{}}});
  for (int s : a.levels()) EXPECT_EQ(q.rels(s).rank(), 0);
}

TEST(Congruence, RejectsFunctorWithoutGreenData) {
  auto g = Group::dihedral(1);
  auto a = Mackey::representable(GSet::cosets(g, g->whole(), 0));
  EXPECT_THROW(a.quotient_by_congruence({{0, e(0)}}), std::logic_error);
}

TEST(FixedPoints, BurnsideOfD6OverRotations) {
  auto g = Group::dihedral(3);
  auto q = Group::dihedral(1);
  auto pi = dihedral_quotient(g, q);
  int mu = dihedral_rotation_subgroup(*g, 3);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  auto f = a.fixed_points_functor(mu, pi);
  EXPECT_EQ(f.ngens(q->whole()), a.ngens(g->whole()));
  EXPECT_EQ(f.ngens(0), a.ngens(mu));
  EXPECT_EQ(f.res(q->whole(), 0), a.res(g->whole(), mu));
  EXPECT_EQ(f.conj(q->tau(), 0), a.conj(g->tau(), mu));
  expect_axioms(f);
}

TEST(FixedPoints, TrivialSubgroupIsIdentity) {
  auto g = Group::dihedral(3);
  auto same = Group::dihedral(3);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  auto f = a.fixed_points_functor(0, dihedral_quotient(g, same));
  for (int s : a.levels()) {
    EXPECT_EQ(f.ngens(s), a.ngens(s));
    for (int u : g->subgroups_of(s)) EXPECT_EQ(f.res(s, u), a.res(s, u));
  }
}

TEST(FixedPoints, ConstantZStaysConstant) {
  for (int p : {3, 5}) {
    auto g = Group::dihedral(p);
    auto d2 = Group::dihedral(1);
    auto f = hand_constant_Z(g).fixed_points_functor(dihedral_rotation_subgroup(*g, p), dihedral_quotient(g, d2));
    auto h = hand_constant_Z(d2);
    for (int s : f.levels())
      for (int u : d2->subgroups_of(s)) {
        EXPECT_EQ(f.res(s, u), h.res(s, u));
        EXPECT_EQ(f.tr(u, s), h.tr(u, s));
      }
    expect_axioms(f);
  }
}

TEST(FixedPoints, RejectsNonNormal) {
  auto g = Group::dihedral(3);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  EXPECT_THROW(a.fixed_points_functor(g->parse_subgroup("D2"), dihedral_quotient(g, Group::dihedral(1))),
               std::invalid_argument);
}

TEST(GeometricFixedPoints, BurnsideGoesToBurnsideOfQuotient) {
  for (int p : {3, 5}) {
    auto g = Group::dihedral(p);
    auto d2 = Group::dihedral(1);
    auto a = Mackey::representable(GSet::point(g, g->whole()));
    auto phi = a.geometric_fixed_points(dihedral_rotation_subgroup(*g, p), dihedral_quotient(g, d2));
    auto b = Mackey::representable(GSet::point(d2, d2->whole()));
    auto c = mackey_iso(phi, b);
    EXPECT_TRUE(c.found) << c.reason;
    expect_axioms(phi);
  }
}

TEST(GeometricFixedPoints, FreeOrbitDies) {
  auto g = Group::dihedral(3);
  auto d2 = Group::dihedral(1);
  auto a = Mackey::representable(GSet::cosets(g, g->whole(), g->parse_subgroup("D2")));
  auto phi = a.geometric_fixed_points(dihedral_rotation_subgroup(*g, 3), dihedral_quotient(g, d2));
  for (int s : phi.levels()) EXPECT_TRUE(phi.value(s).is_zero());
}

TEST(Restriction, RestrictAndPullbackAgree) {
  auto g = Group::dihedral(3);
  auto d2 = Group::dihedral(1);
  int top = g->whole();
  auto a = Mackey::representable(GSet::point(g, top));
  int sub = g->parse_subgroup("D2");
  auto r = a.restrict(sub);
  auto pb = a.pullback(dihedral_embedding(d2, g));
  EXPECT_EQ(r.ngens(sub), 2);
  EXPECT_EQ(pb.ngens(d2->whole()), 2);
  expect_axioms(r);
  expect_axioms(pb);
  EXPECT_TRUE(mackey_iso(pb, Mackey::representable(GSet::point(d2, d2->whole()))).found);
}

TEST(Restriction, QuotientRelationsCarryOver) {
  auto g = Group::dihedral(3);
  auto d2 = Group::dihedral(1);
  int top = g->whole();
  auto a = Mackey::representable(GSet::point(g, top));
  int mu = dihedral_rotation_subgroup(*g, 3);
  SparseVec x = sparse_add(sparse_add(a.unit(top), a.unit(top)), e(a.rep()->index(top, mu, 0)), -1);
  auto q = a.quotient_by_congruence({{top, x}});
  auto pb = q.pullback(dihedral_embedding(d2, g));
  expect_axioms(pb);
  // 2 - res[D6/mu_3] = 2 - [D2/e], so the pullback is the constant Z.
  EXPECT_TRUE(mackey_iso(pb, constant_Z(d2)).found);
}

TEST(Morphisms, RejectsNonNatural) {
  auto g = Group::dihedral(1);
  auto a = Mackey::representable(GSet::point(g, g->whole()));
  MackeyMap f = identity_map(a);
  f.at[0] = f.at[0].scaled(2);
  EXPECT_FALSE(verify_morphism(a, a, f));
  EXPECT_TRUE(verify_morphism(a, a, identity_map(a)));
}

TEST(Output, JsonHasDiagramKeys) {
  auto g = Group::dihedral(1);
  auto z = constant_Z(g);
  auto j = nlohmann::json::parse(z.to_json());
  EXPECT_EQ(j["group"], "dihedral:2");
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_TRUE(j["res"].contains("e<D2"));
  EXPECT_TRUE(j["tr"].contains("e<D2"));
  EXPECT_NE(z.show().find("res to e"), std::string::npos);
}
