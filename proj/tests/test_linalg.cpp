#include "equivar/abgrp.hpp"
#include "equivar/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace equivar;

namespace {

bool is_diagonal_chain(const Mat& d) {
  Int prev = 1;
  int n = std::min(d.rows(), d.cols());
  bool zero_seen = false;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (int i = 0; i < n; ++i) {
    Int x = d(i, i);
    if (x < 0) return false;
    if (x == 0) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || x % prev != 0) return false;
    prev = x;
  }
  return true;
}

Mat random_unimodular(int n, std::mt19937& rng) {
  Mat u = Mat::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
  for (int step = 0; step < 3 * n; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (int k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

Mat random_matrix(int r, int c, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-6, 6);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = coef(rng);
  return m;
}

}  // namespace

TEST(Smith, ZeroMatrix) {
  SmithForm s = smith(Mat(3, 2));
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_TRUE(s.diag.empty());
}

TEST(Smith, TwoByTwoHandReduction) {
  // rows reduce to diag(2, 4) by hand: gcd of entries is 2, det = -8.
  SmithForm s = smith(Mat::from_rows({{2, 4}, {6, 8}}));
  ASSERT_EQ(s.diag.size(), 2u);
  EXPECT_EQ(s.diag[0], 2);
  EXPECT_EQ(s.diag[1], 4);
}

TEST(Smith, IdentityStaysIdentity) {
  SmithForm s = smith(Mat::identity(4));
  EXPECT_EQ(s.D, Mat::identity(4));
}

TEST(Smith, RandomTransformsAreExactAndUnimodular) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    Mat m = random_matrix(r, c, rng);
    SmithForm s = smith(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(det(s.U)), 1);
    EXPECT_EQ(abs(det(s.V)), 1);
    EXPECT_TRUE(is_diagonal_chain(s.D));
  }
}

TEST(Smith, KernelAndSolve) {
  Mat m = Mat::from_rows({{1, 1, 0}, {0, 2, 2}});
  Mat k = integer_kernel(m);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_TRUE((m * k).is_zero());
  Vec x;
  EXPECT_TRUE(solve_integer(m, {3, 4}, x));
  EXPECT_EQ(m * x, (Vec{3, 4}));
  EXPECT_FALSE(solve_integer(m, {0, 1}, x));
}

TEST(LatticeTest, ReduceIsCanonical) {
  Lattice l(3);
  l.add(Vec{2, 0, 0});
  l.add(Vec{1, 3, 0});
  EXPECT_TRUE(l.contains(Vec{3, 3, 0}));
  EXPECT_FALSE(l.contains(Vec{1, 0, 0}));
  EXPECT_EQ(l.reduce(Vec{5, 3, 1}), l.reduce(Vec{0, 0, 1}));
}

TEST(AbGroup, InvariantsOfSimpleGroups) {
  FgAbelianGroup g(2, Mat::from_rows({{0}, {2}}));
  auto inv = iso_invariants(g);
  EXPECT_EQ(inv.rank, 1);
  ASSERT_EQ(inv.torsion.size(), 1u);
  EXPECT_EQ(inv.torsion[0], 2);
  EXPECT_EQ(g.describe(), "Z + Z/2");
}

TEST(AbGroup, CokernelOfZeroMap) {
  auto z = FgAbelianGroup::free(1);
  auto f = make_hom(z, z, Mat(1, 1));
  EXPECT_TRUE(cokernel(f).isomorphic(z));
}

TEST(AbGroup, TensorOfCoprimeCyclicsVanishes) {
  EXPECT_TRUE(tensor(FgAbelianGroup::cyclic(2), FgAbelianGroup::cyclic(3)).is_zero());
  EXPECT_EQ(tensor(FgAbelianGroup::cyclic(4), FgAbelianGroup::cyclic(6)).describe(), "Z/2");
}

TEST(AbGroup, DirectSumAndKernel) {
  auto a = direct_sum(FgAbelianGroup::cyclic(2), FgAbelianGroup::cyclic(3));
  EXPECT_EQ(a.describe(), "Z/6");
  auto z2 = FgAbelianGroup::free(2);
  auto f = make_hom(z2, FgAbelianGroup::free(1), Mat::from_rows({{1, -1}}));
  Mat gens;
  auto k = kernel(f, &gens);
  EXPECT_EQ(k.describe(), "Z");
  EXPECT_TRUE((f.matrix * gens).is_zero());
}

TEST(AbGroup, MakeHomRejectsIllDefinedMap) {
  EXPECT_THROW(make_hom(FgAbelianGroup::cyclic(2), FgAbelianGroup::free(1), Mat::identity(1)), std::invalid_argument);
}

TEST(Homology, ZeroComplexGivesZ) {
  auto z = FgAbelianGroup::free(1), zero = FgAbelianGroup::free(0);
  auto h = homology(make_hom(zero, z, Mat(1, 0)), make_hom(z, zero, Mat(0, 1)));
  EXPECT_EQ(h.describe(), "Z");
}

TEST(Homology, DoublingGivesZ2) {
  auto z = FgAbelianGroup::free(1), zero = FgAbelianGroup::free(0);
  auto h = homology(make_hom(z, z, Mat::from_rows({{2}})), make_hom(z, zero, Mat(0, 1)));
  EXPECT_EQ(h.describe(), "Z/2");
}

TEST(Homology, ExactMiddle) {
  auto z = FgAbelianGroup::free(1), z2 = FgAbelianGroup::free(2);
  auto din = make_hom(z, z2, Mat::from_rows({{1}, {1}}));
  auto dout = make_hom(z2, z, Mat::from_rows({{1, -1}}));
  EXPECT_TRUE(homology(din, dout).is_zero());
}

TEST(Homology, RejectsNonComplex) {
  auto z = FgAbelianGroup::free(1);
  EXPECT_THROW(homology(make_hom(z, z, Mat::identity(1)), make_hom(z, z, Mat::identity(1))), std::invalid_argument);
}

TEST(AbGroupProperty, InvariantsIgnoreChangeOfPresentation) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 4, c = 1 + trial % 3;
    Mat rels = random_matrix(n, c, rng);
    Mat p = random_unimodular(n, rng), q = random_unimodular(c, rng);
    FgAbelianGroup a(n, rels), b(n, p * rels * q);
    EXPECT_EQ(iso_invariants(a), iso_invariants(b));
  }
}

TEST(AbGroupProperty, HomologyIgnoresChangeOfBasis) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // A --d1--> B --d2--> C with d2 d1 = 0 built as d1 = K * X for K spanning ker d2.
    Mat d2 = random_matrix(2, 4, rng);
    Mat k = integer_kernel(d2);
    Mat x = random_matrix(k.cols(), 3, rng);
    Mat d1 = k * x;
    auto a = FgAbelianGroup::free(3), b = FgAbelianGroup::free(4), c = FgAbelianGroup::free(2);
    auto h1 = homology(make_hom(a, b, d1), make_hom(b, c, d2));
    Mat p = random_unimodular(4, rng);
    // Conjugate the middle term: d1' = P d1, d2' = d2 P^{-1}; P^{-1} via solving.
    Mat pi(4, 4);
    for (int j = 0; j < 4; ++j) {
      Vec e(4, 0), col;
      e[j] = 1;
      ASSERT_TRUE(solve_integer(p, e, col));
      for (int i = 0; i < 4; ++i) pi(i, j) = col[i];
    }
    auto h2 = homology(make_hom(a, b, p * d1), make_hom(b, c, d2 * pi));
    EXPECT_EQ(iso_invariants(h1), iso_invariants(h2));
  }
}
