#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "logres/residue.hpp"
#include "logres/selftest.hpp"
#include "test_util.hpp"

using namespace logres;
using namespace logres::testing;

TEST(SphereMoment, Examples) {
  EXPECT_EQ(sphere_moment(4, X({2, 0, 0, 0})), PiScalar(Scalar(ratio(1, 2)), 2));
  EXPECT_EQ(sphere_moment(4, X({2, 2, 0, 0})), PiScalar(Scalar(ratio(1, 12)), 2));
  EXPECT_EQ(sphere_moment(4, 0), PiScalar(Scalar(2), 2));  // Vol(S^3)
  EXPECT_EQ(sphere_moment(2, 0), PiScalar(Scalar(2), 1));  // Vol(S^1)
  EXPECT_TRUE(sphere_moment(4, X({1, 1, 0, 0})).is_zero());
  EXPECT_TRUE(sphere_moment(6, X({3, 0, 0, 0, 0, 1})).is_zero());
}

TEST(SphereMoment, DeltaOverN) {
  // int xi_i xi_j = delta_ij Vol / n
  for (int n : {2, 4, 6})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        PiScalar want = i == j ? Scalar(Rational(1, n)) * sphere_moment(n, 0) : PiScalar();
        EXPECT_EQ(sphere_moment(n, unit_exp(i) + unit_exp(j)), want);
      }
}

TEST(SphereMoment, GaussianFactorizationOracle) {
  for (int n : {2, 4, 6})
    for (int total = 0; total <= 8; ++total)
      for (Exps a : exponents_of_degree(n, total)) EXPECT_EQ(sphere_moment(n, a), selftest::gaussian_moment(n, a));
}

TEST(SphereMoment, PermutationInvariant) {
  std::vector<int> a{4, 2, 0, 2};
  std::sort(a.begin(), a.end());
  PiScalar ref = sphere_moment(4, make_exps(a));
  do EXPECT_EQ(sphere_moment(4, make_exps(a)), ref);
  while (std::next_permutation(a.begin(), a.end()));
}

TEST(SphereMoment, UnitSphereRecursion) {
  for (int n : {2, 4, 6})
    for (int total = 0; total <= 6; total += 2)
      for (Exps a : exponents_of_degree(n, total)) {
        PiScalar sum;
        for (int i = 0; i < n; ++i) sum += sphere_moment(n, a + unit_exp(i, 2));
        EXPECT_EQ(sum, sphere_moment(n, a));
      }
}

TEST(SphereMoment, OddDimensionRejected) { EXPECT_THROW(sphere_moment(3, 0), std::invalid_argument); }

TEST(ResidueDensity, TopBladeSupertrace) {
  // |xi|^-4 gamma_1..gamma_4 (x) M, str -> (2pi)^-4 * 2pi^2 * (-4 tr M) = -tr M / (2 pi^2)
  MatrixW m(2);
  m(0, 0) = Scalar(3);
  m(1, 1) = Scalar(ratio(1, 2), 1);
  m(0, 1) = Scalar(7);
  HomSymbol h(4, 2, -4);
  h.add_term(0, 0, top_blade(4), m);
  ClassicalSymbol s(4, 2, -4);
  s.add(h);
  EXPECT_EQ(residue_density(s, TraceKind::str), PiScalar(m.trace() * Scalar(ratio(-1, 2)), -2));
}

TEST(ResidueDensity, ShortCliffordWordsHaveNoSupertrace) {
  std::mt19937_64 rng(9);
  HomSymbol h(4, 1, -4);
  for (Blade b = 0; b < top_blade(4); ++b) h.add_term(X({0, 0, 0, 0}), X({2, 0, 0, 0}), b, Scalar(rnd(rng), 1));
  ClassicalSymbol s(4, 1, -4);
  s.add(h);
  EXPECT_TRUE(residue_density(s, TraceKind::str).is_zero());
}

TEST(ResidueDensity, ZeroComponentAndLowOrder) {
  ClassicalSymbol zero(4, 1, 0, -4);
  EXPECT_TRUE(residue_density(zero, TraceKind::tr).is_zero());
  ClassicalSymbol low(4, 1, -5);
  low.add(mono(4, -5, 0, 0, Scalar(3)));
  EXPECT_TRUE(residue_density(low, TraceKind::tr).is_zero());
}

TEST(ResidueDensity, OnlyOriginContributes) {
  ClassicalSymbol s(2, 1, -2);
  s.add(mono(2, -2, X({1, 0}), 0, Scalar(5)));
  EXPECT_TRUE(residue_density(s, TraceKind::tr).is_zero());
}

TEST(ResidueDensity, ScalarTrace) {
  // n = 2: c |xi|^-2, tr -> (2pi)^-2 * 2pi * 2 * c = c / pi
  ClassicalSymbol s(2, 1, -2);
  s.add(mono(2, -2, 0, 0, Scalar(3)));
  EXPECT_EQ(residue_density(s, TraceKind::tr), PiScalar(Scalar(3), -1));
}

TEST(ResidueDensity, Linear) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    ClassicalSymbol a = random_symbol(4, 2, -4, -4, 1, rng), b = random_symbol(4, 2, -4, -4, 1, rng);
    Scalar c(rnd(rng), rnd(rng));
    for (TraceKind k : {TraceKind::tr, TraceKind::str})
      EXPECT_EQ(residue_density(a + b * c, k), residue_density(a, k) + c * residue_density(b, k));
  }
}

TEST(ResidueDensity, FloorAboveMinusNRejected) {
  ClassicalSymbol s(4, 1, 0, -3);
  EXPECT_THROW(residue_density(s, TraceKind::tr), std::invalid_argument);
}
