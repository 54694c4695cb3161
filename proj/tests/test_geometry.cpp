#include <gtest/gtest.h>

#include <random>

#include "logres/geometry.hpp"
#include "logres/selftest.hpp"
#include "test_util.hpp"

using namespace logres;
using namespace logres::testing;

namespace {

GaugeField direct_sum(const GaugeField& a, const GaugeField& b) {
  GaugeField g(a.n, a.dw + b.dw);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      MatrixW m(a.dw + b.dw);
      for (int r = 0; r < a.dw; ++r)
        for (int c = 0; c < a.dw; ++c) m(r, c) = a.A_lin[i][k](r, c);
      for (int r = 0; r < b.dw; ++r)
        for (int c = 0; c < b.dw; ++c) m(a.dw + r, a.dw + c) = b.A_lin[i][k](r, c);
      g.A_lin[i][k] = m;
    }
  return g;
}

}  // namespace

TEST(CurvatureTensor, RandomTensorsSatisfySymmetries) {
  std::mt19937_64 rng(1);
  for (int n : {2, 4})
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(random_curvature(n, rng).violations().empty());
}

TEST(CurvatureTensor, ViolationsAreNamed) {
  CurvatureTensor R(4);
  R(0, 1, 2, 3) = 1;
  auto v = R.violations();
  ASSERT_FALSE(v.empty());
  EXPECT_THROW(R.validate(), InputError);
  bool named = false;
  for (const auto& s : v) named |= s.find("antisymmetry") != std::string::npos;
  EXPECT_TRUE(named) << v.front();
}

TEST(CurvatureTensor, BianchiViolationDetected) {
  // pair-symmetric and antisymmetric, but totally antisymmetric: breaks first Bianchi
  CurvatureTensor R(4);
  for (const auto& p : detail::all_perms(4)) R(p[0], p[1], p[2], p[3]) = detail::perm_sign(p);
  bool bianchi = false;
  for (const auto& s : R.violations()) bianchi |= s.find("Bianchi") != std::string::npos;
  EXPECT_TRUE(bianchi);
}

TEST(DGamma, ZeroCurvature) {
  DGamma g = dgamma_from_R(CurvatureTensor(4));
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(dgamma_sigma(g, a, i).is_zero());
}

TEST(DGamma, HalfCurvatureAndVanishingTrace) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    selftest::Property p;
    selftest::detail::dgamma_sigma_half_r(p, random_curvature(4, rng));
    EXPECT_TRUE(p.pass) << p.detail;
  }
}

TEST(DGamma, RSigmaLemma) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    selftest::Property p;
    selftest::detail::rsigma_lemma(p, random_curvature(4, rng));
    EXPECT_TRUE(p.pass) << p.detail;
  }
}

TEST(DiracSymbol, FlatIsScalarCurvatureOnly) {
  EXPECT_TRUE(dirac_squared_symbol(CurvatureTensor(4)).is_zero());
  EXPECT_EQ(dirac_squared_symbol(CurvatureTensor(4), Rational(5)), ClassicalSymbol::constant(4, 1, Scalar(5)));
}

TEST(DiracSymbol, FirstOrderPartVanishesAtCentre) {
  std::mt19937_64 rng(4);
  ClassicalSymbol q = dirac_squared_symbol(random_curvature(4, rng));
  HomSymbol first = q.comp(1);
  for (const auto& [k, m] : first.terms()) EXPECT_NE(k.x, 0u);
  EXPECT_FALSE(q.comp(1).is_zero());
}

TEST(DiracSymbol, LOfFirstOrderPartVanishes) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    ClassicalSymbol q = dirac_squared_symbol(random_curvature(4, rng));
    EXPECT_TRUE(apply_L(q.comp(1)).is_zero());
  }
}

TEST(DiracSymbol, ScalarTermInvisibleToSupertrace) {
  std::mt19937_64 rng(6);
  CurvatureTensor R = random_curvature(4, rng);
  PiScalar base = res_log(dirac_squared_symbol(R), 4, Method::taylor, TraceKind::str).residue;
  for (int s : {-3, 0, 7})
    EXPECT_EQ(res_log(dirac_squared_symbol(R, Rational(s)), 4, Method::taylor, TraceKind::str).residue, base);
}

TEST(Characteristic, ZeroData) {
  EXPECT_EQ(pontryagin_density(CurvatureTensor(4)), Rational(0));
  EXPECT_TRUE(chern_density(GaugeField(2, 2), 1).is_zero());
  EXPECT_TRUE(index_pure_dirac4(CurvatureTensor(4), Method::taylor).sres_log.is_zero());
  EXPECT_TRUE(index_pure_dirac4(CurvatureTensor(4), Method::taylor).matches);
  EXPECT_TRUE(index_flat_twisted(GaugeField(4, 2), Method::seeley).matches);
}

TEST(Characteristic, ChernInTwoDimensionsIsTraceOfF12) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 5; ++t) {
    GaugeField G = random_gauge(2, 2, rng);
    // 1/2 (tr F_12 - tr F_21) over the two permutations
    Scalar want = (G.F0(0, 1).trace() - G.F0(1, 0).trace()) * Scalar(ratio(1, 2));
    EXPECT_EQ(chern_density(G, 1), want);
    EXPECT_EQ(want, G.F0(0, 1).trace());
  }
}

TEST(Characteristic, DGammaResidueConstants) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    selftest::Property p;
    selftest::detail::dgamma_residue_constants(p, random_curvature(4, rng));
    EXPECT_TRUE(p.pass) << p.detail;
  }
}

TEST(FlatTwisted, LichnerowiczStarSquare) {
  std::mt19937_64 rng(9);
  for (int n : {2, 4}) {
    GaugeField G = random_gauge(n, 2, rng);
    ClassicalSymbol d = twisted_dirac_symbol(G);
    ClassicalSymbol rhs = ClassicalSymbol::xi_squared(n, 2) + twisted_flat_symbol(G);
    EXPECT_TRUE(star(d, d, -n).equal_above(rhs, -n));
  }
}

TEST(FlatTwisted, CurvatureTermAtCentre) {
  std::mt19937_64 rng(10);
  GaugeField G = random_gauge(4, 2, rng);
  HomSymbol want(4, 2, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) want.add_term(0, 0, (Blade{1} << i) | (Blade{1} << j), G.F0(i, j));
  HomSymbol got(4, 2, 0);
  HomSymbol c0 = twisted_flat_symbol(G).comp(0);
  for (const auto& [k, m] : c0.terms())
    if (k.x == 0 && blade_grade(k.blade) == 2) got.add_term(k.x, k.xi, k.blade, m);
  EXPECT_EQ(got, want);
  EXPECT_TRUE(twisted_flat_symbol(GaugeField(4, 2)).is_zero());
}

TEST(FlatTwisted, IndexDensityTwoDimensions) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    GaugeField G = random_gauge(2, 2, rng);
    // -2 i / (2 pi) * chern = -(i / pi) chern
    PiScalar want(Scalar(0, -1) * chern_density(G, 1), -1);
    for (Method m : {Method::ch, Method::taylor, Method::seeley}) {
      IndexReport r = index_flat_twisted(G, m);
      EXPECT_EQ(r.sres_log, want);
      EXPECT_EQ(r.index_density, Scalar(ratio(-1, 2)) * want);
    }
  }
}

TEST(FlatTwisted, IndexDensityFourDimensions) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 3; ++t) {
    GaugeField G = random_gauge(4, 2, rng);
    EXPECT_TRUE(index_flat_twisted(G, Method::taylor).matches);
    for (const auto& c : flat_subtop_contributions(G)) EXPECT_TRUE(c.is_zero());
  }
}

TEST(FlatTwisted, AdditiveOnDirectSums) {
  std::mt19937_64 rng(13);
  for (int n : {2, 4}) {
    GaugeField a = random_gauge(n, 1, rng), b = random_gauge(n, 2, rng);
    PiScalar sum = index_flat_twisted(a, Method::taylor).sres_log + index_flat_twisted(b, Method::taylor).sres_log;
    EXPECT_EQ(index_flat_twisted(direct_sum(a, b), Method::taylor).sres_log, sum);
  }
}

TEST(Invariance, Rotations) {
  std::mt19937_64 rng(14);
  CurvatureTensor R = random_curvature(4, rng);
  GaugeField G = random_gauge(2, 2, rng);
  PiScalar r0 = index_pure_dirac4(R, Method::taylor).sres_log, g0 = index_flat_twisted(G, Method::taylor).sres_log;
  for (int t = 0; t < 3; ++t) {
    RatMatrix O = random_rotation(4, rng);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational dot = 0;
        for (int k = 0; k < 4; ++k) dot += O[k][i] * O[k][j];
        EXPECT_EQ(dot, Rational(i == j ? 1 : 0));
      }
    CurvatureTensor RO = rotate(R, O);
    EXPECT_TRUE(RO.violations().empty());
    EXPECT_EQ(pontryagin_density(RO), pontryagin_density(R));
    EXPECT_EQ(index_pure_dirac4(RO, Method::taylor).sres_log, r0);
    EXPECT_EQ(index_flat_twisted(rotate(G, random_rotation(2, rng)), Method::taylor).sres_log, g0);
  }
}

// The engine's dim-4 value against the standard A-hat normalisation: the index density
// is p_1-part of A-hat = -p_1/24 with p_1 = -tr(R^2)/(8 pi^2), i.e. tr(R^2)/(192 pi^2).
// With the pontryagin_density normalisation this gives sres(log D^2) = -P/(96 pi^2).
TEST(PureDirac4, StandardAhatNormalisation) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 3; ++t) {
    CurvatureTensor R = random_curvature(4, rng);
    Rational P = pontryagin_density(R);
    for (Method m : {Method::ch, Method::taylor, Method::seeley}) {
      IndexReport r = index_pure_dirac4(R, m);
      EXPECT_EQ(r.sres_log, PiScalar(Scalar(-P / 96), -2));
      EXPECT_EQ(r.index_density, PiScalar(Scalar(P / 192), -2));
    }
  }
}

TEST(PureDirac4, ReducedFormulaWeights) {
  std::mt19937_64 rng(16);
  CurvatureTensor R = random_curvature(4, rng);
  ReducedReport rep = reduced_dirac4(R);
  // the Taylor weight of ad^2 is 2!/(2! * 3) = 1/3
  ASSERT_TRUE(rep.reconciling_weight.has_value());
  EXPECT_EQ(*rep.reconciling_weight, ratio(1, 3));
  EXPECT_EQ(Scalar(ratio(-1, 2)) * rep.delta_term + Scalar(ratio(1, 3)) * rep.lsquare_term, rep.general);
  EXPECT_TRUE(reduced_dirac4(CurvatureTensor(4)).matches);
}

TEST(PureDirac4, RejectsOtherDimensions) {
  EXPECT_THROW(index_pure_dirac4(CurvatureTensor(2), Method::taylor), InputError);
}
