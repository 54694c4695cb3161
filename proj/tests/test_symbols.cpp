#include <gtest/gtest.h>

#include <map>
#include <random>
#include <tuple>

#include "logres/star.hpp"
#include "test_util.hpp"

using namespace logres;
using namespace logres::testing;

namespace {

// Cross-multiplication oracle for degree-d symbols whose |xi| powers are all even:
// H = N / q^M with N an explicit xi-polynomial, q = sum xi_a^2 expanded.
using Poly = std::map<std::tuple<Exps, Exps, Blade>, Scalar>;  // (x, xi, blade) -> coefficient

Poly poly_mul_q(const Poly& p, int n, int times) {
  Poly cur = p;
  for (int t = 0; t < times; ++t) {
    Poly next;
    for (const auto& [k, c] : cur)
      for (int a = 0; a < n; ++a) {
        auto key = std::make_tuple(std::get<0>(k), std::get<1>(k) + unit_exp(a, 2), std::get<2>(k));
        next[key] += c;
      }
    cur.clear();
    for (auto& [k, c] : next)
      if (!c.is_zero()) cur[k] = c;
  }
  return cur;
}

// Returns (N, M) with H = N / q^M (d_W = 1).
std::pair<Poly, int> as_fraction(const HomSymbol& h) {
  int M = 0;
  for (const auto& [k, m] : h.terms()) {
    int e = h.degree() - total_degree(k.xi);
    EXPECT_EQ(e % 2, 0) << "oracle needs even |xi| powers";
    M = std::max(M, -e / 2);
  }
  Poly N;
  for (const auto& [k, m] : h.terms()) {
    int e = h.degree() - total_degree(k.xi);
    Poly one{{{k.x, k.xi, k.blade}, m(0, 0)}};
    for (const auto& [kk, c] : poly_mul_q(one, h.n(), M + e / 2)) N[kk] += c;
  }
  Poly clean;
  for (auto& [k, c] : N)
    if (!c.is_zero()) clean[k] = c;
  return {clean, M};
}

bool oracle_equal(const HomSymbol& a, const HomSymbol& b) {
  if (a.degree() != b.degree()) return false;
  auto [na, ma] = as_fraction(a);
  auto [nb, mb] = as_fraction(b);
  return poly_mul_q(na, a.n(), mb) == poly_mul_q(nb, b.n(), ma);
}

// Rewrites each term t as t * (sum_a xi_a^2) / |xi|^2 without any simplification.
HomSymbol rewrite_with_q(const HomSymbol& h) {
  HomSymbol r(h.n(), h.dw(), h.degree());
  for (const auto& [k, m] : h.terms())
    for (int a = 0; a < h.n(); ++a) r.add_term(k.x, k.xi + unit_exp(a, 2), k.blade, m);
  return r;
}

HomSymbol even_random_hom(int n, int d, std::mt19937_64& rng) {
  HomSymbol raw = random_hom(n, 1, d, 2, rng, 5);
  HomSymbol h(n, 1, d);
  for (const auto& [k, m] : raw.terms())
    if ((d - total_degree(k.xi)) % 2 == 0) h.add_term(k.x, k.xi, k.blade, m);
  return h;
}

}  // namespace

TEST(HomSymbol, XiOneSquaredIsRewritten) {
  // xi_1^2 / |xi|^2 + xi_2^2 / |xi|^2 = 1 in n = 2
  HomSymbol h(2, 1, 0);
  h.add_term(0, X({2, 0}), 0, Scalar(1));
  h.add_term(0, X({0, 2}), 0, Scalar(1));
  EXPECT_EQ(h, mono(2, 0, 0, 0, Scalar(1)));
}

TEST(HomSymbol, CanonicalEqualityMatchesCrossMultiplication) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    int n = t % 2 ? 4 : 2, d = -2 * (t % 3);
    HomSymbol h = even_random_hom(n, d, rng);
    HomSymbol r = rewrite_with_q(h);
    EXPECT_TRUE(oracle_equal(h, r));
    EXPECT_EQ(h, r);
    HomSymbol other = even_random_hom(n, d, rng);
    EXPECT_EQ(h == other, oracle_equal(h, other));
    HomSymbol bumped = r + mono(n, d, 0, 0, Scalar(1));
    EXPECT_FALSE(h == bumped);
    EXPECT_FALSE(oracle_equal(h, bumped));
  }
}

TEST(Star, SingleLeibnizTerm) {
  // xi_1 * x_1 = x_1 xi_1 - i
  ClassicalSymbol s = sym({mono(2, 1, 0, X({1, 0}), Scalar(1))});
  ClassicalSymbol t = sym({mono(2, 0, X({1, 0}), 0, Scalar(1))});
  ClassicalSymbol want = sym({mono(2, 1, X({1, 0}), X({1, 0}), Scalar(1)), mono(2, 0, 0, 0, Scalar(0, -1))});
  EXPECT_TRUE(star(s, t, -4).equal_above(want, -4));
}

TEST(Star, ConstantScalarActsByMultiplication) {
  std::mt19937_64 rng(2);
  ClassicalSymbol t = random_symbol(4, 2, 0, -3, 3, rng);
  ClassicalSymbol c = ClassicalSymbol::constant(4, 2, Scalar(ratio(3, 7), -1));
  EXPECT_TRUE(star(c, t, -3).equal_above(t * Scalar(ratio(3, 7), -1), -3));
}

TEST(Star, BracketWithXiSquaredIsLPlusDelta) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    int n = t % 2 ? 4 : 2;
    ClassicalSymbol tau = random_symbol(n, 1 + t % 2, 0, -3, 3, rng);
    ClassicalSymbol lhs = bracket(ClassicalSymbol::xi_squared(n, tau.dw()), tau, -3);
    ClassicalSymbol rhs = ad_xi2(tau, 1);
    EXPECT_TRUE(lhs.equal_above(rhs, -3));
    ClassicalSymbol direct(n, tau.dw(), 1);
    for (const auto& [d, h] : tau.comps()) {
      direct.add(apply_L(h));
      direct.add(apply_Delta(h));
    }
    EXPECT_TRUE(direct.equal_above(rhs, -3));
  }
}

TEST(Star, AssociativeAboveFloor) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 6; ++t) {
    int n = t % 2 ? 4 : 2;
    ClassicalSymbol a = random_symbol(n, 2, 1, -3, 2, rng), b = random_symbol(n, 2, 0, -3, 2, rng),
                    c = random_symbol(n, 2, 1, -3, 2, rng);
    ClassicalSymbol l = star(star(a, b, -4), c, -3), r = star(a, star(b, c, -4), -3);
    EXPECT_EQ(l.floor(), -3);
    EXPECT_TRUE(l.equal_above(r, -3));
  }
}

TEST(AdXi2, Examples) {
  CliffordElem cg = CliffordElem::gamma(2, 1, 1);
  ClassicalSymbol t1 = sym({mono(2, 0, X({1, 0}), 0, Scalar(1)).left_mul(cg)});
  ClassicalSymbol want1 = sym({mono(2, 1, 0, X({1, 0}), Scalar(0, -2)).left_mul(cg)});
  EXPECT_TRUE(ad_xi2(t1, 1).equal_above(want1, -4));

  ClassicalSymbol t2 = sym({mono(2, 0, X({2, 0}), 0, Scalar(1)).left_mul(cg)});
  ClassicalSymbol want2 =
      sym({mono(2, 1, X({1, 0}), X({1, 0}), Scalar(0, -4)).left_mul(cg), mono(2, 0, 0, 0, Scalar(-2)).left_mul(cg)});
  EXPECT_TRUE(ad_xi2(t2, 1).equal_above(want2, -4));
  EXPECT_TRUE(ad_xi2(t2, 0).equal_above(t2, -4));
}

TEST(AdXi2, IteratedMatchesRepeatedBracket) {
  std::mt19937_64 rng(12);
  ClassicalSymbol tau = random_symbol(4, 1, 0, -2, 3, rng);
  ClassicalSymbol x2 = ClassicalSymbol::xi_squared(4, 1);
  ClassicalSymbol via_star = bracket(x2, bracket(x2, tau, -2), -2);
  EXPECT_TRUE(ad_xi2(tau, 2).equal_above(via_star, -2));
}

TEST(LogBracket, Examples) {
  ClassicalSymbol c = ClassicalSymbol::constant(2, 1, Scalar(5));
  EXPECT_TRUE(log_bracket(c, -4).is_zero());

  // c x_j -> -2i c xi_j / |xi|^2
  for (int j = 0; j < 2; ++j) {
    ClassicalSymbol t = sym({mono(2, 0, unit_exp(j), 0, Scalar(3))});
    ClassicalSymbol want = sym({mono(2, -1, 0, unit_exp(j), Scalar(0, -6))});
    EXPECT_TRUE(log_bracket(t, -4).equal_above(want, -4));
  }

  // c x_1 x_2 -> -2i c (x_2 xi_1 + x_1 xi_2)/|xi|^2 + 4c xi_1 xi_2/|xi|^4
  ClassicalSymbol t = sym({mono(2, 0, X({1, 1}), 0, Scalar(3))});
  ClassicalSymbol want = sym({mono(2, -1, X({0, 1}), X({1, 0}), Scalar(0, -6)),
                              mono(2, -1, X({1, 0}), X({0, 1}), Scalar(0, -6)),
                              mono(2, -2, 0, X({1, 1}), Scalar(12))});
  EXPECT_TRUE(log_bracket(t, -4).equal_above(want, -4));
}

TEST(LogBracket, LowersOrderByOne) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 8; ++t) {
    ClassicalSymbol tau = random_symbol(4, 1, -1, -4, 3, rng);
    ClassicalSymbol l = log_bracket(tau, -5);
    EXPECT_LE(l.leading_degree(-100), tau.leading_degree(-100) - 1);
  }
}

TEST(Parametrix, OfXiSquared) {
  ClassicalSymbol p = parametrix(ClassicalSymbol::xi_squared(4, 1), -8);
  EXPECT_TRUE(p.equal_above(ClassicalSymbol::xi2_power(4, 1, -1), -8));
}

TEST(Parametrix, GeometricSeriesForConstantShift) {
  Scalar c(ratio(2, 3), 1);
  ClassicalSymbol s = ClassicalSymbol::xi_squared(4, 1) + ClassicalSymbol::constant(4, 1, c);
  ClassicalSymbol want(4, 1, -2);
  for (int j = 0; 2 + 2 * j <= 8; ++j) want += ClassicalSymbol::xi2_power(4, 1, -1 - j) * (pow(-c, j));
  EXPECT_TRUE(parametrix(s, -8).equal_above(want, -8));
}

TEST(Parametrix, InvertsRandomLaplacian) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 4; ++t) {
    int n = t % 2 ? 4 : 2;
    ClassicalSymbol s = ClassicalSymbol::xi_squared(n, 2) + random_symbol(n, 2, 1, 0, 3, rng);
    ClassicalSymbol p = parametrix(s, -4);
    EXPECT_TRUE(star(s, p, -2).equal_above(ClassicalSymbol::constant(n, 2, Scalar(1)), -2));
  }
}

TEST(Parametrix, RejectsNonScalarLeadingSymbol) {
  ClassicalSymbol s = sym({mono(2, 2, 0, 0, Scalar(1), 1, 1)});
  EXPECT_THROW(parametrix(s, -4), std::domain_error);
  EXPECT_THROW(parametrix(ClassicalSymbol(2, 1, 2), -4), std::domain_error);
}

TEST(NeumannLog, ZeroAndScalarSeries) {
  EXPECT_TRUE(neumann_log(ClassicalSymbol(4, 1, -1), -4).is_zero());
  Scalar c(-3, ratio(1, 2));
  ClassicalSymbol u = ClassicalSymbol::xi2_power(4, 1, -1) * c;
  ClassicalSymbol want(4, 1, -2);
  for (int j = 1; 2 * j <= 8; ++j)
    want += ClassicalSymbol::xi2_power(4, 1, -j) * (pow(c, j) * Scalar(Rational(j % 2 ? 1 : -1, j)));
  EXPECT_TRUE(neumann_log(u, -8).equal_above(want, -8));
}

TEST(NeumannLog, RejectsNonNegativeOrder) {
  EXPECT_THROW(neumann_log(ClassicalSymbol::constant(2, 1, Scalar(1)), -4), std::domain_error);
}

TEST(NeumannLog, ExpLogRoundTrip) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 4; ++t) {
    int n = t % 2 ? 4 : 2, fl = -4;
    ClassicalSymbol u = random_symbol(n, 2, -1, fl, 3, rng);
    ClassicalSymbol l = neumann_log(u, fl);
    // star exponential sum_k l^k / k!
    ClassicalSymbol e = ClassicalSymbol::constant(n, 2, Scalar(1)), power = e;
    for (int k = 1; k <= -fl; ++k) {
      power = star(power, l, fl) * Scalar(Rational(1, k));
      e += power;
    }
    EXPECT_TRUE(e.equal_above(ClassicalSymbol::constant(n, 2, Scalar(1)) + u, fl));
  }
}
