#include <gtest/gtest.h>

#include "deepnodes/genfun.hpp"
#include "deepnodes/trees.hpp"

using namespace deepnodes;

namespace {

TPoly poly(std::initializer_list<long> c) {
  TPoly p(c.begin(), c.end());
  tpoly::trim(p);
  return p;
}

bool agree(const BiSeries& a, const BiSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return a.truncate(n) == b.truncate(n);
}

}  // namespace

TEST(GenFun, ACoefficients) {
  EXPECT_EQ(gf_A(8), Series(8, {0, 1, 1, 3, 10, 36, 137, 543, 2219}));
  EXPECT_EQ(gf_A(4).coeff(4), Rational(10));
}

TEST(GenFun, AFunctionalEquationAndKernelForm) {
  const std::size_t N = 40;
  const Series A = gf_A(N);
  const Series z = Series::z(N);
  EXPECT_EQ(A, -z + z * (2 - z) / (1 - A));
  EXPECT_EQ(A, z * (1 + solve_v(N)));
}

TEST(GenFun, KernelRootsProduct) {
  const KernelBundle k = KernelBundle::compute(25);
  const Series z = Series::z(25);
  EXPECT_EQ(k.lambda * k.mu, z * (2 - z));
  EXPECT_EQ(k.lambda + k.mu, 1 + z);
}

TEST(GenFun, HeightBoundedSmallCases) {
  EXPECT_EQ(gf_A_h(1, 10, Route::recursive), Series::z(10));
  EXPECT_EQ(gf_A_h(1, 10, Route::closed), Series::z(10));
  const Series A2 = gf_A_h(2, 10, Route::recursive);
  EXPECT_EQ(A2, Series::z(10) / Series(10, {1, -1}));
  EXPECT_EQ(A2[4], Rational(1));
}

TEST(GenFun, HeightBoundedRoutesAgree) {
  const std::size_t N = 30;
  const auto rec = A_h_sequence(20, N);
  for (std::size_t h = 1; h <= 20; ++h) {
    EXPECT_EQ(rec[h - 1], gf_A_h(h, N, Route::closed)) << "h = " << h;
    const HeightPair p = height_pair(h, N);
    EXPECT_EQ(rec[h - 1], p.f / p.g) << "h = " << h;
  }
}

TEST(GenFun, HeightPairRecurrence) {
  const std::size_t N = 12;
  const Series z = Series::z(N);
  for (std::size_t h = 2; h <= 8; ++h) {
    const HeightPair a = height_pair(h, N);
    const HeightPair b = height_pair(h + 1, N);
    EXPECT_EQ(b.f, z * a.f + z * (1 - z) * a.g);
    EXPECT_EQ(b.g, a.g - a.f);
  }
  EXPECT_EQ(height_pair(2, N).g, 1 - z);
}

TEST(GenFun, HeightBoundedAgreesWithAForSmallSizes) {
  const std::size_t N = 25;
  const Series A = gf_A(N);
  const auto rec = A_h_sequence(N, N);
  for (std::size_t h = 1; h <= N; ++h)
    for (std::size_t n = 0; n <= h; ++n) ASSERT_EQ(rec[h - 1][n], A[n]) << "h = " << h << ", n = " << n;
}

TEST(GenFun, PhExpansions) {
  EXPECT_EQ(gf_p_h(3, 4, Route::recursive).to_string(), "z + z^2 + (1 + 2*t)*z^3 + (1 + 3*t + 2*t^2)*z^4");
  EXPECT_EQ(gf_p_h(4, 4, Route::recursive)[4], poly({6, 4}));
  EXPECT_EQ(gf_p_h(4, 4, Route::closed)[4], poly({6, 4}));
  EXPECT_EQ(gf_p_h(5, 4, Route::recursive).to_string(), "z + z^2 + 3*z^3 + 10*z^4");
  EXPECT_EQ(gf_p_h(2, 4, Route::recursive).to_string(), "z + t*z^2 + t^2*z^3 + t^3*z^4");
  EXPECT_THROW(gf_p_h(1, 4, Route::closed), ClosedFormRange);
  EXPECT_EQ(gf_p_h(1, 4, Route::recursive), BiSeries::zt(4));
}

TEST(GenFun, PhClosedFormsAgreeWithRecursion) {
  const std::size_t N = 20;
  const auto rec = p_h_sequence(14, N);
  const BiSeries R = series_R(N);
  for (std::size_t h = 2; h <= 14; ++h) {
    EXPECT_TRUE(agree(rec[h - 1], p_h_closed(h, N, R))) << "h = " << h;
    EXPECT_TRUE(agree(rec[h - 1], p_h_closed_binomial(h, N))) << "h = " << h;
    EXPECT_TRUE(agree(rec[h - 1], p_h_closed_roots(h, N))) << "h = " << h;
  }
}

TEST(GenFun, PhAtZeroIsPreviousAtOne) {
  const auto rec = p_h_sequence(12, 18);
  for (std::size_t h = 2; h <= 12; ++h) EXPECT_EQ(eval_t(rec[h - 1], 0), eval_t(rec[h - 2], 1)) << "h = " << h;
}

TEST(GenFun, PhAtOneIsAh) {
  const std::size_t N = 18;
  const auto ps = p_h_sequence(12, N);
  const auto as = A_h_sequence(12, N);
  for (std::size_t h = 1; h <= 12; ++h) EXPECT_EQ(eval_t(ps[h - 1], 1), as[h - 1]) << "h = " << h;
}

TEST(GenFun, RForms) {
  const std::size_t N = 15;
  const BiSeries R = series_R(N);
  EXPECT_EQ(eval_t(R, 0), Series::one(N));
  EXPECT_EQ(R, series_R_summed(N));
  EXPECT_EQ(R, series_R_quotient(N));
}

TEST(GenFun, GCoefficientsAgainstBruteForce) {
  const std::size_t N = 9;
  const BiSeries rec = gf_G(N, GRoute::recursive);
  const BiSeries exp = gf_G(N, GRoute::explicit_sum);
  EXPECT_EQ(rec[1], poly({0, 1}));
  EXPECT_EQ(rec[4], poly({0, 7, 2, 1}));
  for (std::size_t n = 1; n <= N; ++n) {
    const TPoly brute = deepest_polynomial(n);
    EXPECT_EQ(rec[n], brute) << "n = " << n;
    EXPECT_EQ(exp[n], brute) << "n = " << n;
  }
}

TEST(GenFun, GRoutesAgreeAtThirty) {
  EXPECT_EQ(gf_G(30, GRoute::recursive), gf_G(30, GRoute::explicit_sum));
}

TEST(GenFun, DGRoutes) {
  const std::size_t N = 30;
  const Series a = gf_dG(N, DGRoute::derivative);
  const Series b = gf_dG(N, DGRoute::closed_sum);
  const Series c = gf_dG(N, DGRoute::level_recursion);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.truncate(4), Series(4, {0, 1, 1, 4, 14}));
  for (std::size_t n = 1; n <= 9; ++n) {
    long total = 0;
    for_each_tree(n, [&](const MarkedTree&, const TreeStats& s) { total += static_cast<long>(s.deepest); });
    EXPECT_EQ(a[n], Rational(total)) << "n = " << n;
  }
}

TEST(GenFun, DeltaSumEqualsVSum) {
  const KernelBundle k = KernelBundle::compute(40);
  EXPECT_EQ(closed_sum_delta(k), closed_sum_v(k));
}

TEST(GenFun, NonnegativeIntegerCoefficients) {
  const std::size_t N = 30;
  const Series A = gf_A(N);
  const Series dG = gf_dG(N, DGRoute::closed_sum);
  const BiSeries G = gf_G(N, GRoute::recursive);
  for (const auto& c : A.coeffs()) EXPECT_TRUE(c.is_integer() && c.sign() >= 0);
  for (const auto& c : dG.coeffs()) EXPECT_TRUE(c.is_integer() && c.sign() >= 0);
  for (const auto& p : G.coeffs())
    for (const auto& c : p) EXPECT_TRUE(c.is_integer() && c.sign() >= 0);
}

TEST(GenFun, IdentitySuitePassesAtSixty) {
  const auto checks = identity_suite(60);
  ASSERT_EQ(checks.size(), 9u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name;
}

TEST(GenFun, IdentitySuiteNamesTheBrokenIdentity) {
  KernelBundle k = KernelBundle::compute(20);
  k.delta = k.v * (2 * k.v + 1) / (k.v + 3);
  for (const auto& c : identity_suite(k)) EXPECT_EQ(c.passed, c.name != "delta*q = v^2") << c.name;
}
