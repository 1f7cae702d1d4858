#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "deepnodes/series.hpp"

using namespace deepnodes;

namespace {

Series random_series(std::mt19937& rng, std::size_t order) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> c;
  for (std::size_t i = 0; i <= order; ++i) c.emplace_back(num(rng), den(rng));
  return Series(order, std::move(c));
}

// v = z(1 + 3v + v^2) solved on plain integers, one coefficient per pass.
std::vector<long> fixed_point_oracle(std::size_t order) {
  std::vector<long> v(order + 1, 0);
  for (std::size_t pass = 0; pass < order; ++pass) {
    std::vector<long> next(order + 1, 0);
    for (std::size_t n = 1; n <= order; ++n) {
      long rhs = (n - 1 == 0 ? 1 : 0) + 3 * v[n - 1];
      for (std::size_t i = 0; i <= n - 1; ++i) rhs += v[i] * v[n - 1 - i];
      next[n] = rhs;
    }
    v = next;
  }
  return v;
}

}  // namespace

TEST(Series, AddCancelsAndHasIdentity) {
  const Series a(5, {1, 1});
  const Series b(5, {1, -1});
  EXPECT_EQ(a + b, Series::constant(2, 5));
  EXPECT_EQ(a + Series(5), a);
  EXPECT_EQ(a - a, Series(5));
}

TEST(Series, PolynomialFromPrimitives) {
  const Series z = Series::z(6);
  EXPECT_EQ(z * (2 - z), Series(6, {0, 2, -1}));
}

TEST(Series, ResultOrderIsMinimum) {
  const Series a = Series::one(3);
  const Series b = Series::one(7);
  EXPECT_EQ((a + b).order(), 3u);
  EXPECT_EQ((a * b).order(), 3u);
  EXPECT_EQ((b / a).order(), 3u);
}

TEST(Series, GeometricInverse) {
  const std::size_t N = 10;
  std::vector<Rational> ones(N + 1, Rational(1));
  const Series geometric(N, ones);
  EXPECT_EQ(Series(N, {1, -1}) * geometric, Series::one(N));
  EXPECT_EQ(Series::z(N) / Series(N, {1, -1}), geometric.shift_up(1).truncate(N));
}

TEST(Series, ValuationShiftedDivision) {
  const std::size_t N = 12;
  const Series v = solve_v(N);
  const Series z = Series::z(N);
  const Series num = z * (v * v - 1);
  const Series q = num / v;
  EXPECT_EQ(q.order(), N - 1);
  EXPECT_EQ(q[0], Rational(-1));
  EXPECT_EQ(q * v.truncate(N - 1), num.truncate(N - 1));
}

TEST(Series, DivisionErrors) {
  const Series zero(5);
  EXPECT_THROW(Series::one(5) / zero, DivisionByZeroSeries);
  EXPECT_THROW(Series::one(5) / Series::z(5), NonExactDivision);
  EXPECT_THROW(Series(5, {0, 1}) / Series(5, {0, 0, 1}), NonExactDivision);
}

TEST(Series, SqrtExamples) {
  EXPECT_EQ(sqrt(Series::one(8)), Series::one(8));
  EXPECT_EQ(sqrt(Series(8, {1, -2, 1})), Series(8, {1, -1}));
  const Series s = sqrt(Series(20, {1, -6, 5}));
  EXPECT_EQ(s * s, Series(20, {1, -6, 5}));
  EXPECT_EQ(s[0], Rational(1));
  EXPECT_EQ(s.truncate(3), Series(3, {1, -3, -2, -6}));
  EXPECT_THROW(sqrt(Series(4, {4, 1})), BadConstantTerm);
  EXPECT_THROW(sqrt(Series(4, {0, 1})), BadConstantTerm);
}

TEST(Series, SolveVMatchesFixedPointOracle) {
  EXPECT_EQ(solve_v(1), Series::z(1));
  EXPECT_EQ(solve_v(4), Series(4, {0, 1, 3, 10, 36}));
  const auto oracle = fixed_point_oracle(15);
  const Series v = solve_v(15);
  for (std::size_t n = 0; n <= 15; ++n) EXPECT_EQ(v[n], Rational(oracle[n])) << "n = " << n;
}

TEST(Series, SolveVSatisfiesDefiningEquation) {
  for (std::size_t N : {1u, 2u, 7u, 30u, 50u}) {
    const Series v = solve_v(N);
    EXPECT_EQ(v / (1 + 3 * v + v * v), Series::z(N)) << "N = " << N;
    EXPECT_EQ(Series::z(N) * (1 + 3 * v + v * v), v);
    EXPECT_TRUE(v.is_integral());
    for (const auto& c : v.coeffs()) EXPECT_GE(c.sign(), 0);
  }
}

TEST(Series, CoeffOutOfRange) {
  const Series s(3, {1, 2});
  EXPECT_EQ(s.coeff(1), Rational(2));
  EXPECT_EQ(s.coeff(3), Rational(0));
  EXPECT_THROW(s.coeff(4), OutOfRange);
  EXPECT_THROW(s.truncate(4), OutOfRange);
}

TEST(Series, Printing) {
  EXPECT_EQ(Series(5, {1, -3, -2}).to_string(), "1 - 3*z - 2*z^2");
  EXPECT_EQ(Series(3).to_string(), "0");
  EXPECT_EQ((Series::z(3) * Rational(-1, 2)).to_string(), "-1/2*z");
  EXPECT_EQ(Series(4, {0, 1, 1, 3}).to_string(), "z + z^2 + 3*z^3");
}

TEST(SeriesProperty, RingAxioms) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<std::size_t> ord(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const Series a = random_series(rng, ord(rng));
    const Series b = random_series(rng, ord(rng));
    const Series c = random_series(rng, ord(rng));
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(SeriesProperty, DivisionThenMultiplicationRestoresDividend) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> ord(1, 12);
  std::uniform_int_distribution<std::size_t> shift(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t N = ord(rng);
    const std::size_t w = std::min(shift(rng), N);
    Series b = random_series(rng, N);
    if (b[0].is_zero()) b = b + 1;
    b = b.shift_up(w).truncate(N);
    const Series a = random_series(rng, N).shift_up(w).truncate(N);
    const Series q = a / b;
    ASSERT_EQ(q.order(), N - w);
    ASSERT_EQ(q * b.truncate(N - w), a.truncate(N - w));
  }
}

TEST(SeriesProperty, SqrtSquaresBack) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> ord(0, 12);
  for (int trial = 0; trial < 100; ++trial) {
    Series a = random_series(rng, ord(rng));
    a = a - a[0] + 1;
    const Series s = sqrt(a);
    ASSERT_EQ(s * s, a);
    ASSERT_EQ(s[0], Rational(1));
  }
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal(Rational(7, 5), 6), "1.400000");
  EXPECT_EQ(to_decimal(Rational(4, 3), 6), "1.333333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 6), "0.666667");
  EXPECT_EQ(to_decimal(Rational(1), 6), "1.000000");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(6, -4).denominator(), BigInt(2));
}
