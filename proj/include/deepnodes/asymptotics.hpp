#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "deepnodes/error.hpp"
#include "deepnodes/genfun.hpp"
#include "deepnodes/rational.hpp"

namespace deepnodes {

/// One line of the average-deepest-nodes table.
struct RatioRow {
  std::size_t n = 0;
  BigInt deepest_total;
  BigInt trees;
  Rational ratio;
  std::string ratio_text;  // `ratio` rounded half-up to a fixed number of digits
};

inline constexpr unsigned kRatioDigits = 6;

/// Rows n = 1..max_n from the exact coefficients of D(z) and A(z).
inline std::vector<RatioRow> ratio_table(std::size_t max_n, unsigned digits = kRatioDigits) {
  if (max_n < 1) throw OutOfRange("ratio table needs max_n >= 1");
  const Series d = gf_dG(max_n, DGRoute::closed_sum);
  const Series a = gf_A(max_n);
  std::vector<RatioRow> rows;
  rows.reserve(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) {
    RatioRow row;
    row.n = n;
    row.deepest_total = d[n].numerator();
    row.trees = a[n].numerator();
    row.ratio = Rational(row.deepest_total, row.trees);
    row.ratio_text = to_decimal(row.ratio, digits);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GapReport {
  std::size_t n_small = 0;
  std::size_t n_large = 0;
  Rational gap_small;  // |ratio(n_small) - 5/3|
  Rational gap_large;
  bool shrinks = false;  // gap_large < gap_small
};

/// Compares the distance of the average to 5/3 at two table rows.
inline GapReport limit_gap_check(const std::vector<RatioRow>& table, std::size_t n_small, std::size_t n_large) {
  if (n_small < 1 || n_small >= n_large) throw OutOfRange("need 1 <= n_small < n_large");
  if (n_large > table.size())
    throw InsufficientOrder("table has " + std::to_string(table.size()) + " rows, need " + std::to_string(n_large));
  const Rational limit(5, 3);
  GapReport r;
  r.n_small = n_small;
  r.n_large = n_large;
  r.gap_small = abs(table[n_small - 1].ratio - limit);
  r.gap_large = abs(table[n_large - 1].ratio - limit);
  r.shrinks = r.gap_large < r.gap_small;
  return r;
}

/// v together with q = v(2+v)/(1+2v), delta = v(2v+1)/(v+2) and w = -ln q.
struct NumericPoint {
  double v = 0;
  double q = 0;
  double delta = 0;
  double w = 0;

  static NumericPoint at(double v) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("v must lie in (0, 1), got " + std::to_string(v));
    NumericPoint p;
    p.v = v;
    p.q = v * (2 + v) / (1 + 2 * v);
    p.delta = v * (2 * v + 1) / (v + 2);
    p.w = -std::log(p.q);
    return p;
  }
};

/// F(v) = (1 - v^2)^2 / ((v+2) v (2v+1)) * sum_{k>=1} k v^{2k} q^k / (1 - q^k).
///
/// Terms are positive and eventually decay like (v^2 q)^k; summation stops at
/// the first term below eps times the partial sum.
inline double eval_sum_F(double v, double eps = 1e-14) {
  const NumericPoint p = NumericPoint::at(v);
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const double ratio = v * v * p.q;
  double sum = 0;
  double power = 1;  // (v^2 q)^k
  double qk = 1;     // q^k
  for (long k = 1;; ++k) {
    power *= ratio;
    qk *= p.q;
    const double term = static_cast<double>(k) * power / (1 - qk);
    sum += term;
    if (term < eps * sum || term == 0) break;
  }
  const double v2 = v * v;
  return (1 - v2) * (1 - v2) / ((v + 2) * v * (2 * v + 1)) * sum;
}

/// c0 + c1 (1-v) + c2 (1-v)^2 fitted through three samples.
struct SingularFit {
  double c0 = 0;
  double c1 = 0;
  double c2 = 0;
};

namespace detail {

/// Solves the 3x3 system m * c = rhs by Gaussian elimination with partial pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs) {
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0) throw SingularSystem("fit system is singular");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < 3; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < 3; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::array<double, 3> out{};
  for (std::size_t r = 3; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t c = r + 1; c < 3; ++c) acc -= m[r][c] * out[c];
    out[r] = acc / m[r][r];
  }
  return out;
}

}  // namespace detail

/// Fits f by c0 + c1 x + c2 x^2 with x = 1 - v: interpolation through exactly
/// three points, least squares through more. Points are sorted first, so the
/// result does not depend on their order.
template <typename F>
SingularFit fit_quadratic_in_one_minus_v(std::vector<double> points, F&& f) {
  if (points.size() < 3) throw SingularSystem("the fit needs at least three points");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i] == points[i + 1]) throw SingularSystem("fit points must be distinct");
  std::vector<double> x(points.size());
  std::vector<double> y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x[i] = 1 - points[i];
    y[i] = f(points[i]);
  }
  SingularFit fit;
  if (points.size() == 3) {
    // Newton divided differences, expanded to monomials.
    const double d01 = (y[1] - y[0]) / (x[1] - x[0]);
    const double d12 = (y[2] - y[1]) / (x[2] - x[1]);
    const double d012 = (d12 - d01) / (x[2] - x[0]);
    fit.c2 = d012;
    fit.c1 = d01 - d012 * (x[0] + x[1]);
    fit.c0 = y[0] - d01 * x[0] + d012 * x[0] * x[1];
    return fit;
  }
  std::array<std::array<double, 3>, 3> normal{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::array<double, 3> row{1.0, x[i], x[i] * x[i]};
    for (std::size_t r = 0; r < 3; ++r) {
      rhs[r] += row[r] * y[i];
      for (std::size_t c = 0; c < 3; ++c) normal[r][c] += row[r] * row[c];
    }
  }
  const auto c = detail::solve3(normal, rhs);
  fit.c0 = c[0];
  fit.c1 = c[1];
  fit.c2 = c[2];
  return fit;
}

/// Fits eval_sum_F near v = 1. The linear coefficient c1 drives the average.
inline SingularFit singular_coefficient_fit(const std::vector<double>& points, double eps = 1e-14) {
  for (double v : points)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("fit point outside (0, 1)");
  return fit_quadratic_in_one_minus_v(points, [eps](double v) { return eval_sum_F(v, eps); });
}

}  // namespace deepnodes
