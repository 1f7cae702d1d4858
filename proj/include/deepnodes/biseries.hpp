#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deepnodes/error.hpp"
#include "deepnodes/rational.hpp"
#include "deepnodes/series.hpp"

namespace deepnodes {

/// Polynomial in t, lowest degree first, with no trailing zeros (zero is empty).
using TPoly = std::vector<Rational>;

namespace tpoly {

inline void trim(TPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Degree, with -1 for the zero polynomial.
inline long degree(const TPoly& p) { return static_cast<long>(p.size()) - 1; }

inline TPoly add(TPoly a, const TPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

inline TPoly scale(TPoly a, const Rational& c) {
  if (c.is_zero()) return {};
  for (auto& x : a) x *= c;
  return a;
}

inline TPoly negate(TPoly a) { return scale(std::move(a), -1); }

inline TPoly sub(TPoly a, const TPoly& b) { return add(std::move(a), negate(b)); }

inline TPoly mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly out = detail::convolve(a, b, a.size() + b.size() - 2);
  trim(out);
  return out;
}

/// Exact quotient a/d; throws NonExactDivision when d does not divide a.
inline TPoly divide_exact(TPoly a, const TPoly& d) {
  if (d.empty()) throw NonExactDivision("division by the zero t-polynomial");
  if (a.empty()) return {};
  if (d.size() == 1) return scale(std::move(a), Rational(1) / d[0]);
  if (a.size() < d.size()) throw NonExactDivision("t-polynomial quotient is not exact");
  TPoly q(a.size() - d.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + d.size() - 1] / d.back();
    for (std::size_t j = 0; j < d.size(); ++j) a[k + j] -= q[k] * d[j];
  }
  trim(a);
  if (!a.empty()) throw NonExactDivision("t-polynomial quotient is not exact");
  trim(q);
  return q;
}

inline Rational eval(const TPoly& p, const Rational& t) {
  Rational acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

inline TPoly derivative(const TPoly& p) {
  TPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(out);
  return out;
}

/// "7*t + 2*t^2 + t^3"; the zero polynomial prints as "0".
inline std::string to_string(const TPoly& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_zero()) deepnodes::detail::append_term(out, p[i], deepnodes::detail::monomial_text("t", i));
  return out.empty() ? "0" : out;
}

}  // namespace tpoly

/// Truncated series in z whose coefficients are polynomials in t.
///
/// The t-degree of the z^n coefficient is capped at n + excess(). The cap with
/// excess 0 always holds for the counted trees, so exceeding a declared cap is
/// a hard TDegreeOverflow rather than a silent truncation. Binary operations
/// declare the larger operand excess (plus the valuation shift for division);
/// `tighten()` lowers the declaration to what the data actually needs.
class BiSeries {
 public:
  BiSeries() : coeffs_(1) {}
  explicit BiSeries(std::size_t order, std::size_t excess = 0) : coeffs_(order + 1), excess_(excess) {}
  BiSeries(std::size_t order, std::vector<TPoly> coeffs, std::size_t excess = 0)
      : coeffs_(std::move(coeffs)), excess_(excess) {
    coeffs_.resize(order + 1);
    for (auto& p : coeffs_) tpoly::trim(p);
    check_cap();
  }

  /// The t-free series s viewed as a bivariate one.
  static BiSeries from_series(const Series& s) {
    BiSeries out(s.order());
    for (std::size_t n = 0; n <= s.order(); ++n)
      if (!s[n].is_zero()) out.coeffs_[n] = {s[n]};
    return out;
  }
  static BiSeries constant(const Rational& c, std::size_t order) {
    return from_series(Series::constant(c, order));
  }
  /// c * z^zdeg * t^tdeg; tdeg may exceed zdeg only with an explicit excess.
  static BiSeries monomial(const Rational& c, std::size_t zdeg, std::size_t tdeg, std::size_t order,
                           std::size_t excess = 0) {
    std::vector<TPoly> coeffs(order + 1);
    if (zdeg <= order && !c.is_zero()) {
      coeffs[zdeg].assign(tdeg + 1, Rational());
      coeffs[zdeg][tdeg] = c;
    }
    return BiSeries(order, std::move(coeffs), excess);
  }
  static BiSeries zt(std::size_t order) { return monomial(1, 1, 1, order); }

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t excess() const { return excess_; }
  std::span<const TPoly> coeffs() const { return coeffs_; }

  const TPoly& coeff(std::size_t n) const {
    if (n > order())
      throw OutOfRange("coefficient z^" + std::to_string(n) + " beyond order " + std::to_string(order()));
    return coeffs_[n];
  }
  const TPoly& operator[](std::size_t n) const { return coeffs_[n]; }

  std::optional<std::size_t> valuation() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (!coeffs_[n].empty()) return n;
    return std::nullopt;
  }
  bool is_zero() const { return !valuation().has_value(); }

  /// Smallest excess the stored coefficients satisfy.
  std::size_t needed_excess() const {
    long need = 0;
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      need = std::max(need, tpoly::degree(coeffs_[n]) - static_cast<long>(n));
    return static_cast<std::size_t>(need);
  }
  /// Redeclare the excess as the minimum the data needs.
  BiSeries tighten() const {
    BiSeries out = *this;
    out.excess_ = needed_excess();
    return out;
  }
  /// Same data, declared excess `excess`; throws TDegreeOverflow when it does not fit.
  BiSeries with_excess(std::size_t excess) const {
    BiSeries out = *this;
    out.excess_ = excess;
    out.check_cap();
    return out;
  }

  BiSeries truncate(std::size_t order) const {
    if (order > this->order())
      throw OutOfRange("cannot raise truncation order " + std::to_string(this->order()) + " to " +
                       std::to_string(order));
    return BiSeries(order, std::vector<TPoly>(coeffs_.begin(), coeffs_.begin() + order + 1), excess_);
  }

  BiSeries shift_up(std::size_t k) const {
    std::vector<TPoly> c(k);
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return BiSeries(order() + k, std::move(c), excess_ > k ? excess_ - k : 0);
  }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) { return a.zip(b, tpoly::add); }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a.zip(b, tpoly::sub); }
  friend BiSeries operator-(BiSeries a) {
    for (auto& p : a.coeffs_) p = tpoly::negate(std::move(p));
    return a;
  }
  friend BiSeries operator+(const BiSeries& a, const Rational& c) { return a + constant(c, a.order()); }
  friend BiSeries operator+(const Rational& c, const BiSeries& a) { return a + constant(c, a.order()); }
  friend BiSeries operator-(const BiSeries& a, const Rational& c) { return a - constant(c, a.order()); }
  friend BiSeries operator-(const Rational& c, const BiSeries& a) { return constant(c, a.order()) - a; }
  friend BiSeries operator*(BiSeries a, const Rational& c) {
    for (auto& p : a.coeffs_) p = tpoly::scale(std::move(p), c);
    return a;
  }
  friend BiSeries operator*(const Rational& c, BiSeries a) { return std::move(a) * c; }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    const std::size_t order = std::min(a.order(), b.order());
    BiSeries out(order, std::max(a.excess_, b.excess_));
    for (std::size_t n = 0; n <= order; ++n) {
      TPoly acc;
      for (std::size_t i = 0; i <= n; ++i) {
        if (a.coeffs_[i].empty() || b.coeffs_[n - i].empty()) continue;
        acc = tpoly::add(std::move(acc), tpoly::mul(a.coeffs_[i], b.coeffs_[n - i]));
      }
      out.coeffs_[n] = std::move(acc);
    }
    out.check_cap();
    return out;
  }
  friend BiSeries operator*(const BiSeries& a, const Series& s) { return a * from_series(s); }
  friend BiSeries operator*(const Series& s, const BiSeries& a) { return a * from_series(s); }

  friend BiSeries operator/(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator/(const BiSeries& a, const Series& s) { return a / from_series(s); }

  /// Coefficient data and order; the declared excess is bookkeeping and not compared.
  friend bool operator==(const BiSeries& a, const BiSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// E.g. "z + z^2 + 3*z^3 + (6 + 4*t)*z^4".
  std::string to_string() const {
    std::string out;
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      const TPoly& p = coeffs_[n];
      const std::string zmono = detail::monomial_text("z", n);
      const long nonzero = std::count_if(p.begin(), p.end(), [](const Rational& c) { return !c.is_zero(); });
      if (nonzero == 0) continue;
      if (nonzero == 1) {
        const std::size_t i = static_cast<std::size_t>(
            std::find_if(p.begin(), p.end(), [](const Rational& c) { return !c.is_zero(); }) - p.begin());
        std::string mono = detail::monomial_text("t", i);
        if (!zmono.empty()) mono = mono.empty() ? zmono : mono + "*" + zmono;
        detail::append_term(out, p[i], mono);
        continue;
      }
      const std::string poly = "(" + tpoly::to_string(p) + ")";
      out += out.empty() ? "" : " + ";
      out += zmono.empty() ? poly : poly + "*" + zmono;
    }
    return out.empty() ? "0" : out;
  }

 private:
  template <typename Op>
  BiSeries zip(const BiSeries& b, Op op) const {
    const std::size_t order = std::min(this->order(), b.order());
    BiSeries out(order, std::max(excess_, b.excess_));
    for (std::size_t n = 0; n <= order; ++n) out.coeffs_[n] = op(coeffs_[n], b.coeffs_[n]);
    return out;
  }

  void check_cap() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (tpoly::degree(coeffs_[n]) > static_cast<long>(n + excess_))
        throw TDegreeOverflow("t-degree " + std::to_string(tpoly::degree(coeffs_[n])) + " at z^" +
                              std::to_string(n) + " exceeds cap " + std::to_string(n + excess_));
  }

  std::vector<TPoly> coeffs_;
  std::size_t excess_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const BiSeries& s) { return os << s.to_string(); }

/// Exact quotient a/b, shifting out a common z-valuation w. After the shift the
/// leading t-polynomial of b must divide every intermediate coefficient exactly.
inline BiSeries operator/(const BiSeries& a, const BiSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  const auto w = b.truncate(order).valuation();
  if (!w) throw DivisionByZeroSeries("division by a series that is zero to order " + std::to_string(order));
  for (std::size_t n = 0; n < *w; ++n)
    if (!a[n].empty())
      throw NonExactDivision("dividend has valuation " + std::to_string(n) + " below divisor valuation " +
                             std::to_string(*w));
  const std::size_t out_order = order - *w;
  const TPoly& lead = b[*w];
  std::vector<TPoly> q(out_order + 1);
  for (std::size_t n = 0; n <= out_order; ++n) {
    TPoly acc = a[n + *w];
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j].empty() || b[n + *w - j].empty()) continue;
      acc = tpoly::sub(std::move(acc), tpoly::mul(q[j], b[n + *w - j]));
    }
    q[n] = tpoly::divide_exact(std::move(acc), lead);
  }
  return BiSeries(out_order, std::move(q), std::max(a.excess(), b.excess()) + *w);
}

/// Coefficient-wise derivative in t.
inline BiSeries d_dt(const BiSeries& a) {
  std::vector<TPoly> c(a.order() + 1);
  for (std::size_t n = 0; n <= a.order(); ++n) c[n] = tpoly::derivative(a[n]);
  return BiSeries(a.order(), std::move(c), a.excess());
}

/// Substitutes t := t0.
inline Series eval_t(const BiSeries& a, const Rational& t0) {
  std::vector<Rational> c(a.order() + 1);
  for (std::size_t n = 0; n <= a.order(); ++n) c[n] = tpoly::eval(a[n], t0);
  return Series(a.order(), std::move(c));
}

inline BiSeries pow(const BiSeries& base, unsigned exponent) {
  BiSeries result = BiSeries::constant(1, base.order()).with_excess(base.excess());
  BiSeries b = base;
  while (exponent > 0) {
    if (exponent & 1u) result = result * b;
    exponent >>= 1u;
    if (exponent > 0) b = b * b;
  }
  return result;
}

}  // namespace deepnodes
