#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deepnodes/error.hpp"
#include "deepnodes/rational.hpp"

namespace deepnodes {

namespace detail {

/// Coefficients rescaled to integers over one common denominator.
struct ScaledInts {
  std::vector<BigInt> ints;
  BigInt den = 1;
};

inline ScaledInts scale_to_ints(std::span<const Rational> coeffs) {
  ScaledInts out;
  for (const auto& c : coeffs) {
    const BigInt d = c.denominator();
    if (d != 1) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), d.get_mpz_t());
  }
  out.ints.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.is_integer())
      out.ints.push_back(c.numerator() * out.den);
    else
      out.ints.push_back(c.numerator() * (out.den / c.denominator()));
  }
  return out;
}

/// Truncated Cauchy product of two coefficient arrays, keeping indices 0..order.
inline std::vector<Rational> convolve(std::span<const Rational> a, std::span<const Rational> b,
                                      std::size_t order) {
  const ScaledInts sa = scale_to_ints(a);
  const ScaledInts sb = scale_to_ints(b);
  const BigInt den = sa.den * sb.den;
  std::vector<Rational> out(order + 1);
  BigInt acc;
  for (std::size_t n = 0; n <= order; ++n) {
    acc = 0;
    const std::size_t lo = n >= sb.ints.size() ? n - (sb.ints.size() - 1) : 0;
    const std::size_t hi = std::min(n, sa.ints.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      if (sgn(sa.ints[i]) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), sa.ints[i].get_mpz_t(), sb.ints[n - i].get_mpz_t());
    }
    if (sgn(acc) != 0) out[n] = Rational(acc, den);
  }
  return out;
}

}  // namespace detail

/// Truncated power series  c_0 + c_1 z + ... + c_N z^N + O(z^{N+1}).
///
/// Binary operations yield the smaller of the two operand orders.
class Series {
 public:
  Series() : coeffs_(1) {}
  explicit Series(std::size_t order) : coeffs_(order + 1) {}
  /// Missing trailing coefficients are zero; extra ones are dropped.
  Series(std::size_t order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
  }
  Series(std::size_t order, std::initializer_list<long> coeffs)
      : Series(order, std::vector<Rational>(coeffs.begin(), coeffs.end())) {}

  static Series constant(const Rational& c, std::size_t order) {
    Series s(order);
    s.coeffs_[0] = c;
    return s;
  }
  static Series one(std::size_t order) { return constant(1, order); }
  static Series monomial(const Rational& c, std::size_t degree, std::size_t order) {
    Series s(order);
    if (degree <= order) s.coeffs_[degree] = c;
    return s;
  }
  static Series z(std::size_t order) { return monomial(1, 1, order); }

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  const Rational& coeff(std::size_t n) const {
    if (n > order())
      throw OutOfRange("coefficient z^" + std::to_string(n) + " beyond order " +
                       std::to_string(order()));
    return coeffs_[n];
  }
  const Rational& operator[](std::size_t n) const { return coeffs_[n]; }

  /// Smallest exponent with a nonzero coefficient; empty when zero to its order.
  std::optional<std::size_t> valuation() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (!coeffs_[n].is_zero()) return n;
    return std::nullopt;
  }
  bool is_zero() const { return !valuation().has_value(); }
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_integer(); });
  }

  Series truncate(std::size_t order) const {
    if (order > this->order())
      throw OutOfRange("cannot raise truncation order " + std::to_string(this->order()) + " to " +
                       std::to_string(order));
    return Series(order, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  /// z^k * this; the order grows by k because the product is known exactly that far.
  Series shift_up(std::size_t k) const {
    std::vector<Rational> c(k);
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Series(order() + k, std::move(c));
  }

  Series& operator+=(const Series& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
    return *this;
  }
  Series& operator-=(const Series& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= o.coeffs_[n];
    return *this;
  }
  Series& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator-(Series a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend Series operator+(Series a, const Rational& c) { a.coeffs_[0] += c; return a; }
  friend Series operator+(const Rational& c, Series a) { a.coeffs_[0] += c; return a; }
  friend Series operator-(Series a, const Rational& c) { a.coeffs_[0] -= c; return a; }
  friend Series operator-(const Rational& c, Series a) { return -(std::move(a) - c); }

  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t order = std::min(a.order(), b.order());
    return Series(order, detail::convolve(a.coeffs_, b.coeffs_, order));
  }
  friend Series operator/(const Series& a, const Series& b);

  friend bool operator==(const Series& a, const Series& b) = default;

  /// Human-readable polynomial, e.g. "1 - 3*z - 2*z^2"; the O-term is omitted.
  std::string to_string(const std::string& var = "z") const;

 private:
  std::vector<Rational> coeffs_;
};

namespace detail {

inline std::string monomial_text(const std::string& var, std::size_t n) {
  if (n == 0) return "";
  if (n == 1) return var;
  return var + "^" + std::to_string(n);
}

/// Appends "c*mono" to out, handling signs and unit coefficients.
inline void append_term(std::string& out, const Rational& c, const std::string& mono) {
  const bool neg = c.sign() < 0;
  const Rational mag = abs(c);
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mono.empty())
    out += mag.to_string();
  else if (mag == 1)
    out += mono;
  else
    out += mag.to_string() + "*" + mono;
}

}  // namespace detail

inline std::string Series::to_string(const std::string& var) const {
  std::string out;
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (!coeffs_[n].is_zero()) detail::append_term(out, coeffs_[n], detail::monomial_text(var, n));
  return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.to_string(); }

/// 1/b for b with nonzero constant term, by Newton iteration.
inline Series inverse(const Series& b) {
  if (b[0].is_zero()) throw NonExactDivision("inverse: zero constant term");
  const std::size_t order = b.order();
  Series inv = Series::constant(Rational(1) / b[0], 0);
  std::size_t prec = 0;
  while (prec < order) {
    prec = std::min(order, 2 * prec + 1);
    Series cur = Series(prec, std::vector<Rational>(inv.coeffs().begin(), inv.coeffs().end()));
    Series err = Series::one(prec) - b.truncate(prec) * cur;
    inv = cur + cur * err;
  }
  return inv;
}

/// Exact quotient a/b; the divisor may have positive valuation w as long as a
/// vanishes below w. The result has order min(order(a), order(b)) - w.
inline Series operator/(const Series& a, const Series& b) {
  const std::size_t order = std::min(a.order(), b.order());
  const auto w = b.truncate(order).valuation();
  if (!w) throw DivisionByZeroSeries("division by a series that is zero to order " + std::to_string(order));
  for (std::size_t n = 0; n < *w; ++n)
    if (!a[n].is_zero())
      throw NonExactDivision("dividend has valuation " + std::to_string(n) + " below divisor valuation " +
                             std::to_string(*w));
  const std::size_t out_order = order - *w;
  Series as(out_order, std::vector<Rational>(a.coeffs().begin() + static_cast<long>(*w),
                                             a.coeffs().begin() + static_cast<long>(order) + 1));
  Series bs(out_order, std::vector<Rational>(b.coeffs().begin() + static_cast<long>(*w),
                                             b.coeffs().begin() + static_cast<long>(order) + 1));
  return as * inverse(bs);
}

inline Series pow(const Series& base, unsigned exponent) {
  Series result = Series::one(base.order());
  Series b = base;
  while (exponent > 0) {
    if (exponent & 1u) result = result * b;
    exponent >>= 1u;
    if (exponent > 0) b = b * b;
  }
  return result;
}

/// Square root with constant term 1 of a series whose constant term is 1.
inline Series sqrt(const Series& a) {
  if (a[0] != 1) throw BadConstantTerm("sqrt: constant term is " + a[0].to_string() + ", expected 1");
  std::vector<Rational> s(a.order() + 1);
  s[0] = 1;
  for (std::size_t n = 1; n <= a.order(); ++n) {
    Rational acc = a[n];
    for (std::size_t j = 1; j < n; ++j) acc -= s[j] * s[n - j];
    s[n] = acc / 2;
  }
  return Series(a.order(), std::move(s));
}

/// The series v with v(0) = 0 and v = z (1 + 3v + v^2), i.e. z = v / (1 + 3v + v^2).
///
/// Each pass fixes one more coefficient, so the k-th pass works at order k.
inline Series solve_v(std::size_t order) {
  if (order < 1) throw OutOfRange("solve_v: order must be >= 1");
  Series v(0);
  for (std::size_t k = 1; k <= order; ++k) {
    // v at order k-1 is exact; z * (1 + 3v + v^2) is then exact to order k.
    Series rhs = Series::one(k - 1) + 3 * v + v * v;
    v = rhs.shift_up(1);
  }
  return v;
}

}  // namespace deepnodes
