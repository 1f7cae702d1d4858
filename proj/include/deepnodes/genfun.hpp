#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "deepnodes/biseries.hpp"
#include "deepnodes/error.hpp"
#include "deepnodes/series.hpp"

// Generating functions for marked ordered trees.
//
//   A(z)      trees by size
//   A_h(z)    trees of height <= h
//   p_h(z,t)  trees of height <= h, t marking nodes on level h
//   G(z,t)    trees by size, t marking deepest nodes
//   D(z)      dG/dt at t = 1: total number of deepest nodes
//
// Every object has at least two independent routes so they can be checked
// against each other. The kernel substitution z = v / (1 + 3v + v^2) gives
// lambda/z = 2 + 1/v, mu/z = 2 + v and q = mu/lambda = v(2 + v)/(1 + 2v).

namespace deepnodes {

enum class Route { recursive, closed };
enum class GRoute { recursive, explicit_sum };
enum class DGRoute { derivative, closed_sum, level_recursion };

inline Series z_series(std::size_t order) { return Series::z(order); }

inline void require_integral(const Series& s, const std::string& what) {
  for (std::size_t n = 0; n <= s.order(); ++n)
    if (!s[n].is_integer())
      throw InvariantViolation(what + ": non-integer coefficient " + s[n].to_string() + " at z^" +
                               std::to_string(n));
}

inline void require_integral(const BiSeries& s, const std::string& what) {
  for (std::size_t n = 0; n <= s.order(); ++n)
    for (const auto& c : s[n])
      if (!c.is_integer())
        throw InvariantViolation(what + ": non-integer coefficient " + c.to_string() + " at z^" +
                                 std::to_string(n));
}

/// The auxiliary series of the kernel substitution, all to order N.
struct KernelBundle {
  std::size_t order = 0;
  Series v;
  Series S;  // sqrt(1 - 6z + 5z^2)
  Series lambda;
  Series mu;
  Series q;
  Series delta;

  static KernelBundle compute(std::size_t order) {
    KernelBundle k;
    k.order = order;
    const Series z = z_series(order);
    k.v = solve_v(order);
    k.S = sqrt(Series(order, {1, -6, 5}));
    k.lambda = (1 + z + k.S) * Rational(1, 2);
    k.mu = (1 + z - k.S) * Rational(1, 2);
    k.q = k.v * (2 + k.v) / (1 + 2 * k.v);
    k.delta = k.v * (2 * k.v + 1) / (k.v + 2);
    return k;
  }
};

/// A(z) = (1 - z - sqrt(1 - 6z + 5z^2)) / 2.
inline Series gf_A(std::size_t order) {
  const Series z = z_series(order);
  Series a = (1 - z - sqrt(Series(order, {1, -6, 5}))) * Rational(1, 2);
  require_integral(a, "A(z)");
  return a;
}

/// Numerator/denominator pair with A_h = f/g.
struct HeightPair {
  Series f;
  Series g;
};

/// f_1 = z, g_1 = 1, f_2 = z, g_2 = 1 - z;  f_{h+1} = z f_h + z(1-z) g_h,  g_{h+1} = g_h - f_h.
inline HeightPair height_pair(std::size_t h, std::size_t order) {
  if (h < 1) throw OutOfRange("height must be >= 1");
  const Series z = z_series(order);
  if (h == 1) return {z, Series::one(order)};
  HeightPair p{z, 1 - z};
  for (std::size_t k = 2; k < h; ++k) p = {z * p.f + z * (1 - z) * p.g, p.g - p.f};
  return p;
}

/// A_1..A_hmax by A_{h+1} = -z + z(2 - z)/(1 - A_h); element [h-1] is A_h.
inline std::vector<Series> A_h_sequence(std::size_t hmax, std::size_t order) {
  const Series z = z_series(order);
  const Series num = z * (2 - z);
  std::vector<Series> out{z};
  while (out.size() < hmax) out.push_back(-z + num / (1 - out.back()));
  return out;
}

inline Series gf_A_h(std::size_t h, std::size_t order, Route route) {
  if (h < 1) throw OutOfRange("height must be >= 1");
  if (route == Route::recursive) return A_h_sequence(h, order).back();
  const Series v = solve_v(order);
  const Series z = z_series(order);
  const Series a = pow(1 + 2 * v, static_cast<unsigned>(h - 1));
  const Series b = pow(v + 2, static_cast<unsigned>(h - 1));
  const Series vh = pow(v, static_cast<unsigned>(h));
  return z * (1 + v) * (a - vh * b) / (a - vh * v * b);
}

/// R = 1 + ((v-1)/v) * t(1+v)z / (1 - t(1+v)z).
///
/// R(z, t) starts with 1 - t at z^0, so it is declared with t-excess 1.
inline BiSeries series_R(std::size_t order) {
  const std::size_t work = order + 1;  // dividing by v costs one order
  const Series v = solve_v(work);
  const BiSeries u = BiSeries::zt(work) * (1 + v);
  const BiSeries w = u / (1 - u);
  return (1 + (v - 1) * w / v).with_excess(1);
}

/// R via its expansion 1 + ((v-1)/v) sum_{k>=1} (1+v)^k t^k z^k.
inline BiSeries series_R_summed(std::size_t order) {
  const std::size_t work = order + 1;
  const Series v = solve_v(work);
  const BiSeries u = BiSeries::zt(work) * (1 + v);
  BiSeries sum(work);
  BiSeries power = u;
  for (std::size_t k = 1; k <= work; ++k) {
    sum = sum + power;
    power = power * u;
  }
  return (1 + (v - 1) * sum / v).with_excess(1);
}

/// R as the quotient (-v^2 + vt - 3v + t - 1) / (v^2 t - v^2 + vt - 3v - 1).
inline BiSeries series_R_quotient(std::size_t order) {
  const Series v = solve_v(order);
  const BiSeries t = BiSeries::monomial(1, 0, 1, order, 1);
  const Series v2 = v * v;
  const BiSeries num = -BiSeries::from_series(v2) + t * v - BiSeries::from_series(3 * v) + t - 1;
  const BiSeries den = t * v2 - BiSeries::from_series(v2) + t * v - BiSeries::from_series(3 * v + 1);
  return (num / den).with_excess(1);
}

/// p_1..p_hmax by the recursion; element [h-1] is p_h.
inline std::vector<BiSeries> p_h_sequence(std::size_t hmax, std::size_t order) {
  const BiSeries z = BiSeries::from_series(z_series(order));
  const BiSeries num = BiSeries::from_series(z_series(order) * (2 - z_series(order)));
  std::vector<BiSeries> out{BiSeries::zt(order)};
  if (hmax >= 2) out.push_back(z / (1 - out.back()));
  while (out.size() < hmax) out.push_back((-z + num / (1 - out.back())).with_excess(0));
  return out;
}

/// Closed p_h = z(1+v) (1 - R v q^{h-2}) / (1 - R v^2 q^{h-2}) for h >= 2.
inline BiSeries p_h_closed(std::size_t h, std::size_t order, const BiSeries& R) {
  if (h < 2) throw ClosedFormRange("closed form of p_h needs h >= 2, got h = " + std::to_string(h));
  const Series v = solve_v(order);
  const Series z = z_series(order);
  const KernelBundle k = KernelBundle::compute(order);
  const Series qh = pow(k.q, static_cast<unsigned>(h - 2));
  const BiSeries Rv = (R.truncate(order) * (v * qh)).with_excess(0);
  const BiSeries num = 1 - Rv;
  const BiSeries den = 1 - (Rv * v);
  return ((z * (1 + v)) * (num / den)).with_excess(0);
}

inline BiSeries gf_p_h(std::size_t h, std::size_t order, Route route) {
  if (h < 1) throw OutOfRange("height must be >= 1");
  if (route == Route::recursive) return p_h_sequence(h, order).back();
  if (h < 2) throw ClosedFormRange("closed form of p_h needs h >= 2, got h = " + std::to_string(h));
  return p_h_closed(h, order, series_R(order));
}

namespace detail {

// P = v^2 t - v^2 + v t - 3v - 1 and Q = -v^2 + v t - 3v + t - 1.
inline std::pair<BiSeries, BiSeries> p_h_weights(const Series& v) {
  const std::size_t order = v.order();
  const BiSeries t = BiSeries::monomial(1, 0, 1, order, 1);
  const Series v2 = v * v;
  BiSeries P = (t * v2 + t * v - BiSeries::from_series(v2 + 3 * v + 1)).with_excess(0);
  BiSeries Q = t * v + t - BiSeries::from_series(v2 + 3 * v + 1);
  return {P, Q};
}

}  // namespace detail

/// Closed p_h written with powers of (1 + 2v) and (2 + v).
inline BiSeries p_h_closed_binomial(std::size_t h, std::size_t order) {
  if (h < 2) throw ClosedFormRange("closed form of p_h needs h >= 2");
  const Series v = solve_v(order);
  const Series z = z_series(order);
  const auto [P, Q] = detail::p_h_weights(v);
  const auto e = static_cast<unsigned>(h - 2);
  const BiSeries lead = P * pow(1 + 2 * v, e);
  const BiSeries tail = (Q * (pow(v, static_cast<unsigned>(h - 1)) * pow(2 + v, e))).with_excess(0);
  return ((z * (1 + v)) * ((lead - tail) / (lead - tail * v))).with_excess(0);
}

/// Closed p_h written with the characteristic roots lambda and mu.
inline BiSeries p_h_closed_roots(std::size_t h, std::size_t order) {
  if (h < 2) throw ClosedFormRange("closed form of p_h needs h >= 2");
  const KernelBundle k = KernelBundle::compute(order);
  const Series z = z_series(order);
  const auto [P, Q] = detail::p_h_weights(k.v);
  const auto e = static_cast<unsigned>(h - 2);
  const BiSeries lead = P * pow(k.lambda, e);
  const BiSeries tail = (Q * (k.v * pow(k.mu, e))).with_excess(0);
  return ((z * (1 + k.v)) * ((lead - tail) / (lead - tail * k.v))).with_excess(0);
}

/// G = zt + sum_{h>=2} (p_h(z,t) - p_h(z,0)); the h-th summand has valuation h.
inline BiSeries gf_G_recursive(std::size_t order) {
  const auto ps = p_h_sequence(order, order);
  BiSeries g = BiSeries::zt(order);
  for (std::size_t h = 2; h <= order; ++h) {
    const BiSeries& p = ps[h - 1];
    const BiSeries term = p - BiSeries::from_series(eval_t(p, 0));
    if (auto val = term.valuation(); val && *val < h)
      throw InvariantViolation("p_h(z,t) - p_h(z,0) has valuation below h = " + std::to_string(h));
    g = g + term;
  }
  return g.with_excess(0);
}

/// G = zt + (z(v^2-1)/v) sum_{1<=i<=k} C(k,i) X^i delta^k q^k / (1 - q^k),
/// X = ((v-1)/v) t(1+v)z / (1 - t(1+v)z).
///
/// X starts with -t at z^0, so the sum is taken as Y^i * delta^k q^k / v^i with
/// Y = vX = (v-1) t(1+v)z / (1 - t(1+v)z), which respects the t-degree cap.
/// delta^k q^k has valuation 2k; terms with 2k > N vanish to order N.
inline BiSeries gf_G_explicit(std::size_t order) {
  const std::size_t kmax = order / 2;
  const std::size_t work = order + 1 + kmax;  // /v^i costs i orders, the prefactor one more
  const KernelBundle kb = KernelBundle::compute(work);
  const Series& v = kb.v;
  const BiSeries u = BiSeries::zt(work) * (1 + v);
  const BiSeries Y = ((v - 1) * (u / (1 - u))).with_excess(0);

  // D_k = delta^k q^k / (1 - q^k) for every k whose valuation 2k stays within N.
  std::vector<Series> D;
  Series dq = Series::one(work);
  Series qk = Series::one(work);
  const Series delta_q = kb.delta * kb.q;
  for (std::size_t k = 1; k <= order; ++k) {
    dq = dq * delta_q;
    qk = qk * kb.q;
    const auto val = dq.valuation();
    if (val && *val < 2 * k)
      throw InvariantViolation("delta^k q^k has valuation below 2k at k = " + std::to_string(k));
    if (2 * k > order) break;
    D.push_back(dq / (1 - qk));
  }

  // sum_i Y^i * (sum_{k>=i} C(k,i) D_k) / v^i
  BiSeries sum(work - kmax);
  BiSeries Yi = BiSeries::constant(1, work);
  Series vi = Series::one(work);
  for (std::size_t i = 1; i <= D.size(); ++i) {
    Yi = Yi * Y;
    vi = vi * v;
    Series inner(work);
    Rational binom = 1;  // C(k, i), starting at k = i
    for (std::size_t k = i; k <= D.size(); ++k) {
      if (k > i) binom = binom * Rational(static_cast<long>(k), static_cast<long>(k - i));
      inner = inner + binom * D[k - 1];
    }
    sum = sum + Yi.truncate(work - kmax) * (inner / vi).truncate(work - kmax);
  }
  const Series z = z_series(work - kmax);
  const Series vw = v.truncate(work - kmax);
  const Series pref = z * (vw * vw - 1) / vw;
  const BiSeries g = BiSeries::zt(order) + (sum * pref).truncate(order);
  return g.with_excess(0);
}

inline BiSeries gf_G(std::size_t order, GRoute route) {
  const BiSeries g = route == GRoute::recursive ? gf_G_recursive(order) : gf_G_explicit(order);
  require_integral(g, "G(z,t)");
  return g;
}

/// sum_{k>=1} k delta^k q^{2k} / (1 - q^k) to order N (terms have valuation 3k).
inline Series closed_sum_delta(const KernelBundle& kb) {
  const std::size_t order = kb.order;
  Series sum(order);
  Series dq2 = Series::one(order);
  Series qk = Series::one(order);
  const Series step = kb.delta * kb.q * kb.q;
  for (std::size_t k = 1; 3 * k <= order; ++k) {
    dq2 = dq2 * step;
    qk = qk * kb.q;
    sum = sum + Rational(static_cast<long>(k)) * (dq2 / (1 - qk));
  }
  return sum;
}

/// sum_{k>=1} k v^{2k} q^k / (1 - q^k), equal to closed_sum_delta because delta q = v^2.
inline Series closed_sum_v(const KernelBundle& kb) {
  const std::size_t order = kb.order;
  Series sum(order);
  Series term = Series::one(order);
  Series qk = Series::one(order);
  const Series step = kb.v * kb.v * kb.q;
  for (std::size_t k = 1; 3 * k <= order; ++k) {
    term = term * step;
    qk = qk * kb.q;
    sum = sum + Rational(static_cast<long>(k)) * (term / (1 - qk));
  }
  return sum;
}

inline Series gf_dG_derivative(std::size_t order) {
  return eval_t(d_dt(gf_G_recursive(order)), 1);
}

/// D = z + (1 - v^2)^2 / ((v + 2) v (2v + 1)) * sum_k k delta^k q^{2k} / (1 - q^k).
///
/// The z term is the single-node tree, which the sum does not cover.
inline Series gf_dG_closed_sum(std::size_t order) {
  const KernelBundle kb = KernelBundle::compute(order + 1);  // the prefactor has valuation -1
  const Series& v = kb.v;
  const Series one_minus_v2 = 1 - v * v;
  const Series body = one_minus_v2 * one_minus_v2 * closed_sum_delta(kb);
  const Series d = body / ((v + 2) * v * (2 * v + 1));
  return z_series(order) + d.truncate(order);
}

/// D = z + sum_{h>=2} b_h, b_2 = z^2/(1-z)^2, b_{h+1} = z(2-z) b_h / (1 - A_h)^2,
/// i.e. the p-recursion differentiated at t = 1.
inline Series gf_dG_level_recursion(std::size_t order) {
  const Series z = z_series(order);
  const Series zz = z * (2 - z);
  const auto As = A_h_sequence(order, order);
  Series b = z * z / ((1 - z) * (1 - z));
  Series d = z + b;
  for (std::size_t h = 2; h < order; ++h) {
    const Series den = 1 - As[h - 1];
    b = zz * b / (den * den);
    d = d + b;
  }
  return d;
}

inline Series gf_dG(std::size_t order, DGRoute route) {
  Series d;
  switch (route) {
    case DGRoute::derivative: d = gf_dG_derivative(order); break;
    case DGRoute::closed_sum: d = gf_dG_closed_sum(order); break;
    case DGRoute::level_recursion: d = gf_dG_level_recursion(order); break;
  }
  require_integral(d, "dG/dt(z,1)");
  return d;
}

struct IdentityCheck {
  std::string name;
  bool passed = false;
};

namespace detail {

/// Equal on every coefficient both sides know.
inline bool agree(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return a.truncate(n) == b.truncate(n);
}

}  // namespace detail

/// The exact identities tying the kernel series together, on a given bundle.
inline std::vector<IdentityCheck> identity_suite(const KernelBundle& k) {
  const std::size_t order = k.order;
  const Series z = z_series(order);
  const Series& v = k.v;
  const Series& q = k.q;
  const Series A = (1 - z - k.S) * Rational(1, 2);
  const Series w = 1 + 2 * v;
  std::vector<IdentityCheck> out;
  auto check = [&](std::string name, const Series& lhs, const Series& rhs) {
    out.push_back({std::move(name), detail::agree(lhs, rhs)});
  };
  check("lambda + mu = 1 + z", k.lambda + k.mu, 1 + z);
  check("lambda*mu = z(2 - z)", k.lambda * k.mu, z * (2 - z));
  check("mu/lambda = q", k.mu / k.lambda, q);
  check("(1 + z)/((2 - z)z)*mu - 1 = q", (1 + z) * k.mu / ((2 - z) * z) - 1, q);
  check("delta*q = v^2", k.delta * q, v * v);
  check("A = z(1 + v)", A, z * (1 + v));
  check("v - q = v(v - 1)/(1 + 2v)", v - q, v * (v - 1) / w);
  check("v^2 - q^2 = 3v^2(v - 1)(1 + v)/(1 + 2v)^2", v * v - q * q,
        3 * v * v * (v - 1) * (1 + v) / (w * w));
  check("v^3 - q^3 = v^3(v - 1)(7v^2 + 13v + 7)/(1 + 2v)^3", pow(v, 3) - pow(q, 3),
        pow(v, 3) * (v - 1) * (7 * v * v + 13 * v + 7) / pow(w, 3));
  return out;
}

/// Runs the identities to order N (the bundle is built one order deeper so that
/// the valuation-shifted check still reaches N).
inline std::vector<IdentityCheck> identity_suite(std::size_t order) {
  return identity_suite(KernelBundle::compute(order + 1));
}

}  // namespace deepnodes
