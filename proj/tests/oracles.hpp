#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "dsop/exactpoly/bigfloat.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace oracle {

using dsop::BigFloat;
using dsop::Rational;

inline BigFloat sinh_(const BigFloat& t) {
  BigFloat e = exp(t);
  return (e - BigFloat(1L, t.precision()) / e) / 2L;
}
inline BigFloat cosh_(const BigFloat& t) {
  BigFloat e = exp(t);
  return (e + BigFloat(1L, t.precision()) / e) / 2L;
}
inline BigFloat tanh_(const BigFloat& t) {
  BigFloat e2 = exp(t * 2L);
  return (e2 - 1L) / (e2 + 1L);
}

/// Whether some permutation of (r, nu) pairs satisfies the ordering
/// definition directly: orders non-decreasing and each r outside the convex
/// hull of the base interval (open, or absent) and the earlier points.
struct BasePair {
  bool present;
  Rational lo, hi;
};

inline bool brute_force_ordered(std::vector<std::pair<Rational, int>> pairs, const BasePair& base) {
  std::vector<size_t> idx(pairs.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    bool ok = true;
    for (size_t k = 0; k < idx.size() && ok; ++k) {
      const auto& [r, nu] = pairs[idx[k]];
      if (k > 0 && nu < pairs[idx[k - 1]].second) ok = false;
      // hull of base and earlier points
      bool in = false;
      if (base.present || k > 0) {
        bool have = false;
        Rational lo, hi;
        bool lo_open = false, hi_open = false;
        if (base.present) {
          lo = base.lo;
          hi = base.hi;
          lo_open = hi_open = true;
          have = true;
        }
        for (size_t t = 0; t < k; ++t) {
          const Rational& x = pairs[idx[t]].first;
          if (!have) {
            lo = hi = x;
            have = true;
            continue;
          }
          if (x < lo || (x == lo && lo_open)) {
            lo = x;
            lo_open = false;
          }
          if (x > hi || (x == hi && hi_open)) {
            hi = x;
            hi_open = false;
          }
        }
        if (have) in = (lo_open ? r > lo : r >= lo) && (hi_open ? r < hi : r <= hi);
      }
      if (in) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

/// Schoolbook coefficient convolution.
inline std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  return c;
}

/// Heron iteration for sqrt(q), q > 0.
inline BigFloat newton_sqrt(const Rational& q, unsigned prec) {
  BigFloat a(q, prec);
  BigFloat x = BigFloat::from_double(std::sqrt(q.get_d()), prec);
  for (int i = 0; i < 20; ++i) x = (x + a / x) / 2L;
  return x;
}

/// Double-exponential (tanh-sinh) quadrature of a complex-valued f on
/// [-1, 1], refined by halving the step until two levels agree.
inline dsop::Complex tanh_sinh(const std::function<dsop::Complex(const BigFloat&)>& f, unsigned prec) {
  using dsop::Complex;
  const unsigned wp = prec + 32;
  const BigFloat pi_half = BigFloat::pi(wp) / 2L;
  const BigFloat one(1L, wp);
  const BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) + 16, wp);
  // t range where 1 - |x| stays representable
  const double tmax = std::log(4.0 / M_PI * (static_cast<double>(wp) * 0.6931 + 2.0)) + 0.5;
  auto node = [&](const BigFloat& t, BigFloat& x, BigFloat& w) {
    BigFloat s = pi_half * sinh_(t);
    BigFloat c = cosh_(s);
    x = tanh_(s);
    w = pi_half * cosh_(t) / (c * c);
  };
  BigFloat h(1L, wp);
  Complex prev(wp);
  bool have_prev = false;
  Complex sum(wp);
  {
    BigFloat x(0L, wp), w(0L, wp);
    node(BigFloat(0L, wp), x, w);
    sum = f(x) * w;
  }
  // level 0: integer multiples of h = 1
  for (long k = 1; k <= static_cast<long>(std::ceil(tmax)); ++k) {
    BigFloat x(0L, wp), w(0L, wp);
    node(BigFloat(k, wp), x, w);
    if (compare(abs(x), dsop::Rational(1)) >= 0) break;
    sum += (f(x) + f(-x)) * w;
  }
  Complex est = sum * h;
  for (int level = 1; level < 14; ++level) {
    h = h / 2L;
    const long steps = static_cast<long>(std::ceil(tmax / h.to_double()));
    for (long k = 1; k <= steps; k += 2) {
      BigFloat x(0L, wp), w(0L, wp);
      node(h * k, x, w);
      if (compare(abs(x), dsop::Rational(1)) >= 0) break;
      sum += (f(x) + f(-x)) * w;
    }
    prev = est;
    have_prev = true;
    est = sum * h;
    if (have_prev && abs(est - prev) <= tol * (one + abs(est))) break;
  }
  return est.rounded(prec);
}

}  // namespace oracle
