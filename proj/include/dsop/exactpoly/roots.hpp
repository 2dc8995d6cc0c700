#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/bigfloat.hpp"
#include "dsop/exactpoly/polynomial.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace dsop {

// ---------------------------------------------------------------------------
// Integer-coefficient helpers. Sturm chains and gcds run on primitive integer
// polynomials: scaling by positive constants keeps every sign intact and
// stops rational coefficient blow-up.

using IntPoly = std::vector<Integer>;  // ascending, trimmed

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Divides out the (positive) content.
inline IntPoly primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return p;
  }
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

/// Positive multiple of p with integer coefficients, made primitive.
inline IntPoly to_int_primitive(const Poly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (l / c.get_den()));
  return primitive(std::move(out));
}

inline Poly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p) c.emplace_back(v);
  return Poly(std::move(c));
}

inline IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPoly prem(IntPoly a, const IntPoly& b) {
  const int db = degree(b);
  if (degree(a) < db) return a;
  const Integer& lc = b.back();
  int steps = degree(a) - db + 1;
  while (degree(a) >= db) {
    const int da = degree(a);
    Integer f = a.back();
    for (auto& c : a) c *= lc;
    for (int j = 0; j <= db; ++j) a[static_cast<size_t>(da - db + j)] -= f * b[static_cast<size_t>(j)];
    trim(a);
    --steps;
  }
  // complete the normalization lc^(da-db+1)
  for (; steps > 0; --steps)
    for (auto& c : a) c *= lc;
  return a;
}

/// Sign of p(num/den) for den > 0.
inline int sign_at(const IntPoly& p, const Integer& num, const Integer& den) {
  if (p.empty()) return 0;
  Integer acc = p.back();
  Integer dpow = 1;
  for (int i = degree(p) - 1; i >= 0; --i) {
    dpow *= den;
    acc = acc * num + p[static_cast<size_t>(i)] * dpow;
  }
  return sgn(acc);
}

inline int sign_at(const IntPoly& p, const Rational& x) { return sign_at(p, x.get_num(), x.get_den()); }

/// Sign of p(x + eps) for infinitesimal eps > 0.
inline int sign_right_of(IntPoly p, const Rational& x) {
  while (!p.empty()) {
    int s = sign_at(p, x);
    if (s != 0) return s;
    p = derivative(p);
  }
  return 0;
}

inline IntPoly gcd(IntPoly a, IntPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && sgn(a.back()) < 0)
    for (auto& c : a) c = -c;
  return a;
}

}  // namespace detail

/// Greatest common divisor over Q, monic (zero if both inputs are zero).
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  IntPoly g = detail::gcd(detail::to_int_primitive(a), detail::to_int_primitive(b));
  return detail::to_rational(g).monic();
}

/// Yun square-free decomposition: p = lc * prod_i factors[i]^(i+1), each factor
/// monic and square-free, pairwise coprime (constant entries mean "none").
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw argument_error("square-free decomposition of the zero polynomial");
  std::vector<Poly> out;
  if (p.degree() == 0) return out;
  Poly a = gcd(p, p.derivative());
  Poly b = divmod(p, a).first;
  Poly d = divmod(p.derivative(), a).first - b.derivative();
  while (b.degree() > 0) {
    Poly ai = d.is_zero() ? b.monic() : gcd(b, d);
    out.push_back(ai);
    b = divmod(b, ai).first;
    d = divmod(d, ai).first - b.derivative();
  }
  return out;
}

/// Square-free part of p (monic).
inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw argument_error("square-free part of the zero polynomial");
  if (p.degree() <= 0) return Poly::constant(Rational(1));
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

/// Sturm chain of a square-free polynomial, on primitive integer members.
class SturmSequence {
 public:
  explicit SturmSequence(const Poly& squarefree) {
    using namespace detail;
    if (squarefree.is_zero()) throw argument_error("Sturm sequence of the zero polynomial");
    IntPoly f0 = to_int_primitive(squarefree);
    seq_.push_back(f0);
    if (degree(f0) < 1) return;
    seq_.push_back(primitive(derivative(f0)));
    while (true) {
      const IntPoly& a = seq_[seq_.size() - 2];
      const IntPoly& b = seq_.back();
      if (degree(b) < 1) break;
      IntPoly r = prem(a, b);
      if (r.empty()) break;  // not square-free; chain ends at the gcd
      const int delta = degree(a) - degree(b) + 1;
      const bool lc_power_positive = sgn(b.back()) > 0 || delta % 2 == 0;
      if (lc_power_positive)
        for (auto& c : r) c = -c;
      seq_.push_back(primitive(std::move(r)));
    }
  }

  /// Sign variations at x + eps.
  int variations_right_of(const Rational& x) const {
    int v = 0;
    int last = 0;
    for (const auto& f : seq_) {
      int s = detail::sign_right_of(f, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }

  /// Distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const {
    if (hi <= lo) return 0;
    return variations_right_of(lo) - variations_right_of(hi);
  }

  const IntPoly& head() const { return seq_.front(); }

 private:
  std::vector<IntPoly> seq_;
};

/// Isolating interval [lo, hi] of a real root, exact endpoints.
struct RootInterval {
  Rational lo;
  Rational hi;
  int multiplicity = 1;

  bool is_point() const { return lo == hi; }
};

/// Distinct real roots of p in (lo, hi].
inline int count_roots_in(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw argument_error("count_roots_in: zero polynomial");
  if (p.degree() == 0) return 0;
  return SturmSequence(squarefree_part(p)).count(lo, hi);
}

/// Distinct real roots of p in the open interval (lo, hi).
inline int count_roots_in_open(const Poly& p, const Rational& lo, const Rational& hi) {
  int c = count_roots_in(p, lo, hi);
  if (c > 0 && sgn(p(hi)) == 0) --c;
  return c;
}

/// Points of sign change of p in (lo, hi): roots of odd multiplicity.
inline int count_sign_changes_in(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw argument_error("count_sign_changes_in: zero polynomial");
  auto factors = squarefree_decomposition(p);
  int total = 0;
  for (size_t i = 0; i < factors.size(); i += 2)
    if (factors[i].degree() > 0) total += count_roots_in_open(factors[i], lo, hi);
  return total;
}

/// Upper bound 2^e > every |root| (Cauchy bound rounded up to a power of two).
inline Rational root_bound(const Poly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p[i] / p.leading())));
  Rational bound = 1 + m;
  Rational b = 1;
  while (b <= bound) b *= 2;
  return b;
}

namespace detail {

/// Isolating intervals for the roots of a square-free polynomial.
inline std::vector<RootInterval> isolate_squarefree(const Poly& g) {
  std::vector<RootInterval> out;
  if (g.degree() < 1) return out;
  SturmSequence sturm(g);
  const IntPoly& gi = sturm.head();
  Rational B = root_bound(g);

  struct Task {
    Rational lo, hi;
    int count;
  };
  std::vector<Task> stack{{-B, B, sturm.count(-B, B)}};
  while (!stack.empty()) {
    Task t = stack.back();
    stack.pop_back();
    if (t.count == 0) continue;
    if (t.count == 1) {
      out.push_back({t.lo, t.hi, 1});
      continue;
    }
    Rational mid = (t.lo + t.hi) / 2;
    if (sign_at(gi, mid) == 0) {
      out.push_back({mid, mid, 1});
      Rational h = (t.hi - t.lo) / 4;
      while (sign_at(gi, mid - h) == 0 || sign_at(gi, mid + h) == 0 || sturm.count(mid - h, mid + h) != 1) h /= 2;
      Rational a = mid - h, b = mid + h;
      stack.push_back({t.lo, a, sturm.count(t.lo, a)});
      stack.push_back({b, t.hi, sturm.count(b, t.hi)});
    } else {
      int left = sturm.count(t.lo, mid);
      stack.push_back({t.lo, mid, left});
      stack.push_back({mid, t.hi, t.count - left});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace detail

/// All real roots of p as disjoint isolating intervals in ascending order,
/// with exact multiplicities from the square-free decomposition.
inline std::vector<RootInterval> isolate_real_roots(const Poly& p) {
  if (p.is_zero()) throw argument_error("isolate_real_roots: zero polynomial");
  if (p.degree() == 0) return {};
  auto factors = squarefree_decomposition(p);
  Poly g = Poly::constant(Rational(1));
  for (const auto& f : factors) g = g * f;
  auto roots = detail::isolate_squarefree(g);
  if (factors.size() == 1) return roots;

  std::vector<SturmSequence> chains;
  for (const auto& f : factors)
    chains.emplace_back(f.degree() > 0 ? f : Poly::constant(Rational(1)));
  for (auto& iv : roots) {
    for (size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() < 1) continue;
      bool hit = iv.is_point() ? sgn(factors[i](iv.lo)) == 0 : chains[i].count(iv.lo, iv.hi) == 1;
      if (hit) {
        iv.multiplicity = static_cast<int>(i) + 1;
        break;
      }
    }
  }
  return roots;
}

/// Compares the root isolated by `iv` (a root of square-free g, alone in
/// (lo, hi]) with the rational b: -1 if root < b, 0 if equal, +1 if greater.
inline int compare_root(const SturmSequence& g, const RootInterval& iv, const Rational& b) {
  if (iv.is_point()) return iv.lo < b ? -1 : (iv.lo == b ? 0 : 1);
  if (iv.hi < b) return -1;
  if (iv.lo >= b) return 1;
  if (detail::sign_at(g.head(), b) == 0) return 0;
  return g.count(iv.lo, b) == 1 ? -1 : 1;
}

/// Shrinks an isolating interval of a root of square-free g by exact
/// bisection until hi - lo <= width.
inline RootInterval narrow_root_interval(const SturmSequence& g, RootInterval iv, const Rational& width) {
  while (!iv.is_point() && iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    const int c = compare_root(g, iv, mid);
    if (c == 0) {
      iv.lo = iv.hi = mid;
    } else if (c < 0) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
  return iv;
}

/// Refines the simple root enclosed by `iv` to `prec` bits: exact bisection
/// down to a narrow bracket, then Newton in BigFloat with guard bits.
inline BigFloat refine_root(const Poly& p, const RootInterval& iv, unsigned prec) {
  if (iv.multiplicity > 1) throw unsupported_error("refine_root: multiple root; refine the square-free part instead");
  if (p.is_zero()) throw argument_error("refine_root: zero polynomial");
  if (prec < kMinPrecision) prec = kMinPrecision;
  if (iv.is_point()) return BigFloat(iv.lo, prec);

  const IntPoly pi = detail::to_int_primitive(p);
  Rational lo = iv.lo, hi = iv.hi;
  if (detail::sign_at(pi, hi) == 0) return BigFloat(hi, prec);
  const int s_hi = detail::sign_at(pi, hi);

  Rational scale = std::max(Rational(1), Rational(abs(lo)));
  scale = std::max(scale, Rational(abs(hi)));
  const Rational target = scale / Rational(Integer(1) << 60);
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    int s = detail::sign_at(pi, mid);
    if (s == 0) return BigFloat(mid, prec);
    if (s == s_hi) hi = mid;
    else lo = mid;
  }

  const unsigned wp = prec + 64 + 4 * static_cast<unsigned>(std::max(0, p.degree()));
  BigPoly pb = to_bigfloat(p, wp);
  BigPoly dpb = pb.derivative();
  BigFloat x((lo + hi) / 2, wp);
  const BigFloat blo(lo, wp), bhi(hi, wp);
  const BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) - 16, wp) * max(BigFloat(1L, wp), abs(x));
  bool converged = false;
  for (int it = 0; it < 64; ++it) {
    BigFloat d = dpb(x);
    if (d.is_zero()) break;
    BigFloat step = pb(x) / d;
    x -= step;
    if (x < blo) x = blo;
    if (x > bhi) x = bhi;
    if (abs(step) <= tol) {
      if (converged) break;
      converged = true;  // one more step for the last bits
    }
  }
  if (!converged) throw internal_error("refine_root: Newton iteration did not converge");
  return x.rounded(prec);
}

/// All complex roots (with multiplicity) by Aberth-Ehrlich iteration.
/// Used for reporting non-real zeros; real zeros are certified separately.
inline std::vector<Complex> all_roots(const Poly& p, unsigned prec) {
  if (p.is_zero()) throw argument_error("all_roots: zero polynomial");
  const int n = p.degree();
  std::vector<Complex> z;
  if (n < 1) return z;
  const unsigned wp = prec + 64;
  Poly pm = p.monic();
  if (n == 1) {
    z.emplace_back(BigFloat(Rational(-pm[0]), prec));
    return z;
  }
  ComplexPoly pc = pm.map<Complex>([wp](const Rational& c) { return Complex(BigFloat(c, wp)); });
  ComplexPoly dpc = pc.derivative();

  // Fujiwara bound for the initial circle
  double radius = 0;
  for (int i = 0; i < n; ++i) {
    double a = std::fabs(pm[i].get_d());
    if (a == 0) continue;
    double r = std::pow(a, 1.0 / (n - i));
    if (i == 0) r = std::pow(a / 2, 1.0 / n);
    radius = std::max(radius, 2 * r);
  }
  if (radius == 0) radius = 1;
  const BigFloat two_pi = BigFloat::pi(wp) * 2;
  for (int k = 0; k < n; ++k) {
    BigFloat theta = two_pi * k / n + BigFloat::from_double(0.4, wp);
    z.push_back(exp_i(theta) * BigFloat::from_double(radius, wp));
  }

  const BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) - 8, wp);
  for (int it = 0; it < 2000; ++it) {
    BigFloat worst(0L, wp);
    for (int k = 0; k < n; ++k) {
      Complex pv = pc(z[k]);
      if (pv.is_zero()) continue;
      Complex ratio = pv / dpc(z[k]);
      Complex s(wp);
      for (int j = 0; j < n; ++j)
        if (j != k) s += one_like(z[k]) / (z[k] - z[j]);
      Complex w = ratio / (one_like(ratio) - ratio * s);
      z[k] -= w;
      BigFloat rel = abs(w) / max(BigFloat(1L, wp), abs(z[k]));
      if (rel > worst) worst = rel;
    }
    if (worst <= tol) break;
  }
  for (auto& v : z) v = v.rounded(prec);
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (!(a.real() == b.real())) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

}  // namespace dsop
