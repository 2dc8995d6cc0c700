#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/gram.hpp"
#include "dsop/exactpoly/polynomial.hpp"
#include "dsop/exactpoly/roots.hpp"
#include "dsop/mass.hpp"

namespace dsop {

/// ∫_{-1}^{1} x^p dx
inline Rational lebesgue_moment(int p) {
  if (p < 0) throw argument_error("lebesgue_moment: negative power");
  return p % 2 ? Rational(0) : Rational(2, p + 1);
}

/// ∫_{-1}^{1} g(x) dx for a polynomial with coefficients of any kind.
template <class T>
T integrate_lebesgue(const Polynomial<T>& g) {
  if (g.is_zero()) return T{};
  T s = zero_like(g[0]);
  for (int p = 0; p <= g.degree(); p += 2) s += g[p] * lift(lebesgue_moment(p), g[0]);
  return s;
}

/// w(x) dx on [-1, 1] with a polynomial density w > 0 on (-1, 1).
struct MeasureSpec {
  Poly weight = Poly::constant(Rational(1));

  static MeasureSpec lebesgue() { return {}; }

  static MeasureSpec with_weight(Poly w) {
    MeasureSpec m{std::move(w)};
    m.validate();
    return m;
  }

  void validate() const {
    if (weight.is_zero()) throw argument_error("measure: zero weight");
    if (weight.degree() > 0 && count_roots_in_open(weight, -1, 1) != 0)
      throw argument_error("measure: weight " + to_string(weight) + " vanishes inside (-1, 1)");
    if (sgn(weight(Rational(0))) <= 0) throw argument_error("measure: weight must be positive on (-1, 1)");
    if (sgn(integrate_lebesgue(weight)) <= 0) throw argument_error("measure: total mass is not positive");
  }

  /// ∫ f dμ, exact.
  Rational integrate(const Poly& f) const { return integrate_lebesgue(f * weight); }

  friend bool operator==(const MeasureSpec& a, const MeasureSpec& b) { return a.weight == b.weight; }
};

/// Exact moments m_k = ∫ x^k dμ, k = 0..kmax.
struct MomentTable {
  MeasureSpec measure;
  std::vector<Rational> m;

  int kmax() const { return static_cast<int>(m.size()) - 1; }
  const Rational& operator[](int k) const {
    if (k < 0 || k > kmax()) throw argument_error("moment index " + std::to_string(k) + " out of range");
    return m[static_cast<size_t>(k)];
  }
};

inline MomentTable moments(const MeasureSpec& mu, int kmax) {
  if (kmax < 0) throw argument_error("moments: kmax must be non-negative");
  MomentTable t{mu, {}};
  t.m.reserve(static_cast<size_t>(kmax) + 1);
  const Poly& w = mu.weight;
  for (int k = 0; k <= kmax; ++k) {
    Rational s;
    for (int j = 0; j <= w.degree(); ++j)
      if ((k + j) % 2 == 0 && sgn(w[j]) != 0) s += w[j] * lebesgue_moment(k + j);
    t.m.push_back(std::move(s));
  }
  return t;
}

/// Monic orthogonal polynomials of a measure with exact recurrence data
///   p_{n+1} = (x - b_n) p_n - a_n^2 p_{n-1},
/// rec_a2[0] holds the total mass ∫dμ.
struct OrthoBasis {
  MeasureSpec measure;
  std::vector<Poly> polys;
  std::vector<Rational> rec_a2;
  std::vector<Rational> rec_b;
  std::vector<Rational> norms2;

  int nmax() const { return static_cast<int>(polys.size()) - 1; }
  const Poly& operator[](int n) const { return polys.at(static_cast<size_t>(n)); }

  /// True when the three-term recurrence reproduces every stored polynomial.
  bool recurrence_holds() const {
    for (int n = 0; n + 1 <= nmax(); ++n) {
      Poly rhs = (poly_x() - Poly::constant(rec_b[static_cast<size_t>(n)])) * polys[static_cast<size_t>(n)];
      if (n >= 1) rhs -= polys[static_cast<size_t>(n) - 1] * rec_a2[static_cast<size_t>(n)];
      if (!(rhs == polys[static_cast<size_t>(n) + 1])) return false;
    }
    return true;
  }
};

inline OrthoBasis standard_ops(const MeasureSpec& mu, int nmax) {
  if (nmax < 0) throw argument_error("standard_ops: nmax must be non-negative");
  const MomentTable mt = moments(mu, 2 * nmax + 2);
  auto gram = [&mt](int i, int j) -> const Rational& { return mt[i + j]; };
  OrthoBasis b{mu, {}, {}, {}, {}};
  for (int n = 0; n <= nmax; ++n) {
    Poly p = monic_orthogonal(gram, n);
    Rational nn = gram_inner(gram, p, p);
    if (sgn(nn) <= 0) throw internal_error("standard_ops: non-positive norm at degree " + std::to_string(n));
    Rational xb = gram_inner(gram, p.shifted(), p) / nn;
    b.rec_a2.push_back(n == 0 ? nn : nn / b.norms2.back());
    b.rec_b.push_back(std::move(xb));
    b.norms2.push_back(std::move(nn));
    b.polys.push_back(std::move(p));
  }
  return b;
}

/// The positive-on-[-1,1] polynomial vanishing to order d_j + 1 at each c_j:
///   ρ(z) = ∏_{c<-1} (z - c)^{d+1} ∏_{c>1} (c - z)^{d+1}.
inline Poly rho_polynomial(const std::vector<MassTerm>& masses) {
  Poly rho = Poly::constant(Rational(1));
  for (const auto& t : masses) {
    if (abs(t.c) <= 1)
      throw domain_error("mass point " + to_string(t.c) + " lies in [-1, 1]; the modified measure needs |c| > 1");
    const Poly f = t.c > 1 ? Poly{t.c, Rational(-1)} : Poly{Rational(-t.c), Rational(1)};
    for (int i = 0; i <= t.order; ++i) rho *= f;
  }
  return rho;
}

/// dμ_ρ = ρ dμ.
inline MeasureSpec modified_measure(const MeasureSpec& base, const std::vector<MassTerm>& masses) {
  return MeasureSpec{base.weight * rho_polynomial(masses)};
}

/// Distance from z to the segment [-1, 1].
inline BigFloat distance_to_interval(const Complex& z) {
  const BigFloat ax = abs(z.real());
  const BigFloat ay = abs(z.imag());
  if (compare(ax, Rational(1)) <= 0) return ay;
  return hypot(ax - 1L, ay);
}

/// Closed form of the Cauchy transform of G dx on [-1, 1]:
///   ∫ G(x)/(z-x) dx = G(z) log((z+1)/(z-1)) - H(z),
///   H(z) = ∫ (G(z) - G(x))/(z - x) dx.
template <class T>
struct CauchyForm {
  Polynomial<T> G;
  Polynomial<T> H;
};

template <class T>
CauchyForm<T> cauchy_form(const Polynomial<T>& G) {
  CauchyForm<T> f{G, {}};
  if (G.degree() < 1) return f;
  std::vector<T> h(static_cast<size_t>(G.degree()), zero_like(G[0]));
  for (int m = 0; m < G.degree(); ++m)
    for (int i = m + 1; i <= G.degree(); ++i)
      if ((i - 1 - m) % 2 == 0) h[static_cast<size_t>(m)] += G[i] * lift(lebesgue_moment(i - 1 - m), G[0]);
  f.H = Polynomial<T>(std::move(h));
  return f;
}

namespace detail {

inline long magnitude_bits(const BigFloat& v) { return v.is_zero() ? 0 : std::max(0L, v.exponent()); }

template <class T>
long coeff_bits(const Polynomial<T>& p) {
  long b = 0;
  for (const auto& c : p.coeffs()) {
    if constexpr (std::is_same_v<T, Rational>) {
      if (sgn(c) != 0) b = std::max(b, static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)) -
                                           static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2)) + 1);
    } else {
      b = std::max(b, magnitude_bits(c));
    }
  }
  return b;
}

}  // namespace detail

/// Evaluates the closed form at z with enough guard bits to absorb the
/// cancellation between G(z) log(...) and H(z) for large |z|.
template <class T>
Complex cauchy_eval(const CauchyForm<T>& f, const Complex& z, unsigned prec) {
  if (!z.real().is_finite() || !z.imag().is_finite()) throw argument_error("markov_eval: non-finite point");
  const BigFloat dist = distance_to_interval(z);
  if (dist < BigFloat::pow2(-static_cast<long>(prec / 4), prec))
    throw precision_error("markov_eval: point within 2^-" + std::to_string(prec / 4) + " of [-1, 1]");
  if (f.G.is_zero()) return Complex(prec);
  const long zbits = detail::magnitude_bits(abs(z)) + 1;
  const long guard = 32 + (f.G.degree() + 2) * zbits + detail::coeff_bits(f.G) + detail::coeff_bits(f.H);
  const auto wp = static_cast<unsigned>(static_cast<long>(prec) + guard);
  const Complex zw = z.rounded(wp);
  const Complex one(BigFloat(1L, wp));
  const Complex L = log((zw + one) / (zw - one));
  Complex g, h;
  if constexpr (std::is_same_v<T, Rational>) {
    g = f.G(zw);
    h = f.H.is_zero() ? Complex(wp) : f.H(zw);
  } else {
    g = rounded(f.G, wp).template map<Complex>([](const BigFloat& c) { return Complex(c); })(zw);
    h = f.H.is_zero() ? Complex(wp)
                      : rounded(f.H, wp).template map<Complex>([](const BigFloat& c) { return Complex(c); })(zw);
  }
  return (g * L - h).rounded(prec);
}

/// ∫ q(x) W(x)/(z - x) dx for a polynomial weight W (exact or BigFloat).
template <class T>
Complex markov_eval_weight(const Polynomial<T>& weight, const Polynomial<T>& q, const Complex& z, unsigned prec) {
  return cauchy_eval(cauchy_form(q * weight), z, prec);
}

/// ∫ q(x)/(z - x) dμ(x).
inline Complex markov_eval(const MeasureSpec& mu, const Poly& q, const Complex& z, unsigned prec) {
  return markov_eval_weight(mu.weight, q, z, prec);
}

/// Gauss-Legendre rule on [-1, 1] with `npts` nodes, Newton on the
/// Legendre recurrence at working precision.
struct GaussRule {
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;
};

inline GaussRule gauss_legendre(int npts, unsigned prec) {
  if (npts < 1) throw argument_error("gauss_legendre: need at least one node");
  const unsigned wp = prec + 32;
  GaussRule r;
  const BigFloat tol = BigFloat::pow2(-static_cast<long>(wp) + 8, wp);
  const BigFloat one(1L, wp);
  for (int i = 1; i <= npts; ++i) {
    BigFloat x = BigFloat::from_double(std::cos(M_PI * (i - 0.25) / (npts + 0.5)), wp);
    BigFloat dp(0L, wp);
    for (int it = 0; it < 100; ++it) {
      BigFloat p0 = one, p1 = x;
      for (int k = 2; k <= npts; ++k) {
        BigFloat p2 = ((2L * k - 1) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (npts == 1) p0 = one;
      dp = static_cast<long>(npts) * (x * p1 - p0) / (x * x - one);
      BigFloat dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    BigFloat p0 = one, p1 = x;
    for (int k = 2; k <= npts; ++k) {
      BigFloat p2 = ((2L * k - 1) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    if (npts == 1) p0 = one;
    dp = static_cast<long>(npts) * (x * p1 - p0) / (x * x - one);
    r.nodes.push_back(x.rounded(prec));
    r.weights.push_back((BigFloat(2L, wp) / ((one - x * x) * dp * dp)).rounded(prec));
  }
  return r;
}

/// Composite Gauss-Legendre value of ∫ q W/(z - x) dx; panel count scales
/// with 1/dist(z, [-1, 1]).
template <class T>
Complex markov_eval_quadrature(const Polynomial<T>& weight, const Polynomial<T>& q, const Complex& z, unsigned prec,
                               int points_per_panel = 40) {
  const unsigned wp = prec + 32;
  const double dist = distance_to_interval(z).to_double();
  if (!(dist > 0)) throw precision_error("markov_eval_quadrature: point on [-1, 1]");
  const int panels = static_cast<int>(std::min(4096.0, std::max(2.0, std::ceil(8.0 / dist))));
  const GaussRule gl = gauss_legendre(points_per_panel, wp);
  const Polynomial<T> G = q * weight;
  const Complex zw = z.rounded(wp);
  Complex acc(wp);
  const BigFloat h = BigFloat(2L, wp) / static_cast<long>(panels);
  for (int p = 0; p < panels; ++p) {
    const BigFloat a = BigFloat(-1L, wp) + h * static_cast<long>(p);
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const BigFloat x = a + h * (gl.nodes[i] + 1L) / 2L;
      const BigFloat gx = G.is_zero() ? BigFloat(0L, wp) : G(x);
      acc += Complex(gx * gl.weights[i] * h / 2L) / (zw - Complex(x));
    }
  }
  return acc.rounded(prec);
}

}  // namespace dsop
