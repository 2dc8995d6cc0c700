#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dsop/assoc.hpp"
#include "dsop/errors.hpp"
#include "dsop/measures.hpp"

namespace dsop {

/// φ(z) = z + sqrt(z² - 1) on the branch with |φ| >= 1.
inline Complex phi(const Complex& z) {
  const unsigned p = z.precision();
  const Complex one(BigFloat(1L, p));
  const Complex s = sqrt(z * z - one);
  Complex a = z + s, b = z - s;
  return abs(b) > abs(a) ? b : a;
}

/// ℓ_τ = {|φ(z)| = τ} sampled at z = (w + 1/w)/2, w = τ e^{2πi t/npts}.
inline std::vector<Complex> level_curve(const BigFloat& tau, int npts, unsigned prec) {
  if (npts < 1) throw argument_error("level_curve: need at least one point");
  if (compare(tau, Rational(1)) <= 0) throw argument_error("level_curve: tau must exceed 1");
  std::vector<Complex> out;
  const BigFloat two_pi = BigFloat::pi(prec) * 2L;
  const Complex one(BigFloat(1L, prec));
  for (int t = 0; t < npts; ++t) {
    const Complex w = Complex(tau.rounded(prec)) * exp_i(two_pi * BigFloat(Rational(t, npts), prec));
    out.push_back((w + one / w) / 2L);
  }
  return out;
}

/// μ̂_k(z) = ∫ Q_{k-1}(x)/(z - x) dμ_ρ(x).
inline Complex markov_k(AssocContext& ctx, int k, const Complex& z, unsigned prec) {
  if (k < 1) throw argument_error("markov_k: needs k >= 1");
  return markov_eval(ctx.mrho(), ctx.Q(k - 1)[k - 1], z, prec);
}

namespace detail {

/// Σ |a_i| |z|^i, the scale against which a polynomial value is judged.
template <class T>
BigFloat eval_scale(const Polynomial<T>& p, const BigFloat& az) {
  BigFloat s(0L, az.precision()), zp(1L, az.precision());
  for (int i = 0; i <= p.degree(); ++i) {
    s += abs(lift(p[i], az)) * zp;
    zp *= az;
  }
  return s;
}

}  // namespace detail

/// R^[k]_n(z) = S^[k]_n(z) / S_{n+k}(z).
inline Complex R_nk(AssocContext& ctx, int n, int k, const Complex& z, unsigned prec) {
  if (k < 1) throw argument_error("R_nk: needs k >= 1");
  const Poly& den = ctx.S(n + k);
  const Poly num = assoc_Snk(ctx, n, k);
  const unsigned wp = prec + 64;
  const Complex zw = z.rounded(wp);
  const Complex dv = den(zw);
  const BigFloat floor = detail::eval_scale(den, abs(zw)) * BigFloat::pow2(-static_cast<long>(prec) + 32, wp);
  if (abs(dv) <= floor) throw precision_error("R_nk: z is within the precision floor of a zero of S_" + std::to_string(n + k));
  return (num(zw) / dv).rounded(prec);
}

struct RemainderCheck {
  Complex lhs, rhs, diff;
};

/// μ̂_{k,n}(z) - R^[k]_{n,1}(z) against S⁺_{n+k,2}(z) (μ̂_k(z) - R^[k]_n(z)).
inline RemainderCheck remainder_identity_check(AssocContext& ctx, const QuadratureRule& rule, int n, int k,
                                               const Complex& z) {
  if (rule.n != n + k) throw argument_error("remainder_identity_check: rule is not for S_{n+k}");
  const unsigned prec = rule.prec;
  const BigPoly W = mu_rho_n_weight(ctx, rule);
  const BigPoly q = to_bigfloat(ctx.Q(k - 1)[k - 1], prec);
  RemainderCheck r;
  r.lhs = markov_eval_weight(W, q, z, prec) - partial_fraction_R1(ctx, rule, k, z);
  r.rhs = rule.S2plus(z.rounded(prec)) * (markov_k(ctx, k, z, prec) - R_nk(ctx, n, k, z, prec));
  r.diff = r.lhs - r.rhs;
  return r;
}

/// Both sides are differences of O(1) quantities, so the rule is built at
/// twice the requested precision and the results rounded back.
inline RemainderCheck remainder_identity_check(AssocContext& ctx, int n, int k, const Complex& z, unsigned prec) {
  RemainderCheck r = remainder_identity_check(ctx, christoffel(ctx, n + k, 2 * prec), n, k, z);
  return {r.lhs.rounded(prec), r.rhs.rounded(prec), r.diff.rounded(prec)};
}

/// |μ̂_k(z) - R^[k]_n(z)|
inline BigFloat markov_error(AssocContext& ctx, int n, int k, const Complex& z, unsigned prec) {
  return abs(markov_k(ctx, k, z, prec) - R_nk(ctx, n, k, z, prec));
}

// ---------------------------------------------------------------------------
// Convergence report

struct RateReport {
  int k = 1;
  unsigned prec = kDefaultPrecision;
  std::vector<Complex> points;
  std::vector<int> ns;
  /// errors[p][i] = |μ̂_k(z_p) - R^[k]_{ns[i]}(z_p)|
  std::vector<std::vector<BigFloat>> errors;
  std::vector<std::vector<bool>> at_floor;
  /// ratios[p][i] = e_{ns[i+1]} / e_{ns[i]} when consecutive and above the floor
  std::vector<std::vector<std::optional<double>>> ratios;
  /// e_n^{1/2n} at the largest n above the floor, per point
  std::vector<std::optional<double>> root_test;
  std::vector<std::optional<int>> root_test_n;
  /// |φ(z)|^{-2} per point
  std::vector<double> predicted;
  /// max_K 1/|φ| and 1/max_K |φ|
  double phi_inv_norm = 0;
  double phi_norm_inv = 0;
  double crosscheck_diff = 0;

  std::optional<double> root_test_max() const {
    std::optional<double> m;
    for (const auto& r : root_test)
      if (r) m = m ? std::max(*m, *r) : *r;
    return m;
  }

  /// Mean of the available ratios for n in [lo, hi].
  std::optional<double> mean_ratio(size_t p, int lo, int hi) const {
    double s = 0;
    int c = 0;
    for (size_t i = 0; i + 1 < ns.size(); ++i)
      if (ns[i] >= lo && ns[i] <= hi && ratios[p][i]) {
        s += *ratios[p][i];
        ++c;
      }
    if (c == 0) return std::nullopt;
    return s / c;
  }
};

inline double root_of(const BigFloat& e, int n) {
  if (e.sign() <= 0 || n <= 0) return 0;
  return exp(log(e) / static_cast<long>(2 * n)).to_double();
}

inline RateReport convergence_report(AssocContext& ctx, int k, const std::vector<Complex>& points,
                                     const std::vector<int>& ns, unsigned prec, const Rational& margin = Rational(1, 10)) {
  if (points.empty()) throw argument_error("convergence_report: no points");
  if (ns.empty()) throw argument_error("convergence_report: empty n range");
  if (k < 1) throw argument_error("convergence_report: needs k >= 1");
  for (int n : ns)
    if (n < 0) throw argument_error("convergence_report: negative n");
  for (const auto& z : points) {
    if (distance_to_interval(z).sign() <= 0) throw argument_error("convergence_report: point lies on [-1, 1]");
    for (const auto& m : ctx.product().masses())
      if (compare(abs(z - Complex(BigFloat(m.c, prec))), margin) < 0)
        throw argument_error("convergence_report: point within " + margin.get_str() + " of the mass point " +
                             m.c.get_str());
  }
  RateReport rep;
  rep.k = k;
  rep.prec = prec;
  rep.points = points;
  rep.ns = ns;

  {
    // closed form against composite quadrature, once per run
    const Poly& q = ctx.Q(k - 1)[k - 1];
    const Complex& z = points.front();
    const Complex a = markov_k(ctx, k, z, prec);
    const Complex b = markov_eval_quadrature(ctx.mrho().weight, q, z, prec);
    const double scale = std::max(1.0, abs(a).to_double());
    rep.crosscheck_diff = abs(a - b).to_double() / scale;
    const double tol = distance_to_interval(z).to_double() >= 0.5 ? 1e-20 : 1e-10;
    if (!(rep.crosscheck_diff <= tol))
      throw internal_error("convergence_report: closed form and quadrature disagree (" +
                           std::to_string(rep.crosscheck_diff) + ")");
  }

  const BigFloat floor = BigFloat::pow2(-static_cast<long>(prec) + 32, prec);
  double max_phi = 0;
  for (const auto& z : points) {
    const double ap = abs(phi(z.rounded(prec))).to_double();
    max_phi = std::max(max_phi, ap);
    rep.phi_inv_norm = std::max(rep.phi_inv_norm, 1 / ap);
    rep.predicted.push_back(1 / (ap * ap));

    const Complex mu = markov_k(ctx, k, z, prec);
    std::vector<BigFloat> e;
    std::vector<bool> fl;
    for (int n : ns) {
      e.push_back(abs(mu - R_nk(ctx, n, k, z, prec)));
      fl.push_back(e.back() < floor);
    }
    std::vector<std::optional<double>> r(ns.size() > 0 ? ns.size() - 1 : 0);
    for (size_t i = 0; i + 1 < ns.size(); ++i)
      if (ns[i + 1] == ns[i] + 1 && !fl[i] && !fl[i + 1]) r[i] = (e[i + 1] / e[i]).to_double();
    std::optional<double> rt;
    std::optional<int> rn;
    for (size_t i = ns.size(); i-- > 0;)
      if (!fl[i] && ns[i] > 0) {
        rt = root_of(e[i], ns[i]);
        rn = ns[i];
        break;
      }
    rep.errors.push_back(std::move(e));
    rep.at_floor.push_back(std::move(fl));
    rep.ratios.push_back(std::move(r));
    rep.root_test.push_back(rt);
    rep.root_test_n.push_back(rn);
  }
  rep.phi_norm_inv = 1 / max_phi;
  return rep;
}

// ---------------------------------------------------------------------------
// Ratio asymptotics

/// Π_j (φ(z) - φ(c_j))² / (2 φ(z) (z - c_j))
inline Complex ratio_limit(const SobolevProduct& sp, const Complex& z) {
  const unsigned p = z.precision();
  const Complex fz = phi(z);
  Complex out(BigFloat(1L, p));
  for (const auto& m : sp.masses()) {
    const Complex c(BigFloat(m.c, p));
    const Complex diff = fz - phi(c);
    out = out * diff * diff / (fz * (z - c) * 2L);
  }
  return out;
}

struct RatioRow {
  int n;
  BigFloat error;
};

/// |S_n(z)/P_n(z) - limit(z)| for each n, P_n orthogonal for the base measure.
inline std::vector<RatioRow> ratio_asymptotics_check(SobolevSeq& seq, const std::vector<int>& ns, const Complex& z,
                                                     unsigned prec) {
  if (distance_to_interval(z).sign() <= 0) throw domain_error("ratio_asymptotics_check: z lies on [-1, 1]");
  int nmax = 0;
  for (int n : ns) nmax = std::max(nmax, n);
  const OrthoBasis P = standard_ops(seq.product().base(), nmax);
  const Complex zz = z.rounded(prec + 64);
  const Complex lim = ratio_limit(seq.product(), zz);
  std::vector<RatioRow> out;
  for (int n : ns) {
    const Complex r = seq[n](zz) / P[n](zz);
    out.push_back({n, abs(r - lim).rounded(prec)});
  }
  return out;
}

}  // namespace dsop
