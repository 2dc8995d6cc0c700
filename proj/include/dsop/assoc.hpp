#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/polynomial.hpp"
#include "dsop/measures.hpp"
#include "dsop/sobolev.hpp"

namespace dsop {

/// ∫ (F(z) - F(x))/(z - x) q(x) dσ(x) given the numbers nu_j = ∫ x^j q dσ:
/// the coefficient of z^m is Σ_{i > m} θ_i nu_{i-1-m}.
template <class T>
Polynomial<T> divided_difference_transform(const Polynomial<T>& F, const std::vector<T>& nu) {
  if (F.degree() < 1) return {};
  if (static_cast<int>(nu.size()) < F.degree())
    throw argument_error("divided_difference_transform: need " + std::to_string(F.degree()) + " moments");
  std::vector<T> c(static_cast<size_t>(F.degree()), zero_like(F[0]));
  for (int m = 0; m < F.degree(); ++m)
    for (int i = m + 1; i <= F.degree(); ++i) c[static_cast<size_t>(m)] += F[i] * nu[static_cast<size_t>(i - 1 - m)];
  return Polynomial<T>(std::move(c));
}

/// Caches everything the associated-polynomial machinery needs for one
/// product: S_n, the modified measure dμ_ρ = ρ dμ, its moments and its
/// monic orthogonal polynomials Q_n with recurrence data (α_n², β_n).
class AssocContext {
 public:
  explicit AssocContext(SobolevProduct sp, int nmax = 0)
      : seq_(std::move(sp), nmax), rho_(seq_.product().rho()), mrho_(modified_measure(seq_.product().base(), seq_.product().masses())) {
    ensure_moments(2 * nmax + 8);
  }

  const SobolevProduct& product() const { return seq_.product(); }
  const Poly& rho() const { return rho_; }
  const MeasureSpec& mrho() const { return mrho_; }
  SobolevSeq& seq() { return seq_; }

  const Poly& S(int n) { return seq_[n]; }

  const MomentTable& rho_moments(int kmax) {
    ensure_moments(kmax);
    return mom_;
  }

  const OrthoBasis& Q(int nmax) {
    if (!Q_ || Q_->nmax() < nmax) Q_ = standard_ops(mrho_, std::max(nmax, Q_ ? 2 * Q_->nmax() : 8));
    return *Q_;
  }

  /// nu_j = ∫ x^j Q_{k-1} dμ_ρ for j < count.
  std::vector<Rational> q_moments(int k, int count) {
    const Poly& q = Q(k - 1)[k - 1];
    const MomentTable& m = rho_moments(count + q.degree() + 1);
    std::vector<Rational> nu;
    for (int j = 0; j < count; ++j) {
      Rational s;
      for (int t = 0; t <= q.degree(); ++t) s += q[t] * m[j + t];
      nu.push_back(std::move(s));
    }
    return nu;
  }

 private:
  void ensure_moments(int kmax) {
    if (mom_.kmax() < kmax) mom_ = moments(mrho_, std::max(kmax, 2 * mom_.kmax()));
  }

  SobolevSeq seq_;
  Poly rho_;
  MeasureSpec mrho_;
  MomentTable mom_{};
  std::optional<OrthoBasis> Q_;
};

/// S^[k]_n(z) = ∫ (S_{n+k}(z) - S_{n+k}(x))/(z - x) Q_{k-1}(x) dμ_ρ(x); S^[0]_n = S_n.
inline Poly assoc_Snk(AssocContext& ctx, int n, int k) {
  if (n < 0 || k < 0) throw argument_error("assoc_Snk: negative index");
  if (k == 0) return ctx.S(n);
  return divided_difference_transform(ctx.S(n + k), ctx.q_moments(k, n + k));
}

inline Poly assoc_Snk(const SobolevProduct& sp, int n, int k) {
  AssocContext ctx(sp, n + k);
  return assoc_Snk(ctx, n, k);
}

/// Q^[k]_n by its definition (divided differences of Q_{n+k}).
inline Poly assoc_Qnk(AssocContext& ctx, int n, int k) {
  if (n < 0 || k < 0) throw argument_error("assoc_Qnk: negative index");
  if (k == 0) return ctx.Q(n)[n];
  return divided_difference_transform(ctx.Q(n + k)[n + k], ctx.q_moments(k, n + k));
}

/// Q^[k]_n from Q^[k]_{n+1} = (x - β_{n+k}) Q^[k]_n - α²_{n+k} Q^[k]_{n-1},
/// Q^[k]_{-1} = 0, Q^[k]_0 = ‖Q_{k-1}‖².
inline Poly assoc_Qnk_recurrence(AssocContext& ctx, int n, int k) {
  if (n < 0 || k < 0) throw argument_error("assoc_Qnk_recurrence: negative index");
  const OrthoBasis& Q = ctx.Q(n + k + 1);
  if (k == 0) return Q[n];
  Poly prev;
  Poly cur = Poly::constant(Q.norms2[static_cast<size_t>(k - 1)]);
  for (int m = 0; m < n; ++m) {
    const auto i = static_cast<size_t>(m + k);
    Poly next = (poly_x() - Poly::constant(Q.rec_b[i])) * cur - prev * Q.rec_a2[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Recurrences

/// 𝔞 = ⟨S_m, ρ S_j⟩ / ⟨S_j, S_j⟩ in the full Sobolev product.
inline Rational long_recurrence_coeff(AssocContext& ctx, int m, int j) {
  const SobolevProduct& sp = ctx.product();
  const Poly& Sj = ctx.S(j);
  return sp.inner(ctx.S(m), ctx.rho() * Sj) / sp.inner(Sj, Sj);
}

/// 𝔞_{n+k, j+k}
inline Rational long_recurrence_coeffs(AssocContext& ctx, int n, int j, int k) {
  return long_recurrence_coeff(ctx, n + k, j + k);
}

struct RecurrenceCheck {
  Poly residual;
  bool in_range = true;
  std::string warning;
  std::vector<std::pair<int, Rational>> coeffs;  // (j, 𝔞_{n+k, j+k})
};

/// ρ S^[k]_n - Σ_{j=n-d}^{n+d} 𝔞_{n+k,j+k} S^[k]_j; zero for n >= 2d - 1.
inline RecurrenceCheck verify_long_recurrence(AssocContext& ctx, int n, int k) {
  if (n < 0 || k < 0) throw argument_error("verify_long_recurrence: negative index");
  const int d = ctx.product().d();
  RecurrenceCheck out;
  if (n < 2 * d - 1) {
    out.in_range = false;
    out.warning = "n = " + std::to_string(n) + " is below 2d-1 = " + std::to_string(2 * d - 1) +
                  "; residual computed but not expected to vanish";
  }
  Poly rhs;
  for (int j = std::max(0, n - d); j <= n + d; ++j) {
    Rational a = long_recurrence_coeffs(ctx, n, j, k);
    if (sgn(a) != 0) rhs += assoc_Snk(ctx, j, k) * a;
    out.coeffs.emplace_back(j, std::move(a));
  }
  out.residual = ctx.rho() * assoc_Snk(ctx, n, k) - rhs;
  return out;
}

/// S^[k]_n - (z - β_{k-2}) S^[k-1]_{n+1} + α²_{k-2} S^[k-2]_{n+2}; α²_0 = ∫dμ_ρ.
inline RecurrenceCheck verify_strel(AssocContext& ctx, int n, int k) {
  if (k < 2) throw precondition_error("verify_strel: needs k >= 2 (k = " + std::to_string(k) + ")");
  if (n < 0) throw argument_error("verify_strel: negative degree");
  const int d = ctx.product().d();
  RecurrenceCheck out;
  if (n < d - 1) {
    out.in_range = false;
    out.warning = "n = " + std::to_string(n) + " is below d-1 = " + std::to_string(d - 1);
  }
  const OrthoBasis& Q = ctx.Q(k);
  const auto i = static_cast<size_t>(k - 2);
  out.residual = assoc_Snk(ctx, n, k) - (poly_x() - Poly::constant(Q.rec_b[i])) * assoc_Snk(ctx, n + 1, k - 1) +
                 assoc_Snk(ctx, n + 2, k - 2) * Q.rec_a2[i];
  return out;
}

// ---------------------------------------------------------------------------
// Christoffel-type quadrature

struct QuadratureRule {
  int n = 0;
  unsigned prec = kDefaultPrecision;
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> lambdas;
  std::vector<BigFloat> s2plus_at_nodes;
  /// ∫ S⁺_{n,2} dμ_ρ
  BigFloat total_mass;
  BigPoly S1;
  BigPoly S2plus;
  ZeroReport zeros;

  int positive_count() const {
    int c = 0;
    for (const auto& l : lambdas)
      if (l.sign() > 0) ++c;
    return c;
  }

  /// Σ λ_i S⁺(ξ_i) T(ξ_i)
  template <class P>
  BigFloat apply(const P& T) const {
    BigFloat s(0L, prec);
    for (size_t i = 0; i < nodes.size(); ++i) s += lambdas[i] * s2plus_at_nodes[i] * T(nodes[i]);
    return s;
  }
};

/// ∫ p dμ_ρ for a BigFloat polynomial, from exact moments.
inline BigFloat integrate_moments(const BigPoly& p, const MomentTable& m, unsigned prec) {
  BigFloat s(0L, prec);
  for (int i = 0; i <= p.degree(); ++i) s += p[i] * BigFloat(m[i], prec);
  return s;
}

/// λ_{n,i} = ∫ S_n(x)/(S'_n(ξ_i)(x - ξ_i)) dμ_ρ at the interior zeros of S_n.
inline QuadratureRule christoffel(AssocContext& ctx, int n, unsigned prec) {
  ctx.product().require_ordered("christoffel");
  const Poly& Sn = ctx.S(n);
  const unsigned wp = prec + 64 + 2 * static_cast<unsigned>(n);
  QuadratureRule q;
  q.n = n;
  q.prec = prec;
  q.zeros = zero_report(ctx.product(), Sn, wp);
  SplitSn split = split_Sn(ctx.product(), q.zeros, wp);
  const MomentTable& m = ctx.rho_moments(2 * n + 2);
  const BigPoly Sb = to_bigfloat(Sn, wp);
  const BigPoly dSb = Sb.derivative();
  for (const auto& xi : split.interior) {
    const BigFloat num = integrate_moments(deflate(Sb, xi), m, wp);
    q.nodes.push_back(xi.rounded(prec));
    q.lambdas.push_back((num / dSb(xi)).rounded(prec));
    q.s2plus_at_nodes.push_back(split.S2plus(xi).rounded(prec));
  }
  q.total_mass = integrate_moments(split.S2plus, m, wp).rounded(prec);
  q.S1 = rounded(split.S1, prec);
  q.S2plus = rounded(split.S2plus, prec);
  return q;
}

inline QuadratureRule christoffel(const SobolevProduct& sp, int n, unsigned prec) {
  AssocContext ctx(sp, n);
  return christoffel(ctx, n, prec);
}

// ---------------------------------------------------------------------------
// R^[k]_{n,1}

/// Σ_j Q_{k-1}(ξ_j) S⁺_{n+k,2}(ξ_j) λ_{n+k,j}/(z - ξ_j) over the rule for n+k.
/// The factor Q_{k-1}(ξ_j) is 1 for k = 1.
inline Complex partial_fraction_R1(AssocContext& ctx, const QuadratureRule& rule, int k, const Complex& z) {
  if (k < 1) throw argument_error("partial_fraction_R1: needs k >= 1");
  if (compare(abs(z.imag()), Rational(0)) == 0 && compare(abs(z.real()), Rational(1)) <= 0)
    throw domain_error("partial_fraction_R1: z lies on [-1, 1]");
  const unsigned prec = rule.prec;
  const Poly& q = ctx.Q(k - 1)[k - 1];
  Complex s(prec);
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const BigFloat& xi = rule.nodes[j];
    BigFloat b = rule.s2plus_at_nodes[j] * rule.lambdas[j] * q(xi);
    s += Complex(b) / (z.rounded(prec) - Complex(xi));
  }
  return s;
}

inline Complex partial_fraction_R1(AssocContext& ctx, int n, int k, const Complex& z, unsigned prec) {
  return partial_fraction_R1(ctx, christoffel(ctx, n + k, prec), k, z);
}

/// The weight of dμ_{ρ,n} = S⁺_{n+k,2} ρ dμ as a BigFloat polynomial.
inline BigPoly mu_rho_n_weight(AssocContext& ctx, const QuadratureRule& rule) {
  return rule.S2plus * to_bigfloat(ctx.mrho().weight, rule.prec);
}

/// S^[k]_{n,1}(z) = ∫ (S_{n+k,1}(z) - S_{n+k,1}(x))/(z - x) Q_{k-1}(x) dμ_{ρ,n}(x).
inline BigPoly assoc_S1nk(AssocContext& ctx, const QuadratureRule& rule, int k) {
  const unsigned prec = rule.prec;
  const BigPoly W = mu_rho_n_weight(ctx, rule) * to_bigfloat(ctx.Q(k - 1)[k - 1], prec);
  const int count = rule.S1.degree();
  std::vector<BigFloat> nu;
  for (int j = 0; j < count; ++j) {
    BigFloat s(0L, prec);
    for (int t = 0; t <= W.degree(); ++t) s += W[t] * BigFloat(lebesgue_moment(j + t), prec);
    nu.push_back(std::move(s));
  }
  return divided_difference_transform(rule.S1, nu);
}

/// S^[k]_{n,1}(z) / S_{n+k,1}(z) evaluated directly.
inline Complex direct_R1(AssocContext& ctx, const QuadratureRule& rule, int k, const Complex& z) {
  const BigPoly num = assoc_S1nk(ctx, rule, k);
  const Complex zz = z.rounded(rule.prec);
  return num(zz) / rule.S1(zz);
}

}  // namespace dsop
