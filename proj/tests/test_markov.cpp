#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsop/markov.hpp"
#include "oracles.hpp"

using namespace dsop;

namespace {

constexpr unsigned kPrec = 256;

SobolevProduct ordered_23() {
  return SobolevProduct(MeasureSpec::lebesgue(), {{Rational(2), 0, 1, {}}, {Rational(3), 1, 1, {}}});
}

SobolevProduct plain() { return SobolevProduct(MeasureSpec::lebesgue(), {}); }

Complex C(double re, double im = 0, unsigned prec = kPrec) {
  return {BigFloat::from_double(re, prec), BigFloat::from_double(im, prec)};
}

double dabs(const Complex& z) { return abs(z).to_double(); }

}  // namespace

TEST(Phi, Examples) {
  BigFloat s3 = oracle::newton_sqrt(Rational(3), kPrec);
  EXPECT_LT(dabs(phi(C(2)) - Complex(s3 + 2L)), 1e-70);
  EXPECT_LT(dabs(phi(C(1)) - C(1)), 1e-70);
  EXPECT_LT(dabs(phi(C(-2)) - Complex(-s3 - 2L)), 1e-70);
}

TEST(Phi, BranchAndInverse) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  const BigFloat bound = BigFloat(1L, kPrec) + BigFloat::from_double(1e-30, kPrec);
  const Complex one = C(1);
  int tested = 0;
  while (tested < 1000) {
    Complex z = C(u(rng), u(rng));
    if (distance_to_interval(z).to_double() <= 1e-2) continue;
    ++tested;
    Complex f = phi(z);
    ASSERT_GT(abs(f), bound);
    // (f + 1/f)/2 = z
    EXPECT_LT(dabs((f + one / f) / 2L - z), 1e-60);
  }
  // continuity across the real axis outside the cut
  for (double x : {-3.0, -1.5, 1.5, 3.0}) {
    Complex a = phi(C(x, 1e-20)), b = phi(C(x, -1e-20));
    EXPECT_LT(dabs(a - b), 1e-15);
  }
  // across the imaginary axis
  for (double y : {-2.0, -0.5, 0.5, 2.0}) EXPECT_LT(dabs(phi(C(1e-20, y)) - phi(C(-1e-20, y))), 1e-15);
}

TEST(LevelCurve, OnCurve) {
  const BigFloat tau = BigFloat::from_double(1.5, kPrec);
  for (const auto& z : level_curve(tau, 64, kPrec)) EXPECT_LT(std::abs(abs(phi(z)).to_double() - 1.5), 1e-60);
  EXPECT_THROW(level_curve(BigFloat(1L, kPrec), 8, kPrec), argument_error);
}

TEST(MarkovK, Examples) {
  AssocContext none(plain(), 4);
  EXPECT_LT(dabs(markov_k(none, 1, C(3), kPrec) - Complex(log(BigFloat(2L, kPrec)))), 1e-70);

  AssocContext ctx(ordered_23(), 4);
  const Poly rho = ctx.rho();
  Complex z = C(5);
  Complex a = markov_k(ctx, 1, z, kPrec);
  Complex b = oracle::tanh_sinh(
      [&](const BigFloat& x) { return Complex(rho(x)) / (z - Complex(x)); }, kPrec);
  EXPECT_LT(dabs(a - b), 1e-20);
}

TEST(MarkovK, AsymptoticNormalization) {
  AssocContext ctx(ordered_23(), 6);
  const Complex z = C(1e6);
  for (int k = 1; k <= 3; ++k) {
    Complex zk = C(1);
    for (int i = 0; i < k; ++i) zk = zk * z;
    const double n2 = BigFloat(ctx.Q(k)[0].is_zero() ? Rational(0) : ctx.Q(k).norms2[k - 1], kPrec).to_double();
    EXPECT_LT(std::abs((zk * markov_k(ctx, k, z, kPrec)).real().to_double() - n2) / n2, 1e-4) << k;
  }
}

TEST(Rnk, Examples) {
  AssocContext none(plain(), 12);
  EXPECT_LT(dabs(R_nk(none, 0, 1, C(3), kPrec) - Complex(BigFloat(Rational(2, 3), kPrec))), 1e-70);
  EXPECT_LT(dabs(R_nk(none, 5, 1, C(1e6), kPrec)), 1e-5);
  const Complex l2(log(BigFloat(2L, kPrec)));
  EXPECT_LT(dabs(l2 - R_nk(none, 8, 1, C(3), kPrec)), dabs(l2 - R_nk(none, 4, 1, C(3), kPrec)));
  // at a zero of S_1 = x
  EXPECT_THROW(R_nk(none, 0, 1, C(0), kPrec), precision_error);
}

TEST(RemainderIdentity, Examples) {
  AssocContext ctx(ordered_23(), 24);
  RemainderCheck r = remainder_identity_check(ctx, 10, 1, C(2, 1), kPrec);
  const BigFloat tol = BigFloat::pow2(-128, kPrec) * max(abs(r.lhs), abs(r.rhs));
  EXPECT_LE(abs(r.diff), tol);

  AssocContext none(plain(), 14);
  RemainderCheck z = remainder_identity_check(none, 10, 1, C(2, 1), kPrec);
  EXPECT_LE(abs(z.diff), BigFloat::pow2(-128, kPrec) * abs(z.lhs));
}

TEST(RemainderIdentity, Grid) {
  AssocContext ctx(ordered_23(), 26);
  const std::vector<Complex> grid{C(2, 1), C(-2, 1), C(5), C(-3), C(0, 2), C(1.5, -0.5), C(4, 4), C(-1.2, -0.3)};
  for (int k = 1; k <= 2; ++k)
    for (int n = 10; n <= 20; ++n) {
      QuadratureRule rule = christoffel(ctx, n + k, 2 * kPrec);
      for (const auto& z : grid) {
        RemainderCheck r = remainder_identity_check(ctx, rule, n, k, z);
        EXPECT_LE(abs(r.diff), BigFloat::pow2(-128, kPrec) * max(abs(r.lhs), abs(r.rhs))) << n << " " << k;
      }
    }
}

TEST(ConvergenceReport, NoMassRatio) {
  AssocContext none(plain(), 30);
  std::vector<int> ns;
  for (int n = 5; n <= 25; ++n) ns.push_back(n);
  RateReport r = convergence_report(none, 1, {C(3)}, ns, kPrec);
  const double pred = 1 / std::pow(3 + 2 * std::sqrt(2.0), 2);
  EXPECT_NEAR(r.predicted[0], pred, 1e-12);
  // ratio at n = 20
  EXPECT_LT(std::abs(*r.ratios[0][15] - pred) / pred, 0.1);
  EXPECT_LT(r.crosscheck_diff, 1e-20);
}

TEST(ConvergenceReport, MonotoneOnceSmall) {
  AssocContext ctx(ordered_23(), 30);
  std::vector<int> ns;
  for (int n = 5; n <= 25; ++n) ns.push_back(n);
  RateReport r = convergence_report(ctx, 1, {C(2, 1), C(-2, 1), C(5)}, ns, kPrec);
  for (size_t p = 0; p < r.points.size(); ++p) {
    const BigFloat thresh = r.errors[p][0] / 10L;
    for (size_t i = 1; i < ns.size(); ++i) {
      EXPECT_GT(r.errors[p][i].sign(), 0);
      if (r.errors[p][i - 1] < thresh && !r.at_floor[p][i]) {
        EXPECT_LT(r.errors[p][i], r.errors[p][i - 1]);
      }
    }
  }
  EXPECT_GE(r.phi_inv_norm, r.phi_norm_inv);
}

TEST(ConvergenceReport, Errors) {
  AssocContext ctx(ordered_23(), 8);
  EXPECT_THROW(convergence_report(ctx, 1, {}, {5}, kPrec), argument_error);
  EXPECT_THROW(convergence_report(ctx, 1, {C(5)}, {}, kPrec), argument_error);
  EXPECT_THROW(convergence_report(ctx, 1, {C(2.05)}, {5}, kPrec), argument_error);
}

TEST(RatioAsymptotics, Examples) {
  {
    SobolevSeq seq(plain(), 10);
    for (const auto& row : ratio_asymptotics_check(seq, {2, 5, 10}, C(2, 1), kPrec)) EXPECT_TRUE(row.error.is_zero());
  }
  {
    SobolevSeq seq(ordered_23(), 40);
    auto rows = ratio_asymptotics_check(seq, {10, 20, 30, 40}, C(4), kPrec);
    for (size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].error, rows[i - 1].error);
    // error ~ 0.41/n here: 0.0102 at n = 40
    const double r = (rows[3].error / rows[1].error).to_double();
    EXPECT_GT(r, 0.45);
    EXPECT_LT(r, 0.55);
    EXPECT_LT(rows.back().error.to_double(), 0.011);
  }
  {
    SobolevSeq seq(SobolevProduct(MeasureSpec::lebesgue(), {{Rational(2), 0, 1, {}}}), 40);
    const Complex z = C(-3);
    Complex lim = ratio_limit(seq.product(), z);
    EXPECT_GT(dabs(lim), 1e-3);
    EXPECT_LT(ratio_asymptotics_check(seq, {40}, z, kPrec)[0].error.to_double(), 1e-2);
  }
}
