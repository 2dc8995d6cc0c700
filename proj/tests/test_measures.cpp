#include <gtest/gtest.h>

#include "dsop/measures.hpp"
#include "oracles.hpp"

using namespace dsop;

namespace {

Complex cz(long re, long im, unsigned prec = 256) { return Complex(BigFloat(re, prec), BigFloat(im, prec)); }

Complex oracle_cauchy(const Poly& G, const Complex& z, unsigned prec) {
  return oracle::tanh_sinh([&](const BigFloat& x) { return Complex(G(x)) / (z - Complex(x)); }, prec);
}

const MeasureSpec kOneMinusX = MeasureSpec::with_weight(Poly{Rational(1), Rational(-1)});

}  // namespace

TEST(Moments, Examples) {
  auto leb = moments(MeasureSpec::lebesgue(), 9);
  EXPECT_EQ(leb[0], 2);
  for (int k = 1; k <= 9; k += 2) EXPECT_EQ(leb[k], 0);
  EXPECT_EQ(leb[4], Rational(2, 5));
  auto t = moments(kOneMinusX, 3);
  EXPECT_EQ(t[1], Rational(-2, 3));  // ∫x(1-x)dx
  EXPECT_EQ(t[0], 2);
  EXPECT_THROW(moments(kOneMinusX, -1), argument_error);
}

TEST(Measure, Validation) {
  EXPECT_THROW(MeasureSpec::with_weight(Poly{Rational(0), Rational(1)}), argument_error);
  EXPECT_THROW(MeasureSpec::with_weight(Poly{Rational(-1)}), argument_error);
  EXPECT_THROW(MeasureSpec::with_weight(Poly{}), argument_error);
  EXPECT_NO_THROW(MeasureSpec::with_weight(Poly{Rational(1), Rational(1)}));
}

TEST(StandardOps, Legendre) {
  auto b = standard_ops(MeasureSpec::lebesgue(), 12);
  for (const auto& v : b.rec_b) EXPECT_EQ(v, 0);
  EXPECT_EQ(b[2], (Poly{Rational(-1, 3), 0, 1}));
  EXPECT_EQ(b.rec_a2[1], Rational(1, 3));
  EXPECT_EQ(b.rec_a2[0], 2);
  // classical a_n^2 = n^2/(4n^2-1)
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(b.rec_a2[static_cast<size_t>(n)], Rational(n * n, 4 * n * n - 1));
  EXPECT_TRUE(b.recurrence_holds());
}

TEST(StandardOps, OrthogonalityExact) {
  auto b = standard_ops(kOneMinusX, 15);
  for (int n = 0; n <= 15; ++n) {
    EXPECT_TRUE(b[n].is_monic());
    EXPECT_EQ(b[n].degree(), n);
    for (int j = 0; j < n; ++j) EXPECT_EQ(kOneMinusX.integrate(Poly::monomial(j, Rational(1)) * b[n]), 0);
    EXPECT_GT(b.norms2[static_cast<size_t>(n)], 0);
  }
  EXPECT_TRUE(b.recurrence_holds());
}

TEST(StandardOps, RatioAsymptotics) {
  auto b = standard_ops(MeasureSpec::lebesgue(), 41);
  const unsigned prec = 256;
  BigFloat two(2L, prec);
  BigFloat half_phi = (two + oracle::newton_sqrt(Rational(3), prec)) / 2L;
  BigFloat prev(0L, prec);
  for (int n = 20; n <= 40; ++n) {
    BigFloat r = abs(b[n + 1](two) / b[n](two) - half_phi);
    if (n > 20) {
      EXPECT_LT(r, prev);
    }
    prev = r;
  }
  EXPECT_LT(prev.to_double(), 1e-3);
}

TEST(ModifiedMeasure, Rho) {
  std::vector<MassTerm> m{{Rational(2), 0, 1, {}}, {Rational(3), 1, 1, {}}};
  Poly rho = rho_polynomial(m);
  EXPECT_EQ(rho, (Poly{Rational(2), Rational(-1)} * Poly{Rational(3), Rational(-1)} * Poly{Rational(3), Rational(-1)}));
  EXPECT_EQ(rho.degree(), 3);
  EXPECT_EQ(rho_polynomial({}), Poly::constant(Rational(1)));
  Poly r2 = rho_polynomial({{Rational(-2), 1, 1, {}}});
  EXPECT_EQ(r2, (Poly{Rational(4), Rational(4), Rational(1)}));
  EXPECT_EQ(count_roots_in(r2, -1, 1), 0);
  EXPECT_EQ(modified_measure(MeasureSpec::lebesgue(), m).weight, rho);
  EXPECT_THROW(rho_polynomial({{Rational(1, 2), 0, 1, {}}}), domain_error);
  EXPECT_THROW(rho_polynomial({{Rational(-1), 0, 1, {}}}), domain_error);
}

TEST(Markov, LebesgueAtThree) {
  Complex v = markov_eval(MeasureSpec::lebesgue(), Poly::constant(Rational(1)), cz(3, 0), 256);
  BigFloat ln2 = log(BigFloat(2L, 256));
  EXPECT_LT(abs(v - Complex(ln2)).to_double(), 1e-70);
  Complex o = oracle_cauchy(Poly::constant(Rational(1)), cz(3, 0), 256);
  EXPECT_LT(abs(v - o).to_double(), 1e-60);
}

TEST(Markov, LargeArgument) {
  Complex z = cz(1000000, 0);
  Complex v = markov_eval(MeasureSpec::lebesgue(), Poly::constant(Rational(1)), z, 256);
  EXPECT_LT(std::abs((z * v).real().to_double() - 2.0), 1e-5);
}

TEST(Markov, OneMinusXAtThree) {
  Complex v = markov_eval(kOneMinusX, Poly::constant(Rational(1)), cz(3, 0), 256);
  BigFloat want = BigFloat(2L, 256) - log(BigFloat(2L, 256)) * 2L;
  EXPECT_LT(abs(v - Complex(want)).to_double(), 1e-70);
}

TEST(Markov, AgreesWithOraclesOffAxis) {
  const Poly q{Rational(1, 3), Rational(-2), Rational(0), Rational(5, 7)};
  for (auto z : {cz(2, 1), cz(-2, 1), cz(0, 1), cz(0, -1), cz(-3, -2), cz(5, 0)}) {
    Complex v = markov_eval(kOneMinusX, q, z, 256);
    Complex gl = markov_eval_quadrature(kOneMinusX.weight, q, z, 256);
    Complex ts = oracle_cauchy(q * kOneMinusX.weight, z, 256);
    EXPECT_LT(abs(v - gl).to_double(), 1e-20);
    EXPECT_LT(abs(v - ts).to_double(), 1e-50);
  }
}

TEST(Markov, BranchContinuityAcrossRealAxis) {
  // outside the cut, values from above and below the axis agree
  const unsigned prec = 256;
  Complex up(BigFloat(3L, prec), BigFloat::pow2(-100, prec));
  Complex dn(BigFloat(3L, prec), -BigFloat::pow2(-100, prec));
  auto f = [&](const Complex& z) { return markov_eval(MeasureSpec::lebesgue(), Poly::constant(Rational(1)), z, prec); };
  EXPECT_LT(abs(f(up) - f(dn)).to_double(), 1e-25);
  Complex upn(BigFloat(-3L, prec), BigFloat::pow2(-100, prec));
  Complex dnn(BigFloat(-3L, prec), -BigFloat::pow2(-100, prec));
  EXPECT_LT(abs(f(upn) - f(dnn)).to_double(), 1e-25);
  // across the cut the jump is 2*pi*i*w(x)
  Complex a(BigFloat(Rational(1, 2), prec), BigFloat::pow2(-40, prec));
  Complex b(BigFloat(Rational(1, 2), prec), -BigFloat::pow2(-40, prec));
  EXPECT_NEAR((f(b) - f(a)).imag().to_double(), 2 * M_PI, 1e-9);
}

TEST(Markov, PrecisionGuardNearCut) {
  Complex z(BigFloat(Rational(1, 2), 256), BigFloat::pow2(-80, 256));
  EXPECT_THROW(markov_eval(MeasureSpec::lebesgue(), Poly::constant(Rational(1)), z, 256), precision_error);
}

TEST(Markov, BigFloatWeight) {
  BigPoly w = to_bigfloat(kOneMinusX.weight, 256);
  BigPoly q = to_bigfloat(Poly{Rational(1), Rational(1, 2)}, 256);
  Complex a = markov_eval_weight(w, q, cz(2, 1), 256);
  Complex b = markov_eval(kOneMinusX, Poly{Rational(1), Rational(1, 2)}, cz(2, 1), 256);
  EXPECT_LT(abs(a - b).to_double(), 1e-70);
}

TEST(GaussLegendre, TwoPoint) {
  auto r = gauss_legendre(2, 128);
  EXPECT_NEAR(r.nodes[0].to_double(), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[0].to_double(), 1.0, 1e-15);
  auto r5 = gauss_legendre(5, 200);
  BigFloat s(0L, 200);
  for (size_t i = 0; i < 5; ++i) s += r5.weights[i] * pow(r5.nodes[i], 8);
  EXPECT_LT(abs(s - BigFloat(Rational(2, 9), 200)).to_double(), 1e-55);
}
