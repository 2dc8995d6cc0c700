#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <string>
#include <utility>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace dsop {

inline constexpr unsigned kDefaultPrecision = 256;
inline constexpr unsigned kMinPrecision = 64;

/// Radix-2 floating number with an explicit precision in bits, backed by MPFR.
/// Every operation rounds to nearest at the result precision; binary
/// operations take the larger of the operand precisions.
class BigFloat {
 public:
  BigFloat() : BigFloat(0L, kDefaultPrecision) {}

  BigFloat(long v, unsigned prec) {
    init(prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }

  BigFloat(const Rational& q, unsigned prec) {
    init(prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }

  BigFloat(const BigFloat& other, unsigned prec) {
    init(prec);
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  static BigFloat from_double(double d, unsigned prec) {
    BigFloat r(0L, prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }

  /// Parses a decimal string, rounding once to `prec` bits.
  static BigFloat parse(const std::string& s, unsigned prec) {
    BigFloat r(0L, prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw argument_error("malformed floating literal '" + s + "'");
    return r;
  }

  static BigFloat pi(unsigned prec) {
    BigFloat r(0L, prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  /// 2^e at the given precision.
  static BigFloat pow2(long e, unsigned prec) {
    BigFloat r(1L, prec);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  BigFloat(const BigFloat& other) {
    init(static_cast<unsigned>(mpfr_get_prec(other.v_)));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& other) noexcept {
    // leave `other` as a valid (NaN-free) zero of minimal precision
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
    mpfr_set_zero(other.v_, 1);
  }

  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(v_); }

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  /// Copy rounded to a different precision.
  BigFloat rounded(unsigned prec) const { return BigFloat(*this, prec); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  /// Exact rational value of this binary floating number.
  Rational to_rational() const {
    Rational q;
    if (is_zero()) return q;
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    q = m;
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return q;
  }

  /// Scientific-notation string with `digits` significant decimal digits.
  std::string to_string(int digits = 20) const {
    if (is_zero()) return "0";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "Re";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  BigFloat operator-() const {
    BigFloat r(0L, precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& b) { return assign_binary(b, mpfr_add); }
  BigFloat& operator-=(const BigFloat& b) { return assign_binary(b, mpfr_sub); }
  BigFloat& operator*=(const BigFloat& b) { return assign_binary(b, mpfr_mul); }
  BigFloat& operator/=(const BigFloat& b) { return assign_binary(b, mpfr_div); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

  template <std::integral I>
  friend BigFloat operator*(const BigFloat& a, I k) {
    BigFloat r(0L, a.precision());
    mpfr_mul_si(r.v_, a.v_, static_cast<long>(k), MPFR_RNDN);
    return r;
  }
  template <std::integral I>
  friend BigFloat operator*(I k, const BigFloat& a) { return a * k; }
  template <std::integral I>
  friend BigFloat operator/(const BigFloat& a, I k) {
    BigFloat r(0L, a.precision());
    mpfr_div_si(r.v_, a.v_, static_cast<long>(k), MPFR_RNDN);
    return r;
  }
  template <std::integral I>
  friend BigFloat operator+(const BigFloat& a, I k) {
    BigFloat r(0L, a.precision());
    mpfr_add_si(r.v_, a.v_, static_cast<long>(k), MPFR_RNDN);
    return r;
  }
  template <std::integral I>
  friend BigFloat operator-(const BigFloat& a, I k) {
    BigFloat r(0L, a.precision());
    mpfr_sub_si(r.v_, a.v_, static_cast<long>(k), MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend int compare(const BigFloat& a, const Rational& q) { return mpfr_cmp_q(a.v_, q.get_mpq_t()); }

  friend BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }
  friend BigFloat sqrt(const BigFloat& a) { return unary(a, mpfr_sqrt); }
  friend BigFloat log(const BigFloat& a) { return unary(a, mpfr_log); }
  friend BigFloat exp(const BigFloat& a) { return unary(a, mpfr_exp); }
  friend BigFloat cos(const BigFloat& a) { return unary(a, mpfr_cos); }
  friend BigFloat sin(const BigFloat& a) { return unary(a, mpfr_sin); }

  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(0L, std::max(y.precision(), x.precision()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_hypot); }

  friend BigFloat pow(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_pow); }

  friend BigFloat pow(const BigFloat& a, long k) {
    BigFloat r(0L, a.precision());
    mpfr_pow_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }

  /// a * 2^e, exact.
  friend BigFloat ldexp(const BigFloat& a, long e) {
    BigFloat r(0L, a.precision());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
  friend BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& a) { return os << a.to_string(30); }

  const __mpfr_struct* raw() const { return v_; }
  __mpfr_struct* raw() { return v_; }

 private:
  void init(unsigned prec) {
    if (prec < MPFR_PREC_MIN) prec = MPFR_PREC_MIN;
    mpfr_init2(v_, static_cast<mpfr_prec_t>(prec));
  }

  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static BigFloat binary(const BigFloat& a, const BigFloat& b, BinaryFn fn) {
    BigFloat r(0L, std::max(a.precision(), b.precision()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  static BigFloat unary(const BigFloat& a, UnaryFn fn) {
    BigFloat r(0L, a.precision());
    fn(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  BigFloat& assign_binary(const BigFloat& b, BinaryFn fn) {
    if (b.precision() > precision()) {
      BigFloat r = binary(*this, b, fn);
      *this = std::move(r);
    } else {
      fn(v_, v_, b.v_, MPFR_RNDN);
    }
    return *this;
  }

  mpfr_t v_;
};

inline bool is_zero(const BigFloat& x) { return x.is_zero(); }
inline BigFloat zero_like(const BigFloat& ref) { return BigFloat(0L, ref.precision()); }
inline BigFloat one_like(const BigFloat& ref) { return BigFloat(1L, ref.precision()); }

/// Complex number with BigFloat parts.
class Complex {
 public:
  Complex() = default;
  explicit Complex(unsigned prec) : re_(0L, prec), im_(0L, prec) {}
  Complex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(BigFloat re) : re_(std::move(re)), im_(0L, re_.precision()) {}
  Complex(const Rational& re, const Rational& im, unsigned prec) : re_(re, prec), im_(im, prec) {}

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  unsigned precision() const { return std::max(re_.precision(), im_.precision()); }

  Complex rounded(unsigned prec) const { return {re_.rounded(prec), im_.rounded(prec)}; }

  Complex conj() const { return {re_, -im_}; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex operator-() const { return {-re_, -im_}; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    BigFloat den = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
  }
  friend Complex operator+(const Complex& a, const BigFloat& b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, const BigFloat& b) { return {a.re_ - b, a.im_}; }
  friend Complex operator*(const Complex& a, const BigFloat& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator/(const Complex& a, const BigFloat& b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator*(const BigFloat& b, const Complex& a) { return a * b; }
  template <std::integral I>
  friend Complex operator*(const Complex& a, I k) { return {a.re_ * k, a.im_ * k}; }
  template <std::integral I>
  friend Complex operator/(const Complex& a, I k) { return {a.re_ / k, a.im_ / k}; }

  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }

  friend BigFloat abs(const Complex& z) { return hypot(z.re_, z.im_); }

  /// Principal argument in (-pi, pi].
  friend BigFloat arg(const Complex& z) {
    BigFloat a = atan2(z.im_, z.re_);
    BigFloat pi = BigFloat::pi(a.precision());
    if (a <= -pi) a = pi;
    return a;
  }

  /// Principal logarithm: log|z| + i arg z.
  friend Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

  /// Principal square root (non-negative real part; on the negative real
  /// axis the root on the positive imaginary axis).
  friend Complex sqrt(const Complex& z) {
    unsigned prec = z.precision();
    if (z.is_zero()) return Complex(prec);
    BigFloat r = abs(z);
    BigFloat t = sqrt((r + abs(z.re_)) / 2);
    if (z.re_.sign() >= 0) return {t, z.im_ / (t * 2)};
    BigFloat im = z.im_.sign() < 0 ? -t : t;
    return {abs(z.im_) / (t * 2), im};
  }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << z.re_ << ", " << z.im_ << ")";
  }

 private:
  BigFloat re_;
  BigFloat im_;
};

/// e^{i theta}
inline Complex exp_i(const BigFloat& theta) { return {cos(theta), sin(theta)}; }

inline bool is_zero(const Complex& z) { return z.is_zero(); }
inline Complex zero_like(const Complex& ref) { return Complex(ref.precision()); }
inline Complex one_like(const Complex& ref) { return Complex(BigFloat(1L, ref.precision())); }

/// Coefficient lifting used by mixed-type polynomial evaluation.
inline const Rational& lift(const Rational& c, const Rational&) { return c; }
inline BigFloat lift(const Rational& c, const BigFloat& like) { return BigFloat(c, like.precision()); }
inline const BigFloat& lift(const BigFloat& c, const BigFloat&) { return c; }
inline Complex lift(const Rational& c, const Complex& like) { return Complex(BigFloat(c, like.precision())); }
inline Complex lift(const BigFloat& c, const Complex&) { return Complex(c); }
inline const Complex& lift(const Complex& c, const Complex&) { return c; }

}  // namespace dsop
