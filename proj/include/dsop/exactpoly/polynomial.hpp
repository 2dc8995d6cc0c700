#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/bigfloat.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace dsop {

/// Dense univariate polynomial, coefficients in ascending degree order with
/// trailing zeros trimmed. The zero polynomial has no coefficients and
/// degree -1.
///
/// T is one of Rational (exact), BigFloat or Complex.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  /// coeff * x^k
  static Polynomial monomial(int k, T coeff) {
    std::vector<T> c(static_cast<size_t>(k) + 1, zero_like(coeff));
    c[static_cast<size_t>(k)] = std::move(coeff);
    return Polynomial(std::move(c));
  }

  /// The constant polynomial `value`.
  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  const T& leading() const { return c_.back(); }

  /// coefficient of x^i, zero beyond the degree (`like` supplies precision)
  T coeff_or_zero(int i, const T& like) const {
    return i >= 0 && i <= degree() ? c_[static_cast<size_t>(i)] : zero_like(like);
  }

  bool is_monic() const {
    if constexpr (std::is_same_v<T, Rational>) {
      return !is_zero() && leading() == 1;
    } else {
      return !is_zero() && leading() == one_like(leading());
    }
  }

  Polynomial operator-() const {
    std::vector<T> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(-v);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Polynomial& lo = a.c_.size() < b.c_.size() ? a : b;
    const Polynomial& hi = a.c_.size() < b.c_.size() ? b : a;
    std::vector<T> c = hi.c_;
    for (size_t i = 0; i < lo.c_.size(); ++i) c[i] = c[i] + lo.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0] * b.c_[0]));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const T& s) {
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (const auto& v : a.c_) c.push_back(v * s);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) { return a * s; }

  friend Polynomial operator/(const Polynomial& a, const T& s) {
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (const auto& v : a.c_) c.push_back(v / s);
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// x * p
  Polynomial shifted(int k = 1) const {
    if (is_zero()) return {};
    std::vector<T> c(static_cast<size_t>(k), zero_like(c_[0]));
    c.insert(c.end(), c_.begin(), c_.end());
    return Polynomial(std::move(c));
  }

  /// Order-m derivative: x^k -> k!/(k-m)! x^(k-m).
  Polynomial derivative(int order = 1) const {
    if (order < 0) throw argument_error("negative derivative order");
    if (order == 0) return *this;
    if (degree() < order) return {};
    std::vector<T> c;
    c.reserve(c_.size() - static_cast<size_t>(order));
    for (int k = order; k <= degree(); ++k) {
      T v = c_[static_cast<size_t>(k)];
      for (int i = 0; i < order; ++i) v = v * static_cast<long>(k - i);
      c.push_back(std::move(v));
    }
    return Polynomial(std::move(c));
  }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (is_zero()) throw argument_error("zero polynomial has no monic normalization");
    T lc = leading();
    return *this / lc;
  }

  /// Horner evaluation. X may be T or a wider kind (Rational -> BigFloat ->
  /// Complex); coefficients are lifted to the precision of x.
  template <class X>
  X operator()(const X& x) const {
    if (is_zero()) return zero_like(x);
    X acc = lift(c_.back(), x);
    for (int i = degree() - 1; i >= 0; --i) acc = acc * x + lift(c_[static_cast<size_t>(i)], x);
    return acc;
  }

  /// Coefficient-wise conversion.
  template <class U, class F>
  Polynomial<U> map(F&& f) const {
    std::vector<U> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(f(v));
    return Polynomial<U>(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && dsop::is_zero(c_.back())) c_.pop_back();
  }

  // `is_zero` inside the class would find the member; route through the
  // free overloads explicitly.
  static bool is_zero(const T& v) { return dsop::is_zero(v); }

  std::vector<T> c_;
};

using Poly = Polynomial<Rational>;
using BigPoly = Polynomial<BigFloat>;
using ComplexPoly = Polynomial<Complex>;

/// The polynomial x.
inline Poly poly_x() { return Poly{Rational(0), Rational(1)}; }

/// Product of (x - r) over the given roots.
inline Poly poly_from_roots(const std::vector<Rational>& roots) {
  Poly p = Poly::constant(Rational(1));
  for (const auto& r : roots) p = p * Poly{Rational(-r), Rational(1)};
  return p;
}

/// Quotient and remainder of a / b over a field.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw argument_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<T>{}, a};
  std::vector<T> r = a.coeffs();
  const int db = b.degree();
  const T& lc = b.leading();
  std::vector<T> q(static_cast<size_t>(a.degree() - db + 1), zero_like(lc));
  for (int k = a.degree() - db; k >= 0; --k) {
    T f = r[static_cast<size_t>(k + db)] / lc;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k + j)] -= f * b[j];
    q[static_cast<size_t>(k)] = std::move(f);
  }
  r.resize(static_cast<size_t>(db));
  return {Polynomial<T>(std::move(q)), Polynomial<T>(std::move(r))};
}

/// Synthetic division by (x - root); the remainder p(root) is dropped.
template <class T>
Polynomial<T> deflate(const Polynomial<T>& p, const T& root) {
  if (p.degree() < 1) return {};
  std::vector<T> q(static_cast<size_t>(p.degree()), zero_like(root));
  T acc = p.leading();
  for (int k = p.degree() - 1; k >= 0; --k) {
    q[static_cast<size_t>(k)] = acc;
    acc = acc * root + p[k];
  }
  return Polynomial<T>(std::move(q));
}

inline BigPoly to_bigfloat(const Poly& p, unsigned prec) {
  return p.map<BigFloat>([prec](const Rational& q) { return BigFloat(q, prec); });
}

inline BigPoly rounded(const BigPoly& p, unsigned prec) {
  return p.map<BigFloat>([prec](const BigFloat& v) { return v.rounded(prec); });
}

/// Sum of absolute values of the coefficients.
inline Rational norm1(const Poly& p) {
  Rational s;
  for (const auto& c : p.coeffs()) s += abs(c);
  return s;
}

inline BigFloat norm1(const BigPoly& p, unsigned prec) {
  BigFloat s(0L, prec);
  for (const auto& c : p.coeffs()) s += abs(c);
  return s;
}

/// Human-readable form, highest degree first: "x^2 - 1/3".
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || k == 0) os << to_string(mag);
    if (k >= 1) {
      if (!unit) os << "*";
      os << "x";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace dsop
