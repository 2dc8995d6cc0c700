#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "dsop/errors.hpp"

namespace dsop {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

/// Parses "p", "p/q", or a finite decimal such as "-0.125" or "1e-3" into an
/// exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw argument_error("empty rational literal");

  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
      throw argument_error("malformed rational literal '" + s + "'");
    q.canonicalize();
    return q;
  }

  // decimal with optional exponent
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (...) {
      throw argument_error("malformed exponent in '" + s + "'");
    }
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char ch : mant) {
    if (ch == '.') {
      if (seen_dot) throw argument_error("malformed decimal literal '" + s + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_dot) ++frac;
    } else {
      throw argument_error("malformed numeric literal '" + s + "'");
    }
  }
  if (digits.empty()) throw argument_error("malformed numeric literal '" + s + "'");
  Integer num(digits, 10);
  Integer ten_pow;
  long shift = exp10 - frac;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

/// Canonical "p/q" form ("p" when the denominator is 1).
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Integer factorial_ratio(long k, long m) {
  // k!/(k-m)!, zero when m > k
  if (m > k) return Integer(0);
  Integer r(1);
  for (long i = 0; i < m; ++i) r *= Integer(k - i);
  return r;
}

}  // namespace dsop
