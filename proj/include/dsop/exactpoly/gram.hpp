#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/linear.hpp"
#include "dsop/exactpoly/polynomial.hpp"

namespace dsop {

/// Monic polynomial p of degree n with <x^k, p> = 0 for k < n, where the
/// bilinear form is given on monomials by gram(i, j) = <x^i, x^j>.
///
/// Solves the n x n system G s = -g exactly and re-checks every residual.
/// `row_order`, when given, permutes the equations before elimination.
template <class GramFn>
Poly monic_orthogonal(GramFn&& gram, int n, const std::vector<size_t>* row_order = nullptr) {
  if (n < 0) throw argument_error("monic_orthogonal: negative degree");
  if (n == 0) return Poly::constant(Rational(1));
  const auto un = static_cast<size_t>(n);
  std::vector<size_t> order(un);
  std::iota(order.begin(), order.end(), size_t{0});
  if (row_order) {
    if (row_order->size() != un) throw argument_error("monic_orthogonal: row permutation has wrong size");
    order = *row_order;
  }
  RationalMatrix A(un, RationalVector(un));
  RationalVector b(un);
  for (size_t r = 0; r < un; ++r) {
    const int k = static_cast<int>(order[r]);
    for (int j = 0; j < n; ++j) A[r][static_cast<size_t>(j)] = gram(k, j);
    b[r] = -gram(k, n);
  }
  LinearSolution sol = solve_linear_exact(std::move(A), std::move(b));
  if (!sol.is_unique())
    throw internal_error("monic_orthogonal: singular Gram matrix at degree " + std::to_string(n));
  std::vector<Rational> coeffs = sol.x;
  coeffs.emplace_back(1);
  for (int k = 0; k < n; ++k) {
    Rational res = gram(k, n);
    for (int j = 0; j < n; ++j) res += gram(k, j) * coeffs[static_cast<size_t>(j)];
    if (sgn(res) != 0) throw internal_error("monic_orthogonal: nonzero residual after solve");
  }
  return Poly(std::move(coeffs));
}

/// <f, g> for the bilinear form with monomial Gram entries gram(i, j).
template <class GramFn>
Rational gram_inner(GramFn&& gram, const Poly& f, const Poly& g) {
  Rational s;
  for (int i = 0; i <= f.degree(); ++i) {
    if (sgn(f[i]) == 0) continue;
    Rational row;
    for (int j = 0; j <= g.degree(); ++j)
      if (sgn(g[j]) != 0) row += gram(i, j) * g[j];
    s += f[i] * row;
  }
  return s;
}

}  // namespace dsop
