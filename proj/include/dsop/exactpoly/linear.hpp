#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace dsop {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// Outcome of an exact linear solve.
struct LinearSolution {
  enum class Kind { unique, none, many };

  Kind kind = Kind::none;
  size_t rank = 0;
  /// The solution when `unique`; a particular solution when `many`.
  RationalVector x;
  /// Basis of the null space of A (non-empty exactly when `many`, or when
  /// `none` and A is rank-deficient).
  std::vector<RationalVector> null_basis;

  bool is_unique() const { return kind == Kind::unique; }
};

/// Solves A x = b exactly by Gauss-Jordan elimination over the rationals.
///
/// The first nonzero entry in each column is taken as pivot, so the result
/// does not depend on magnitudes. Null-space vectors are normalized so that
/// their first nonzero entry is positive.
inline LinearSolution solve_linear_exact(RationalMatrix A, RationalVector b) {
  const size_t rows = A.size();
  if (b.size() != rows) throw argument_error("solve_linear_exact: b has " + std::to_string(b.size()) +
                                             " entries but A has " + std::to_string(rows) + " rows");
  const size_t cols = rows == 0 ? 0 : A[0].size();
  for (const auto& row : A)
    if (row.size() != cols) throw argument_error("solve_linear_exact: ragged matrix");

  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(A[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    const Rational inv = 1 / A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(A[i][c]) == 0) continue;
      const Rational f = A[i][c];
      for (size_t j = c; j < cols; ++j)
        if (sgn(A[r][j]) != 0) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }

  LinearSolution out;
  out.rank = r;

  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (size_t i = 0; i < r; ++i) v[pivot_col[i]] = -A[i][f];
    for (const auto& e : v) {
      if (sgn(e) == 0) continue;
      if (sgn(e) < 0)
        for (auto& t : v) t = -t;
      break;
    }
    out.null_basis.push_back(std::move(v));
  }

  for (size_t i = r; i < rows; ++i) {
    if (sgn(b[i]) != 0) {
      out.kind = LinearSolution::Kind::none;
      return out;
    }
  }
  out.x.assign(cols, Rational(0));
  for (size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = b[i];
  out.kind = r == cols ? LinearSolution::Kind::unique : LinearSolution::Kind::many;
  return out;
}

}  // namespace dsop
