#pragma once

#include <vector>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/rational.hpp"

namespace dsop {

/// One discrete term of a Sobolev inner product: derivative evaluations at
/// the location `c`, top order `order` with weight `eta` > 0, and optional
/// non-negative weights for the lower orders 0..order-1.
struct MassTerm {
  Rational c;
  int order = 0;
  Rational eta = 1;
  std::vector<Rational> lower_eta;  // size 0 (all zero) or `order`

  /// Weight of the derivative of order i (0 <= i <= order).
  Rational weight(int i) const {
    if (i == order) return eta;
    if (i < 0 || i > order) return Rational(0);
    return static_cast<size_t>(i) < lower_eta.size() ? lower_eta[static_cast<size_t>(i)] : Rational(0);
  }

  void validate() const {
    if (order < 0) throw argument_error("mass term: negative derivative order");
    if (sgn(eta) <= 0) throw argument_error("mass term: top-order weight must be positive");
    if (!lower_eta.empty() && lower_eta.size() != static_cast<size_t>(order))
      throw argument_error("mass term: lower_eta must list exactly `order` weights");
    for (const auto& e : lower_eta)
      if (sgn(e) < 0) throw argument_error("mass term: negative lower-order weight");
  }
};

}  // namespace dsop
