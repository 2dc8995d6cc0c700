#pragma once

#include <stdexcept>
#include <string>

namespace dsop {

/// Malformed input: wrong dimensions, zero polynomial where a nonzero one is
/// required, overlapping neighborhoods, empty report grids.
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value lies outside the mathematical domain of an operation
/// (mass point inside [-1,1], evaluation point on the cut).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested evaluation cannot be carried out reliably at the working
/// precision (too close to the cut, too close to a pole).
class precision_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zeros of S_n do not split as n-N interior plus N attracted ones.
class decomposition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that the mathematics rules out happened; indicates a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dsop
