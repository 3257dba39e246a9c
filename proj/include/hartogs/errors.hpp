#pragma once

#include <stdexcept>
#include <string>

namespace hartogs {

/// Input violates an operation's stated precondition (p < 1, bad ordering, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A (c, d) kernel-bound pair fails the admissibility inequalities.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point lies outside the domain a kernel or function is defined on.
class DomainMembershipError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A lattice index is not in the index set a projection or check requires.
class NotAllowableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel and shape (or bound) refer to different domains.
class ShapeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature sample evaluated to a non-finite value.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hartogs
