#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bsl {

// Error taxonomy. The four bases map onto the CLI exit codes:
// InputError -> 2, GeometryError -> 3, NumericsError -> 4, InvariantError -> 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- input errors (exit 2) --
struct ParseError : InputError {
  using InputError::InputError;
};
struct ZeroExponent : InputError {
  ZeroExponent() : InputError("exponent must be nonzero") {}
};
struct NonPositiveAlpha : InputError {
  NonPositiveAlpha() : InputError("alpha must be positive") {}
};
struct DegenerateFit : InputError {
  using InputError::InputError;
};
// Integer exponents in [1, n] fall outside the monomial-envelope cases and
// need the log-corrected form; `k` is the integer value.
struct IntegerBetaCase : InputError {
  int k;
  explicit IntegerBetaCase(int k_)
      : InputError("integer exponent " + std::to_string(k_) +
                   " in [1, n] requires the log-corrected envelope"),
        k(k_) {}
};
// Octant rules require integrands invariant under coordinate sign flips.
struct SymmetryMismatch : InputError {
  SymmetryMismatch()
      : InputError("octant rule requires a sign-symmetric integrand") {}
};

// -- geometry / feasibility errors (exit 3) --
struct CenterNotInterior : GeometryError {
  CenterNotInterior() : GeometryError("center is not strictly interior") {}
  using GeometryError::GeometryError;
};
struct SupportUnavailable : GeometryError {
  using GeometryError::GeometryError;
};
struct PolarUnavailable : GeometryError {
  using GeometryError::GeometryError;
};
struct DegenerateInput : GeometryError {
  using GeometryError::GeometryError;
};

// -- numerics errors (exit 4) --
struct NonFiniteIntegrand : NumericsError {
  std::vector<double> direction;
  explicit NonFiniteIntegrand(std::vector<double> dir)
      : NumericsError("integrand is not finite at a quadrature node"),
        direction(std::move(dir)) {}
};
struct NoConvergence : NumericsError {
  long iterations;
  double gap;
  NoConvergence(long iters, double g)
      : NumericsError("no convergence after " + std::to_string(iters) +
                      " iterations (gap " + std::to_string(g) + ")"),
        iterations(iters),
        gap(g) {}
};

// -- invariant failures (exit 1) --
struct EquivalenceViolation : InvariantError {
  using InvariantError::InvariantError;
};
struct BoundViolation : InvariantError {
  std::vector<double> gamma;
  BoundViolation(const std::string& msg, std::vector<double> gamma_vec)
      : InvariantError(msg), gamma(std::move(gamma_vec)) {}
};

}  // namespace bsl
