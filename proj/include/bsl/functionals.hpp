#pragma once

#include <vector>

#include "bsl/bodies.hpp"
#include "bsl/quadrature.hpp"

namespace bsl {

// Exponent pair (alpha, beta) for the product functional on S^n.
struct ExponentPair {
  double alpha = 0.0;  // > 0
  double beta = 0.0;   // > 0
  int n = 0;           // sphere dimension; bodies live in R^{n+1}
};

// True for bodies invariant under every coordinate sign flip (rhombus,
// box, ellipsoid); such integrands admit octant-only rules.
bool is_unconditional(const BodySpec& spec);

// I = integral of r_z(u)^alpha over S^n. Any real alpha is accepted
// (negative exponents serve the dual quermassintegrals; alpha = 0 gives
// the surface measure). Octant rules are valid only for z = 0 on an
// unconditional body; otherwise the integrand is not sign-symmetric and
// SymmetryMismatch propagates.
IntegralEstimate radial_power_integral(const CenteredBody& body, double alpha,
                                       const SphereRule& rule);

// W_q = radial_power_integral(body, n+1-q) / (n+1); q = 0 is the volume.
double dual_quermassintegral(const CenteredBody& body, double q,
                             const SphereRule& rule);

// J = integral of (h(u) - z.u)^{-beta} over S^n, the radial-power integral
// of the polar body about z, computed from the support function so that no
// polar-of-translate geometry is ever constructed. Throws CenterNotInterior
// when any support margin h(u) - z.u is <= 0. Empty z means the origin.
IntegralEstimate polar_radial_power_integral(const BodySpec& spec,
                                             const std::vector<double>& z,
                                             double beta,
                                             const SphereRule& rule);

// I^{1/alpha} * J^{1/beta} with both factors on the same rule, so that
// correlated quadrature error cancels in ratios and slope fits.
double bs_product(const BodySpec& spec, const std::vector<double>& z,
                  const ExponentPair& pair, const SphereRule& rule);

// S(beta, a) = octant integral of (a . u)^{-beta} dsigma, evaluated in the
// direct angular form (independent of the rhombus radial path). Requires an
// octant-angle Gauss rule of matching dimension. The integrand is bounded:
// on the positive octant a.u >= min_i a_i / sqrt(dim). Axes are sorted
// internally (the integral is permutation-invariant; ascending order puts
// the concentration corner where the tensor rule resolves it best).
IntegralEstimate s_integral(double beta, const std::vector<double>& a,
                            const SphereRule& rule);

// Normalized power mean (I / sigma(S^n))^{1/alpha}; non-decreasing in
// alpha. Throws ZeroExponent at alpha = 0.
double mean_power(const CenteredBody& body, double alpha,
                  const SphereRule& rule);

// Objective for the center search: the full product, or only the polar
// factor J^{1/beta} (whose minimizer is the classical Santalo point).
enum class SantaloMode { product, polar_only };

struct SantaloOptions {
  long max_iter = 2000;       // total simplex iterations across restarts
  double diam_tol = 1e-8;     // stop when simplex diameter < diam_tol * diam
  double margin_floor = 1e-9; // trial centers with any margin <= this are +inf
  std::vector<double> z0;     // start center; empty = origin
};

struct SantaloResult {
  std::vector<double> z;
  double product_at_z = 0.0;
  double product_at_origin = 0.0;
  long iterations = 0;
  bool converged = false;   // simplex-diameter criterion met
  bool no_descent = false;  // nothing beat F(z0); z == z0 (benign)
  // best objective value after each iteration; non-increasing
  std::vector<double> best_trace;
};

// Derivative-free Nelder-Mead descent (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5) on F(z) over interior centers. Infeasible
// trial points evaluate to +infinity. Terminates when the simplex diameter
// drops below diam_tol * diameter_estimate(spec) or at max_iter. The
// returned center satisfies the stationarity check
// F(z) <= F(z +- delta e_i) + 1e-9 F(z) with delta = 1e-5 * diameter;
// violated probes trigger a restart from the better point (at most 3).
// The origin is always evaluated as a candidate, so
// product_at_z <= product_at_origin. Requires a full-region rule.
SantaloResult santalo_point(const BodySpec& spec, const ExponentPair& pair,
                            const SphereRule& rule,
                            SantaloMode mode = SantaloMode::product,
                            const SantaloOptions& opts = {});

}  // namespace bsl
