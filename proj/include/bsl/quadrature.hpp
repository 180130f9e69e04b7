#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "bsl/errors.hpp"

namespace bsl {

enum class Engine { gauss_octant, gauss_full, monte_carlo };
enum class Region { octant, full };
enum class Symmetry { unconditional, none };

// volume of the d-dimensional unit ball
double unit_ball_volume(int d);
// surface measure of S^n in R^{n+1}: (n+1) * unit_ball_volume(n+1)
double unit_sphere_measure(int n);

// Quadrature rule on S^n. Directions are unit vectors in R^{n+1}, stored
// flat row-major. Gauss rules carry a half-resolution companion used for
// the error indicator; Monte Carlo rules use the sample variance instead.
struct SphereRule {
  int n = 0;
  Engine engine = Engine::gauss_full;
  std::vector<double> dirs;     // node_count x (n+1)
  std::vector<double> weights;  // node_count
  int nodes_per_axis = 0;       // gauss metadata
  long samples = 0;             // monte carlo metadata
  std::uint64_t seed = 0;       // monte carlo metadata
  std::shared_ptr<const SphereRule> coarse;

  std::size_t node_count() const { return weights.size(); }
  const double* dir(std::size_t i) const {
    return dirs.data() + i * std::size_t(n + 1);
  }
};

struct IntegralEstimate {
  double value = 0.0;
  // Gauss: |value - value on the half-resolution companion|; MC: standard
  // error. An indicator, not a rigorous bound.
  double error_indicator = 0.0;
  // node count of the main rule (companion evaluations not included)
  long evaluations = 0;
};

// Tensor Gauss-Legendre rule in spherical angles: octant uses [0,pi/2]^n,
// full uses [0,pi]^{n-1} x [0,2pi]. Direction map x1 = cos t1,
// x2 = sin t1 cos t2, ..., x_{n+1} = sin t1 ... sin t_n; weights carry the
// Jacobian prod_k sin^{n-k} t_k and are normalized so their sum is exactly
// sigma(S^n) (full) or sigma(S^n)/2^{n+1} (octant).
// Preconditions: 1 <= n <= 8, nodes_per_axis >= 2, total nodes <= 3e7.
SphereRule gauss_product_rule(int n, int nodes_per_axis, Region region);

// Uniform directions on S^n from counter-hashed gaussians; each weight is
// sigma(S^n)/samples. Identical (n, samples, seed) yields identical nodes
// regardless of execution parallelism. Precondition: samples >= 100.
SphereRule monte_carlo_rule(int n, long samples, std::uint64_t seed);

using Integrand = std::function<double(const double*)>;

// Weighted sum of f over the rule nodes (times 2^{n+1} for octant rules),
// reduced pairwise in canonical node order. Octant rules require
// symmetry == unconditional (f invariant under coordinate sign flips).
// Throws SymmetryMismatch, NonFiniteIntegrand.
IntegralEstimate integrate(const SphereRule& rule, const Integrand& f,
                           Symmetry symmetry);

// Engine/region/resolution selection for rule construction.
struct RuleConfig {
  enum class Eng { automatic, gauss, monte_carlo };
  enum class Reg { automatic, octant, full };
  Eng engine = Eng::automatic;
  Reg region = Reg::automatic;
  int nodes_per_axis = 48;  // 0 lets scan drivers pick a per-task schedule
  long samples = 100000;
  std::uint64_t seed = 12345;
};

// Resolution rule: automatic engine is gauss for n <= 5, monte carlo above;
// automatic region is octant iff the intended integrand is unconditional.
// An explicit octant request with a non-unconditional integrand throws
// SymmetryMismatch.
SphereRule make_rule(const RuleConfig& config, int n, bool unconditional);

}  // namespace bsl
