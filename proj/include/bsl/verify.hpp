#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsl/bodies.hpp"
#include "bsl/util.hpp"

namespace bsl {

struct InvariantResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Library-wide invariant suite (quadrature, bodies, functionals, bounds,
// io/cli). Each entry is independent; a thrown exception fails only its own
// invariant. Progress lines stream to `progress` when non-null.
std::vector<InvariantResult> run_invariant_suite(std::ostream* progress = nullptr);

// Draw pools for random test bodies.
enum class BodyPool { any, polytope };

// Random origin-symmetric body with log-uniform axes in [1/2, 2]: one of
// rhombus, box, ellipsoid, a well-conditioned linear image of those, or a
// facet/vertex-consistent symmetric H-polytope (an exact dual pair, so polar
// and support queries stay available). The polytope pool excludes ellipsoids.
BodySpec random_symmetric_body(int dim, CounterRng& rng,
                               BodyPool pool = BodyPool::any);

// Gaussian-direction unit vector.
std::vector<double> random_unit_direction(int dim, CounterRng& rng);

}  // namespace bsl
