#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bsl/errors.hpp"

namespace bsl {

// Bodies live in R^{n+1} with n the sphere dimension; every stored vector
// has length dim = n + 1. All bodies are origin-symmetric by construction.
inline constexpr int kMaxAmbientDim = 9;  // n <= 8

struct Rhombus {
  std::vector<double> a;  // conv{ +-a_i e_i }
};
struct Box {
  std::vector<double> a;  // { |x_i| <= a_i }
};
struct Ellipsoid {
  std::vector<double> a;  // { sum x_i^2 / a_i^2 <= 1 }
};
// { |nu_j . x| <= h_j }: one representative normal per +- facet pair, so
// origin symmetry is structural. The optional vertex list (one per +- pair)
// enables support evaluation and polar duality.
struct HPolytopeSym {
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  std::vector<std::vector<double>> vertices;
};
struct BodySpec;
struct LinearImage {
  std::shared_ptr<const BodySpec> base;
  std::vector<double> T;      // row-major dim x dim
  std::vector<double> T_inv;  // row-major inverse
  double abs_det = 0.0;
};

// Validated tagged union. Use the factories; they enforce positive axis
// lengths, consistent dimensions, bounded polytopes (normals must span),
// vertex/facet consistency, and |det T| > 1e-12 ||T||^dim.
struct BodySpec {
  std::variant<Rhombus, Box, Ellipsoid, HPolytopeSym, LinearImage> shape;
  int dim = 0;

  static BodySpec rhombus(std::vector<double> a);
  static BodySpec box(std::vector<double> a);
  static BodySpec ellipsoid(std::vector<double> a);
  static BodySpec hpolytope(std::vector<std::vector<double>> normals,
                            std::vector<double> offsets,
                            std::vector<std::vector<double>> vertices = {});
  static BodySpec linear_image(BodySpec base, std::vector<double> t_rowmajor);
};

// A body with a strictly interior evaluation center.
struct CenteredBody {
  BodySpec spec;
  std::vector<double> z;  // length dim
};

// Validates the center (gauge < 1); empty z means the origin.
CenteredBody centered(BodySpec spec, std::vector<double> z = {});

// Radial function r_z(u) = sup{ t > 0 : z + t u in body } for unit u.
// Exact per shape: facet formula (h - nu.z)/(nu.u) for polytopes, stable
// quadratic root for ellipsoids, pullback through T for linear images.
// Throws CenterNotInterior when the formulas detect an exterior center.
double radial_at(const CenteredBody& body, const double* u);
double radial_at(const CenteredBody& body, const std::vector<double>& u);

// Support function h(u) = max{ x.u : x in body }; positively homogeneous.
// Throws SupportUnavailable for HPolytopeSym without vertices.
double support_at(const BodySpec& spec, const double* u);
double support_at(const BodySpec& spec, const std::vector<double>& u);

// Minkowski gauge ||x||_body (0 at the origin, 1 on the boundary).
double gauge_at(const BodySpec& spec, const double* x);
double gauge_at(const BodySpec& spec, const std::vector<double>& x);

// Polar body with respect to the origin. Closed-form duals for the
// coordinate shapes; HPolytopeSym swaps facet and vertex data (requires
// vertices, else PolarUnavailable); linear images map T -> T^{-T}.
BodySpec polar(const BodySpec& spec);

// Membership via the gauge: gauge(x) <= 1 + tol.
bool contains(const BodySpec& spec, const std::vector<double>& x,
              double tol = 1e-9);

// Pointwise check of the covering chain D(a) <= E(a) <= R(a) <= (n+1) D(a)
// on random unit directions; max_violation is the worst relative breach.
struct SandwichReport {
  int dim = 0;
  long samples = 0;
  double max_violation = 0.0;
  std::vector<double> worst_direction;
};
SandwichReport sandwich_check(const std::vector<double>& a, long samples,
                              std::uint64_t seed);

// Minimum-volume enclosing (Loewner) ellipsoid { x : x^T A x <= 1 } of a
// symmetric point set, by Khachiyan multiplicative-weights ascent on
// log det sum w_j v_j v_j^T. After the final rescale every input vertex
// satisfies v^T A v <= 1, and (1/sqrt(dim (1+eps))) E_A is contained in
// conv(+-v). eps is the achieved relative optimality gap.
struct Loewner {
  std::vector<double> A;  // row-major dim x dim, symmetric positive-definite
  int dim = 0;
  double eps = 0.0;
  long iterations = 0;
};
// vertex_pairs: one representative per +- pair; must span R^dim.
// Preconditions: eps_target in (0, 0.1]. Throws DegenerateInput,
// NoConvergence (carries iteration cap and current gap).
Loewner loewner_ellipsoid(const std::vector<std::vector<double>>& vertex_pairs,
                          double eps_target, long max_iter = 100000);

// One representative vertex per +- pair for polytopal specs; throws
// SupportUnavailable for HPolytopeSym without vertices, InputError for
// ellipsoids.
std::vector<std::vector<double>> vertex_pairs(const BodySpec& spec);

// Cheap probe-based diameter estimate (exact scale for round bodies; a
// lower bound otherwise). Used to scale descent tolerances.
double diameter_estimate(const BodySpec& spec);

}  // namespace bsl
