#pragma once

#include <string>
#include <vector>

#include "bsl/errors.hpp"
#include "bsl/functionals.hpp"

namespace bsl {

// Critical dual exponent: the largest beta admissible alongside alpha in
// ambient dimension n+1.  Returns +infinity for alpha <= 1.
double alpha_star(double alpha, int n);

struct Admissibility {
  ExponentPair pair;
  bool main_holds = false;   // n/alpha + 1/beta >= 1 and 1/alpha + n/beta >= 1
  double alpha_star = 0.0;   // critical exponent for pair.alpha
  bool star_holds = false;   // beta <= alpha_star
};

// Decides admissibility twice — via the two-inequality form and via the
// critical exponent — in exact rational arithmetic, and cross-checks the
// routes.  A disagreement throws EquivalenceViolation.
Admissibility admissible(const ExponentPair& pair);

// Expected log-log slope of the two-factor product along the rhombus-axis
// family D(gamma, 1, ..., 1): 1 - n/alpha - 1/beta.
double predicted_product_slope(const ExponentPair& pair);

// Exponent vector (e_1, ..., e_{n+1}) of the envelope monomial for the polar
// factor at the critical pairing, in descending-axis convention
// a_1 >= ... >= a_{n+1}.  Integer beta in [1, n] throws IntegerBetaCase.
std::vector<double> qest_exponents(double beta, int n);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_residual = 0.0;
};

// Least-squares line through (xs, ys).  Requires >= 3 strictly increasing
// abscissas spanning at least half a decade.
SlopeFit fit_slope(const std::vector<double>& xs,
                   const std::vector<double>& ys);

// One-parameter body family a_i(gamma) = gamma^{t_i}.
struct GammaFamily {
  std::vector<double> exponents;
  static GammaFamily rhombus_axis(int n);  // (1, 0, ..., 0), length n+1
};

enum class CenterMode { origin, santalo };

struct ScanRow {
  double gamma = 0.0;
  double i_alpha = 0.0;
  double j_beta = 0.0;
  double product = 0.0;
  double i_indicator = 0.0;
  double j_indicator = 0.0;
};

struct ScanResult {
  GammaFamily family;
  ExponentPair pair;
  CenterMode center_mode = CenterMode::origin;
  std::vector<double> gammas;
  std::vector<ScanRow> rows;
  SlopeFit fit;        // upper half of the log-log data
  SlopeFit fit_lower;  // lower half, used as a stability cross-check
  double predicted = 0.0;
  bool resolved = false;
  std::vector<int> nodes_used;  // per-gamma quadrature resolution
};

// Raised when the upper- and lower-half slope fits of a scan disagree by
// more than 0.1: the data has not reached its asymptotic regime.
struct UnresolvedAsymptotics : NumericsError {
  ScanResult partial;
  double slope_low = 0.0;
  double slope_high = 0.0;
  UnresolvedAsymptotics(ScanResult result, double low, double high)
      : NumericsError("scan asymptotics unresolved: lower/upper half slopes " +
                      std::to_string(low) + " vs " + std::to_string(high)),
        partial(std::move(result)),
        slope_low(low),
        slope_high(high) {}
};

// Default scan configuration: gauss engine with nodes_per_axis = 0, letting
// the driver pick an aspect-dependent resolution per gamma.
RuleConfig scan_defaults();

// Aspect-dependent tensor-rule resolution used by the scan drivers.
int scan_nodes(int n, double aspect);

// Sweeps gamma over the family, computing both product factors at each step,
// and fits the upper-half log-log slope.  gammas must be >= 4 strictly
// increasing values in [1, 1e6].
ScanResult gamma_scan(const GammaFamily& family, const ExponentPair& pair,
                      const std::vector<double>& gammas,
                      const RuleConfig& config = scan_defaults(),
                      CenterMode mode = CenterMode::origin);

struct GammaGrid {
  double lo = 1.4142135623730951;  // sqrt(2)
  double hi = 1000.0;
  int points_per_axis = 8;
  int fit_points = 3;     // top points per axis entering the slope fit
  int nodes_per_axis = 0; // 0 = dimension default
};

struct AxisSlope {
  int axis = 0;           // 1-based, descending-axis convention
  double predicted = 0.0;
  double empirical = 0.0; // worst fitted slope over the other-axis lattice
  double excess = 0.0;    // empirical - predicted
};

struct QestReport {
  double beta = 0.0;
  int n = 0;
  bool integer_beta = false;
  int k = 0;                      // the integer value when integer_beta
  bool reciprocal = false;
  std::vector<double> exponents;  // empty in the integer case
  std::vector<AxisSlope> axes;
  double max_discrepancy = 0.0;   // sup of data minus envelope, log10 scale
  double worst_excess = 0.0;
  std::vector<double> worst_gamma;
  bool ok = false;
};

// Verifies the polar-factor envelope on a lattice of axis-ratio vectors
// gamma in [sqrt(2), 1e3]^n: per-axis growth may not exceed the predicted
// monomial slope by more than 0.05.  Integer beta in [1, n] switches to the
// log-corrected envelope with a one-sided non-growth check.
QestReport verify_qest(double beta, int n, const GammaGrid& grid = {});

// Same check for the reciprocal family b = (1/a_{n+1}, ..., 1/a_1), whose
// predicted per-axis slopes follow from homogeneity.
QestReport verify_qest_reciprocal(double beta, int n,
                                  const GammaGrid& grid = {});

enum class RegionClass { bounded, divergent, ambiguous, unresolved };

struct RegionRow {
  double alpha = 0.0;
  double beta = 0.0;
  bool admissible_pair = false;
  double predicted_slope = 0.0;
  double fitted_slope = 0.0;  // NaN when the scan failed
  RegionClass cls = RegionClass::unresolved;
  bool agree = false;
  std::string note;
};

struct RegionTable {
  int n = 0;
  double gamma_max = 0.0;
  std::vector<double> gammas;
  std::vector<RegionRow> rows;
  int agree_count = 0;
};

// Classifies each (alpha, beta) grid pair as bounded or divergent from a
// rhombus-axis scan and compares with the admissibility prediction.  A pair
// whose scan fails is recorded and the sweep continues.
RegionTable region_scan(int n, const std::vector<double>& alphas,
                        const std::vector<double>& betas, double gamma_max,
                        const RuleConfig& config = scan_defaults(),
                        CenterMode mode = CenterMode::origin);

// Exact-rational check that 1 - k/beta - (n+1-k)/alpha <= 0 for every
// integer k in [1, ceil(beta)-1] at the critical pairing beta = alpha star.
// Requires alpha >= n + 1 (below that the inequality genuinely fails for
// k >= 2, and no k is needed).  Returns the number of k values checked.
long sign_condition_check(double alpha, int n);

struct DampingReport {
  double max_value = 0.0;
  double argmax = 0.0;
  double closed_form = 0.0;  // e^{-1/beta} (alpha/beta)^{1/beta}
  bool bounded = false;
};

// Samples gamma^{-1/alpha} (ln gamma)^{1/beta} on [1, 1e8] and compares the
// sampled maximum with the closed-form peak at gamma = e^{alpha/beta}.
DampingReport boundary_damping_check(double alpha, double beta);

struct RecursionReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  long cases = 0;
  std::vector<double> worst_axes;
};

// Checks that S(beta, a) is controlled by the one-variable-removed form
// max{ a_1^{-1} a_2^{-beta+1}, a_1^{-1} S(beta-1, tail) } over a lattice of
// descending axis vectors.  Requires non-integer beta > 1 and n in {2, 3}.
RecursionReport s_recursion_check(double beta, int n, int nodes = 0);

}  // namespace bsl
