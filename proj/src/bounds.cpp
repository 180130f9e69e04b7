#include "bsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "bsl/bodies.hpp"
#include "bsl/quadrature.hpp"
#include "bsl/util.hpp"

namespace bsl {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_pair_domain(const ExponentPair& pair) {
  if (!(pair.alpha > 0.0) || !std::isfinite(pair.alpha))
    throw NonPositiveAlpha();
  if (!(pair.beta > 0.0) || !std::isfinite(pair.beta))
    throw InputError("beta must be positive");
  if (pair.n < 1 || pair.n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
}

// Plain OLS used by the scan drivers; fit_slope adds the public guards.
SlopeFit ols_fit(const double* xs, const double* ys, std::size_t m) {
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= double(m);
  ybar /= double(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  SlopeFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  fit.r_squared =
      ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

SlopeFit ols_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  return ols_fit(xs.data(), ys.data(), xs.size());
}

}  // namespace

double alpha_star(double alpha, int n) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw NonPositiveAlpha();
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  if (alpha <= 1.0) return std::numeric_limits<double>::infinity();
  if (alpha < double(n + 1)) return double(n) * alpha / (alpha - 1.0);
  if (alpha == double(n + 1)) return double(n + 1);
  return alpha / (alpha - double(n));
}

Admissibility admissible(const ExponentPair& pair) {
  check_pair_domain(pair);
  // doubles convert to rationals exactly, so both routes are decided exactly
  const Rational a(pair.alpha);
  const Rational b(pair.beta);
  const Rational nn(pair.n);
  const Rational ab = a * b;
  // n/a + 1/b >= 1 and 1/a + n/b >= 1, cleared of denominators
  const bool main_holds = (nn * b + a >= ab) && (b + nn * a >= ab);

  bool star_holds;
  if (a <= 1) {
    star_holds = true;  // critical exponent is +infinity
  } else if (a < nn + 1) {
    star_holds = (b * (a - 1) <= nn * a);
  } else if (a == nn + 1) {
    star_holds = (b <= nn + 1);
  } else {
    star_holds = (b * (a - nn) <= a);
  }

  if (main_holds != star_holds)
    throw EquivalenceViolation(
        "two-inequality and critical-exponent admissibility disagree at "
        "alpha = " +
        std::to_string(pair.alpha) + ", beta = " + std::to_string(pair.beta) +
        ", n = " + std::to_string(pair.n));

  Admissibility out;
  out.pair = pair;
  out.main_holds = main_holds;
  out.alpha_star = alpha_star(pair.alpha, pair.n);
  out.star_holds = star_holds;
  return out;
}

double predicted_product_slope(const ExponentPair& pair) {
  check_pair_domain(pair);
  return 1.0 - double(pair.n) / pair.alpha - 1.0 / pair.beta;
}

std::vector<double> qest_exponents(double beta, int n) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InputError("beta must be positive");
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  if (beta == std::floor(beta) && beta >= 1.0 && beta <= double(n))
    throw IntegerBetaCase(int(beta));
  const int ones = std::min(int(std::ceil(beta)) - 1, n);
  std::vector<double> e(std::size_t(n + 1), 0.0);
  for (int i = 0; i < ones; ++i) e[std::size_t(i)] = -1.0;
  e[std::size_t(ones)] = -(beta - double(ones));
  return e;
}

SlopeFit fit_slope(const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw InputError("xs and ys must have equal length");
  if (xs.size() < 3) throw InputError("slope fit needs at least 3 points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw InputError("slope fit data must be finite");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw InputError("abscissas must be strictly increasing");
  }
  if (xs.back() - xs.front() < 0.5)
    throw DegenerateFit("abscissa span is below half a decade");
  return ols_fit(xs, ys);
}

GammaFamily GammaFamily::rhombus_axis(int n) {
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  GammaFamily family;
  family.exponents.assign(std::size_t(n + 1), 0.0);
  family.exponents[0] = 1.0;
  return family;
}

RuleConfig scan_defaults() {
  RuleConfig config;
  config.nodes_per_axis = 0;
  return config;
}

int scan_nodes(int n, double aspect) {
  if (n == 1) return 4096;
  if (n == 2 || n == 3) {
    const double raw =
        64.0 * std::ceil(7.5 * std::sqrt(std::max(aspect, 1.0)) / 64.0);
    const int k = int(raw);
    return n == 2 ? std::clamp(k, 256, 3456) : std::clamp(k, 64, 256);
  }
  return 48;
}

ScanResult gamma_scan(const GammaFamily& family, const ExponentPair& pair,
                      const std::vector<double>& gammas,
                      const RuleConfig& config, CenterMode mode) {
  check_pair_domain(pair);
  const int n = pair.n;
  if (family.exponents.size() != std::size_t(n + 1))
    throw InputError("family exponent vector must have length n+1");
  for (double t : family.exponents)
    if (!std::isfinite(t)) throw InputError("family exponents must be finite");
  if (gammas.size() < 4) throw InputError("gamma scan needs at least 4 points");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double g = gammas[i];
    if (!std::isfinite(g) || g < 1.0 || g > 1e6)
      throw InputError("gamma values must lie in [1, 1e6]");
    if (i > 0 && !(g > gammas[i - 1]))
      throw InputError("gamma values must be strictly increasing");
  }

  ScanResult res;
  res.family = family;
  res.pair = pair;
  res.center_mode = mode;
  res.gammas = gammas;
  res.predicted = predicted_product_slope(pair);

  std::vector<double> xs, ys;
  xs.reserve(gammas.size());
  ys.reserve(gammas.size());
  const bool origin_centered = (mode == CenterMode::origin);
  for (double g : gammas) {
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    double amax = 0.0, amin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      a[std::size_t(i)] = std::pow(g, family.exponents[std::size_t(i)]);
      amax = std::max(amax, a[std::size_t(i)]);
      amin = std::min(amin, a[std::size_t(i)]);
    }
    RuleConfig local = config;
    if (local.nodes_per_axis <= 0)
      local.nodes_per_axis = scan_nodes(n, amax / amin);
    SphereRule rule = make_rule(local, n, origin_centered);
    BodySpec body = BodySpec::rhombus(a);
    std::vector<double> z(std::size_t(n + 1), 0.0);
    if (!origin_centered)
      z = santalo_point(body, pair, rule, SantaloMode::product).z;
    const IntegralEstimate i_est =
        radial_power_integral(centered(body, z), pair.alpha, rule);
    const IntegralEstimate j_est =
        polar_radial_power_integral(body, z, pair.beta, rule);
    const double product = std::pow(i_est.value, 1.0 / pair.alpha) *
                           std::pow(j_est.value, 1.0 / pair.beta);
    if (!std::isfinite(product) || !(product > 0.0))
      throw NumericsError("gamma scan produced a non-finite product at gamma " +
                          format_sig(g, 6));
    res.rows.push_back({g, i_est.value, j_est.value, product,
                        i_est.error_indicator, j_est.error_indicator});
    res.nodes_used.push_back(rule.engine == Engine::monte_carlo
                                 ? int(std::min<long>(local.samples, 1 << 30))
                                 : local.nodes_per_axis);
    xs.push_back(std::log10(g));
    ys.push_back(std::log10(product));
  }

  const std::size_t half = gammas.size() / 2;
  res.fit_lower = ols_fit(xs.data(), ys.data(), half);
  res.fit = ols_fit(xs.data() + half, ys.data() + half, xs.size() - half);
  res.resolved = std::abs(res.fit.slope - res.fit_lower.slope) <= 0.1;
  if (!res.resolved) {
    const double low = res.fit_lower.slope;
    const double high = res.fit.slope;
    throw UnresolvedAsymptotics(std::move(res), low, high);
  }
  return res;
}

namespace {

int qest_default_nodes(int n) {
  switch (n) {
    case 1: return 4096;
    case 2: return 512;
    case 3: return 128;
    default: return 48;
  }
}

QestReport qest_impl(double beta, int n, const GammaGrid& grid,
                     bool reciprocal) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InputError("beta must be positive");
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  if (!(grid.lo > 1.0) || !(grid.hi > grid.lo) || grid.hi > 1000.0)
    throw InputError("gamma grid must satisfy 1 < lo < hi <= 1000");
  const int pts = grid.points_per_axis;
  if (pts < 2) throw InputError("gamma grid needs at least 2 points per axis");
  if (grid.fit_points < 2 || grid.fit_points > pts)
    throw InputError("fit_points must lie in [2, points_per_axis]");
  if (std::pow(double(pts), n) > 20000.0)
    throw InputError("gamma lattice too large (limit 20000 points)");

  const bool integer_beta =
      (beta == std::floor(beta) && beta >= 1.0 && beta <= double(n));
  if (integer_beta && reciprocal)
    throw IntegerBetaCase(int(beta));  // reciprocal form needs the monomial

  QestReport rep;
  rep.beta = beta;
  rep.n = n;
  rep.integer_beta = integer_beta;
  rep.k = integer_beta ? int(beta) : 0;
  rep.reciprocal = reciprocal;

  std::vector<double> prefix(std::size_t(n), 0.0);  // E_j = sum_{i<=j} e_i
  if (!integer_beta) {
    rep.exponents = qest_exponents(beta, n);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += rep.exponents[std::size_t(j)];
      prefix[std::size_t(j)] = acc;
    }
  }
  std::vector<double> predicted(std::size_t(n), 0.0);
  if (!integer_beta)
    for (int j = 0; j < n; ++j)
      predicted[std::size_t(j)] =
          reciprocal ? beta + prefix[std::size_t(n - 1 - j)]
                     : prefix[std::size_t(j)];

  long total = 1;
  for (int j = 0; j < n; ++j) total *= pts;
  std::vector<double> gv(static_cast<std::size_t>(pts));
  for (int t = 0; t < pts; ++t)
    gv[std::size_t(t)] =
        grid.lo * std::pow(grid.hi / grid.lo, double(t) / double(pts - 1));
  std::vector<double> lg(static_cast<std::size_t>(pts));
  for (int t = 0; t < pts; ++t) lg[std::size_t(t)] = std::log10(gv[std::size_t(t)]);

  const int k_axis =
      grid.nodes_per_axis > 0 ? grid.nodes_per_axis : qest_default_nodes(n);
  SphereRule rule = gauss_product_rule(n, k_axis, Region::octant);

  // Evaluate the integral once per lattice point; statistic[u] is either
  // log10 S (monomial path) or the log-corrected value (integer path).
  std::vector<double> statistic(static_cast<std::size_t>(total));
  std::vector<int> t(static_cast<std::size_t>(n));
  rep.max_discrepancy = -std::numeric_limits<double>::infinity();
  for (long u = 0; u < total; ++u) {
    long rem = u;
    for (int j = 0; j < n; ++j) {
      t[std::size_t(j)] = int(rem % pts);
      rem /= pts;
    }
    // descending axis vector: a_{n+1} = 1, a_i = prod_{r=i..n} gamma_r
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    a[std::size_t(n)] = 1.0;
    for (int i = n - 1; i >= 0; --i)
      a[std::size_t(i)] = a[std::size_t(i + 1)] * gv[std::size_t(t[std::size_t(i)])];
    std::vector<double> arg = a;
    if (reciprocal) {
      for (int i = 0; i <= n; ++i)
        arg[std::size_t(i)] = 1.0 / a[std::size_t(n - i)];
    }
    const double s_val = s_integral(beta, arg, rule).value;
    if (!std::isfinite(s_val) || !(s_val > 0.0))
      throw NumericsError("envelope scan produced a non-finite integral");
    const double log_s = std::log10(s_val);
    if (!integer_beta) {
      statistic[std::size_t(u)] = log_s;
      double envelope = 0.0;
      for (int i = 0; i <= n; ++i)
        envelope +=
            rep.exponents[std::size_t(i)] * std::log10(arg[std::size_t(i)]);
      rep.max_discrepancy = std::max(rep.max_discrepancy, log_s - envelope);
    } else {
      double corr = log_s;
      for (int i = 0; i < rep.k; ++i) corr += std::log10(a[std::size_t(i)]);
      double worst_log = 1.0;
      for (int r = rep.k; r <= n; ++r)
        worst_log =
            std::max(worst_log, std::log(gv[std::size_t(t[std::size_t(r - 1)])]));
      corr -= std::log10(worst_log);
      statistic[std::size_t(u)] = corr;
      rep.max_discrepancy = std::max(rep.max_discrepancy, corr);
    }
  }

  // per-axis growth checks
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  std::vector<long> stride(std::size_t(n), 1);
  for (int j = 1; j < n; ++j)
    stride[std::size_t(j)] = stride[std::size_t(j - 1)] * pts;
  auto gamma_at = [&](long base, int axis, int tj) {
    std::vector<double> g(static_cast<std::size_t>(n));
    long rem = base;
    for (int j = 0; j < n; ++j) {
      g[std::size_t(j)] = gv[std::size_t(rem % pts)];
      rem /= pts;
    }
    g[std::size_t(axis)] = gv[std::size_t(tj)];
    return g;
  };

  const double tol = integer_beta ? 0.10 : 0.05;
  for (int j = 0; j < n; ++j) {
    AxisSlope axis;
    axis.axis = j + 1;
    axis.predicted = predicted[std::size_t(j)];
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> worst_gamma;
    for (long u = 0; u < total; ++u) {
      if ((u / stride[std::size_t(j)]) % pts != 0) continue;
      double measure;
      if (!integer_beta) {
        const int lo = pts - grid.fit_points;
        std::vector<double> fx(lg.begin() + lo, lg.end());
        std::vector<double> fy(static_cast<std::size_t>(grid.fit_points));
        for (int q = 0; q < grid.fit_points; ++q)
          fy[std::size_t(q)] =
              statistic[std::size_t(u + stride[std::size_t(j)] * (lo + q))];
        measure = ols_fit(fx, fy).slope;
      } else {
        // one-sided drift of the log-corrected statistic along the axis
        double bottom = -std::numeric_limits<double>::infinity();
        double top = bottom;
        for (int q = 0; q < pts; ++q) {
          const double v =
              statistic[std::size_t(u + stride[std::size_t(j)] * q)];
          double& side = (q < pts / 2) ? bottom : top;
          side = std::max(side, v);
        }
        measure = top - bottom;
      }
      if (measure > worst) {
        worst = measure;
        worst_gamma = gamma_at(u, j, pts - 1);
      }
    }
    axis.empirical = worst;
    axis.excess = worst - axis.predicted;
    if (axis.excess > tol)
      throw BoundViolation(
          "envelope growth on axis " + std::to_string(j + 1) + " is " +
              format_sig(axis.empirical, 4) + ", exceeding the predicted " +
              format_sig(axis.predicted, 4) + " by more than " +
              format_sig(tol, 2),
          worst_gamma);
    if (axis.excess > rep.worst_excess) {
      rep.worst_excess = axis.excess;
      rep.worst_gamma = worst_gamma;
    }
    rep.axes.push_back(std::move(axis));
  }
  rep.ok = true;
  return rep;
}

}  // namespace

QestReport verify_qest(double beta, int n, const GammaGrid& grid) {
  return qest_impl(beta, n, grid, false);
}

QestReport verify_qest_reciprocal(double beta, int n, const GammaGrid& grid) {
  return qest_impl(beta, n, grid, true);
}

RegionTable region_scan(int n, const std::vector<double>& alphas,
                        const std::vector<double>& betas, double gamma_max,
                        const RuleConfig& config, CenterMode mode) {
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  if (!(gamma_max >= 100.0) || gamma_max > 1e5)
    throw InputError("gamma_max must lie in [100, 1e5]");
  if (alphas.empty() || betas.empty())
    throw InputError("alpha and beta grids must be non-empty");
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a)) throw NonPositiveAlpha();
  for (double b : betas)
    if (!(b > 0.0) || !std::isfinite(b))
      throw InputError("beta must be positive");

  // six log-spaced points across the top three decades reach the asymptotic
  // regime without burning time on the transient
  const double lo = std::max(10.0, gamma_max / 1000.0);
  RegionTable table;
  table.n = n;
  table.gamma_max = gamma_max;
  table.gammas.resize(6);
  for (int i = 0; i < 6; ++i)
    table.gammas[std::size_t(i)] =
        lo * std::pow(gamma_max / lo, double(i) / 5.0);

  const GammaFamily family = GammaFamily::rhombus_axis(n);
  for (double a : alphas) {
    for (double b : betas) {
      RegionRow row;
      row.alpha = a;
      row.beta = b;
      const ExponentPair pair{a, b, n};
      row.admissible_pair = admissible(pair).main_holds;
      row.predicted_slope = predicted_product_slope(pair);
      try {
        const ScanResult scan =
            gamma_scan(family, pair, table.gammas, config, mode);
        row.fitted_slope = scan.fit.slope;
        if (row.fitted_slope <= 0.02)
          row.cls = RegionClass::bounded;
        else if (row.predicted_slope > 0.05 &&
                 row.fitted_slope >= row.predicted_slope - 0.05)
          row.cls = RegionClass::divergent;
        else
          row.cls = RegionClass::ambiguous;
        row.agree = row.admissible_pair
                        ? (row.cls == RegionClass::bounded)
                        : (row.predicted_slope > 0.05
                               ? row.cls == RegionClass::divergent
                               : true);
      } catch (const UnresolvedAsymptotics& e) {
        row.fitted_slope = e.slope_high;
        row.cls = RegionClass::unresolved;
        row.agree = false;
        row.note = e.what();
      } catch (const std::exception& e) {
        row.fitted_slope = kNaN;
        row.cls = RegionClass::unresolved;
        row.agree = false;
        row.note = e.what();
      }
      if (row.agree) ++table.agree_count;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

long sign_condition_check(double alpha, int n) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw NonPositiveAlpha();
  if (n < 1 || n + 1 > kMaxAmbientDim)
    throw InputError("n must be in [1, " + std::to_string(kMaxAmbientDim - 1) +
                     "]");
  if (!(alpha >= double(n + 1)))
    throw InputError(
        "the critical-pairing sign condition requires alpha >= n+1");
  const Rational a(alpha);
  const Rational beta = a / (a - n);  // lies in (1, n+1]
  const BigInt num = boost::multiprecision::numerator(beta);
  const BigInt den = boost::multiprecision::denominator(beta);
  const BigInt k_max = (num + den - 1) / den - 1;  // ceil(beta) - 1
  long checked = 0;
  for (BigInt k = 1; k <= k_max; ++k) {
    // 1 - k/beta - (n+1-k)/alpha <= 0, cleared of denominators
    const Rational lhs =
        a * beta - Rational(k) * a - Rational(BigInt(n + 1) - k) * beta;
    if (lhs > 0)
      throw InvariantError("sign condition failed at alpha = " +
                           std::to_string(alpha) + ", k = " + k.str());
    ++checked;
  }
  return checked;
}

DampingReport boundary_damping_check(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw NonPositiveAlpha();
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InputError("beta must be positive");
  auto damped = [&](double g) {
    return std::pow(g, -1.0 / alpha) * std::pow(std::log(g), 1.0 / beta);
  };
  DampingReport rep;
  rep.argmax = 1.0;
  const int m = 2000;
  for (int i = 0; i <= m; ++i) {
    const double g = std::pow(1e8, double(i) / double(m));
    const double v = damped(g);
    if (v > rep.max_value) {
      rep.max_value = v;
      rep.argmax = g;
    }
  }
  const double g_star = std::exp(alpha / beta);
  if (g_star <= 1e8) {
    const double v = damped(g_star);
    if (v >= rep.max_value) {
      rep.max_value = v;
      rep.argmax = g_star;
    }
  }
  rep.closed_form =
      std::exp(-1.0 / beta) * std::pow(alpha / beta, 1.0 / beta);
  rep.bounded = std::isfinite(rep.max_value) &&
                rep.max_value <= rep.closed_form * (1.0 + 1e-9);
  return rep;
}

RecursionReport s_recursion_check(double beta, int n, int nodes) {
  if (!(beta > 1.0) || !std::isfinite(beta))
    throw InputError("beta must exceed 1");
  if (beta == std::floor(beta))
    throw InputError("beta must be non-integer");
  if (n != 2 && n != 3)
    throw InputError("recursion check supports n in {2, 3}");

  auto axis_nodes = [&](int dim) {
    if (nodes > 0) return nodes;
    switch (dim) {
      case 2: return 2048;
      case 3: return 128;
      default: return 64;
    }
  };
  SphereRule rule_full = gauss_product_rule(n, axis_nodes(n + 1), Region::octant);
  SphereRule rule_tail =
      gauss_product_rule(n - 1, axis_nodes(n), Region::octant);

  const std::vector<double> gv = {4.0, 32.0, 256.0};
  long total = 1;
  for (int j = 0; j < n; ++j) total *= long(gv.size());

  RecursionReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (long u = 0; u < total; ++u) {
    long rem = u;
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    a[std::size_t(n)] = 1.0;
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      t[std::size_t(j)] = int(rem % long(gv.size()));
      rem /= long(gv.size());
    }
    for (int i = n - 1; i >= 0; --i)
      a[std::size_t(i)] =
          a[std::size_t(i + 1)] * gv[std::size_t(t[std::size_t(i)])];

    const double s_full = s_integral(beta, a, rule_full).value;
    const std::vector<double> tail(a.begin() + 1, a.end());
    const double s_tail = s_integral(beta - 1.0, tail, rule_tail).value;
    const double envelope =
        std::max(std::pow(a[0], -1.0) * std::pow(a[1], -beta + 1.0),
                 s_tail / a[0]);
    const double ratio = s_full / envelope;
    if (!std::isfinite(ratio) || !(ratio > 0.0))
      throw NumericsError("recursion check produced a non-finite ratio");
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.worst_axes = a;
    }
    ++rep.cases;
  }
  return rep;
}

}  // namespace bsl
