#include "bsl/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Internal control-flow signal for the center search: a trial center whose
// support margin dips below the floor is simply worth +infinity.
struct InfeasiblePoint {};

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
}

void check_pair(const ExponentPair& pair, int dim) {
  if (!(pair.alpha > 0.0) || !std::isfinite(pair.alpha))
    throw NonPositiveAlpha();
  if (!(pair.beta > 0.0) || !std::isfinite(pair.beta))
    throw InputError("beta must be positive");
  if (pair.n + 1 != dim)
    throw InputError("exponent pair dimension does not match the body");
}

bool all_zero(const std::vector<double>& z) {
  for (double v : z)
    if (v != 0.0) return false;
  return true;
}

IntegralEstimate polar_power_impl(const BodySpec& spec, const double* z,
                                  double beta, const SphereRule& rule,
                                  double floor_value, bool floor_is_signal) {
  const int dim = spec.dim;
  const Symmetry sym = (z == nullptr && is_unconditional(spec))
                           ? Symmetry::unconditional
                           : Symmetry::none;
  Integrand f = [&, z, beta, floor_value, floor_is_signal,
                 dim](const double* u) -> double {
    double margin = support_at(spec, u);
    if (z != nullptr)
      for (int i = 0; i < dim; ++i) margin -= z[i] * u[i];
    if (margin <= floor_value) {
      if (floor_is_signal) throw InfeasiblePoint{};
      throw CenterNotInterior();
    }
    return std::pow(margin, -beta);
  };
  return integrate(rule, f, sym);
}

}  // namespace

bool is_unconditional(const BodySpec& spec) {
  return std::holds_alternative<Rhombus>(spec.shape) ||
         std::holds_alternative<Box>(spec.shape) ||
         std::holds_alternative<Ellipsoid>(spec.shape);
}

IntegralEstimate radial_power_integral(const CenteredBody& body, double alpha,
                                       const SphereRule& rule) {
  check_finite(alpha, "alpha");
  if (rule.n + 1 != body.spec.dim)
    throw InputError("rule dimension does not match the body");
  if (body.z.size() != std::size_t(body.spec.dim))
    throw InputError("center dimension mismatch");

  const Symmetry sym = (all_zero(body.z) && is_unconditional(body.spec))
                           ? Symmetry::unconditional
                           : Symmetry::none;
  if (alpha == 0.0)
    return integrate(rule, [](const double*) { return 1.0; }, sym);
  Integrand f = [&body, alpha](const double* u) {
    return std::pow(radial_at(body, u), alpha);
  };
  return integrate(rule, f, sym);
}

double dual_quermassintegral(const CenteredBody& body, double q,
                             const SphereRule& rule) {
  check_finite(q, "q");
  const int n = body.spec.dim - 1;
  return radial_power_integral(body, double(n + 1) - q, rule).value /
         double(n + 1);
}

IntegralEstimate polar_radial_power_integral(const BodySpec& spec,
                                             const std::vector<double>& z,
                                             double beta,
                                             const SphereRule& rule) {
  check_finite(beta, "beta");
  if (rule.n + 1 != spec.dim)
    throw InputError("rule dimension does not match the body");
  const double* zp = nullptr;
  if (!z.empty()) {
    if (z.size() != std::size_t(spec.dim))
      throw InputError("center dimension mismatch");
    for (double v : z)
      if (!std::isfinite(v)) throw InputError("center must be finite");
    if (!all_zero(z)) zp = z.data();
  }
  // node margins alone cannot detect a center sitting exactly on the
  // boundary, so validate interiority up front
  if (zp != nullptr && !(gauge_at(spec, zp) < 1.0)) throw CenterNotInterior();
  return polar_power_impl(spec, zp, beta, rule, 0.0, false);
}

double bs_product(const BodySpec& spec, const std::vector<double>& z,
                  const ExponentPair& pair, const SphereRule& rule) {
  check_pair(pair, spec.dim);
  if (rule.n != pair.n) throw InputError("rule/pair dimension mismatch");
  CenteredBody body = centered(spec, z);
  const double i_val = radial_power_integral(body, pair.alpha, rule).value;
  const double j_val =
      polar_radial_power_integral(spec, body.z, pair.beta, rule).value;
  return std::pow(i_val, 1.0 / pair.alpha) * std::pow(j_val, 1.0 / pair.beta);
}

IntegralEstimate s_integral(double beta, const std::vector<double>& a,
                            const SphereRule& rule) {
  check_finite(beta, "beta");
  if (a.size() < 2 || a.size() > std::size_t(kMaxAmbientDim))
    throw InputError("axis vector must have length 2.." +
                     std::to_string(kMaxAmbientDim));
  for (double v : a)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputError("axis lengths must be positive and finite");
  const int dim = static_cast<int>(a.size());
  if (rule.n + 1 != dim)
    throw InputError("rule dimension does not match the axis vector");
  if (rule.engine != Engine::gauss_octant) throw SymmetryMismatch();

  std::vector<double> s = a;
  std::sort(s.begin(), s.end());
  Integrand f = [&s, beta, dim](const double* u) {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += s[i] * u[i];
    return std::pow(t, -beta);
  };
  IntegralEstimate est = integrate(rule, f, Symmetry::unconditional);
  const double down = double(1 << dim);  // undo the octant-to-sphere factor
  est.value /= down;
  est.error_indicator /= down;
  return est;
}

double mean_power(const CenteredBody& body, double alpha,
                  const SphereRule& rule) {
  if (alpha == 0.0) throw ZeroExponent();
  check_finite(alpha, "alpha");
  const double i_val = radial_power_integral(body, alpha, rule).value;
  return std::pow(i_val / unit_sphere_measure(rule.n), 1.0 / alpha);
}

SantaloResult santalo_point(const BodySpec& spec, const ExponentPair& pair,
                            const SphereRule& rule, SantaloMode mode,
                            const SantaloOptions& opts) {
  const int d = spec.dim;
  check_pair(pair, d);
  if (rule.n != pair.n) throw InputError("rule/pair dimension mismatch");
  if (rule.engine == Engine::gauss_octant)
    throw SymmetryMismatch();  // off-center trials are not sign-symmetric
  if (opts.max_iter < 1) throw InputError("max_iter must be >= 1");
  if (!(opts.diam_tol > 0.0) || !(opts.margin_floor >= 0.0))
    throw InputError("tolerances must be positive");

  std::vector<double> z0(d, 0.0);
  if (!opts.z0.empty()) {
    if (opts.z0.size() != std::size_t(d))
      throw InputError("z0 dimension mismatch");
    z0 = opts.z0;
  }

  const double diam = diameter_estimate(spec);
  CenteredBody scratch{spec, std::vector<double>(d, 0.0)};

  auto one_sided = [&](const std::vector<double>& z) -> double {
    try {
      if (gauge_at(spec, z.data()) >= 1.0 - 1e-12) return kInf;
      const double* zp = all_zero(z) ? nullptr : z.data();
      const double j_val =
          polar_power_impl(spec, zp, pair.beta, rule, opts.margin_floor, true)
              .value;
      double value = std::pow(j_val, 1.0 / pair.beta);
      if (mode == SantaloMode::product) {
        scratch.z = z;
        const double i_val =
            radial_power_integral(scratch, pair.alpha, rule).value;
        value *= std::pow(i_val, 1.0 / pair.alpha);
      }
      return std::isfinite(value) ? value : kInf;
    } catch (const CenterNotInterior&) {
      return kInf;
    } catch (const InfeasiblePoint&) {
      return kInf;
    }
  };

  // Bodies are origin-symmetric, so the objective is an even function of the
  // center. Averaging the +-z evaluations makes the discrete objective even
  // as well: quadrature rules whose nodes are not antipodally paired would
  // otherwise leave a spurious minimum a noise-width away from the origin.
  std::vector<double> mirror(static_cast<std::size_t>(d));
  auto raw_objective = [&](const std::vector<double>& z) -> double {
    const double plus = one_sided(z);
    if (all_zero(z) || !std::isfinite(plus)) return plus;
    for (int i = 0; i < d; ++i) mirror[std::size_t(i)] = -z[std::size_t(i)];
    const double minus = one_sided(mirror);
    if (!std::isfinite(minus)) return kInf;
    return 0.5 * (plus + minus);
  };

  double best_f = kInf;
  std::vector<double> best_z;
  auto F = [&](const std::vector<double>& z) -> double {
    const double v = raw_objective(z);
    if (v < best_f) {
      best_f = v;
      best_z = z;
    }
    return v;
  };

  SantaloResult res;
  const double f_z0 = F(z0);
  if (!std::isfinite(f_z0)) throw CenterNotInterior();
  double f_origin = f_z0;
  if (!all_zero(z0)) {
    f_origin = F(std::vector<double>(d, 0.0));  // origin always a candidate
    if (!std::isfinite(f_origin)) throw CenterNotInterior();
  }
  res.product_at_origin = f_origin;

  const double stop_diam = opts.diam_tol * diam;
  long iter = 0;
  bool converged = false;

  std::vector<std::vector<double>> x;
  std::vector<double> fx;
  std::vector<double> start = z0;
  double f_start = f_z0;

  for (int round = 0; round < 4 && iter < opts.max_iter; ++round) {
    // initial simplex: axis steps at a quarter of the distance to the wall
    x.assign(1, start);
    fx.assign(1, f_start);
    scratch.z = start;
    std::vector<double> e(d, 0.0);
    for (int i = 0; i < d; ++i) {
      std::fill(e.begin(), e.end(), 0.0);
      e[i] = 1.0;
      const double r_pos = radial_at(scratch, e.data());
      e[i] = -1.0;
      const double r_neg = radial_at(scratch, e.data());
      double h = 0.25 * std::min(r_pos, r_neg);
      std::vector<double> xi = start;
      xi[i] += h;
      double fi = F(xi);
      for (int halvings = 0; !std::isfinite(fi) && halvings < 60; ++halvings) {
        h *= 0.5;
        xi[i] = start[i] + h;
        fi = F(xi);
      }
      x.push_back(std::move(xi));
      fx.push_back(fi);
    }

    while (true) {
      // order vertices ascending by objective
      std::vector<int> ord(d + 1);
      std::iota(ord.begin(), ord.end(), 0);
      std::sort(ord.begin(), ord.end(),
                [&](int p, int q) { return fx[p] < fx[q]; });
      std::vector<std::vector<double>> xs(d + 1);
      std::vector<double> fs(d + 1);
      for (int i = 0; i <= d; ++i) {
        xs[i] = std::move(x[ord[i]]);
        fs[i] = fx[ord[i]];
      }
      x = std::move(xs);
      fx = std::move(fs);

      double simplex_diam = 0.0;
      for (int i = 1; i <= d; ++i) {
        double dist2 = 0.0;
        for (int c = 0; c < d; ++c) {
          const double dv = x[i][c] - x[0][c];
          dist2 += dv * dv;
        }
        simplex_diam = std::max(simplex_diam, std::sqrt(dist2));
      }
      if (simplex_diam < stop_diam) {
        converged = true;
        break;
      }
      if (iter >= opts.max_iter) break;
      ++iter;

      std::vector<double> c(d, 0.0);
      for (int i = 0; i < d; ++i)
        for (int cc = 0; cc < d; ++cc) c[cc] += x[i][cc] / double(d);

      auto along = [&](double t) {
        std::vector<double> p(d);
        for (int cc = 0; cc < d; ++cc) p[cc] = c[cc] + t * (c[cc] - x[d][cc]);
        return p;
      };

      std::vector<double> xr = along(1.0);
      const double fr = F(xr);
      if (fr < fx[0]) {
        std::vector<double> xe = along(2.0);
        const double fe = F(xe);
        if (fe < fr) {
          x[d] = std::move(xe);
          fx[d] = fe;
        } else {
          x[d] = std::move(xr);
          fx[d] = fr;
        }
      } else if (fr < fx[d - 1]) {
        x[d] = std::move(xr);
        fx[d] = fr;
      } else {
        bool shrink = false;
        if (fr < fx[d]) {
          std::vector<double> xc = along(0.5);  // outside contraction
          const double fc = F(xc);
          if (fc <= fr) {
            x[d] = std::move(xc);
            fx[d] = fc;
          } else {
            shrink = true;
          }
        } else {
          std::vector<double> xc = along(-0.5);  // inside contraction
          const double fc = F(xc);
          if (fc < fx[d]) {
            x[d] = std::move(xc);
            fx[d] = fc;
          } else {
            shrink = true;
          }
        }
        if (shrink) {
          for (int i = 1; i <= d; ++i) {
            for (int cc = 0; cc < d; ++cc)
              x[i][cc] = x[0][cc] + 0.5 * (x[i][cc] - x[0][cc]);
            fx[i] = F(x[i]);
          }
        }
      }
      res.best_trace.push_back(best_f);
    }

    if (iter >= opts.max_iter) break;

    // stationarity probes at the incumbent; restart from any better point
    const double snap_f = best_f;
    const std::vector<double> snap_z = best_z;
    const double delta = 1e-5 * diam;
    std::vector<double> probe = snap_z;
    for (int i = 0; i < d; ++i) {
      probe[i] = snap_z[i] + delta;
      F(probe);
      probe[i] = snap_z[i] - delta;
      F(probe);
      probe[i] = snap_z[i];
    }
    if (best_f >= snap_f - 1e-9 * std::abs(snap_f)) break;  // stationary
    start = best_z;
    f_start = best_f;
  }

  res.iterations = iter;
  res.converged = converged;
  const double rel = 1e-12 * std::abs(f_z0);
  if (best_f < f_z0 - rel) {
    res.z = best_z;
    res.product_at_z = best_f;
  } else {
    res.no_descent = true;
    res.z = z0;
    res.product_at_z = f_z0;
  }
  return res;
}

}  // namespace bsl
