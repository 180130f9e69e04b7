#include "bsl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsl/util.hpp"

namespace bsl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1, 1] via Newton on the recurrence.
void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(k, 0.0);
  w.assign(k, 0.0);
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess
    double xi = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double p_prime = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = xi;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      p_prime = k * (xi * p1 - p0) / (xi * xi - 1.0);
      double step = p1 / p_prime;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // one clean evaluation of P' at the converged node
    {
      double p0 = 1.0, p1 = xi;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      p_prime = k * (xi * p1 - p0) / (xi * xi - 1.0);
    }
    double wi = 2.0 / ((1.0 - xi * xi) * p_prime * p_prime);
    x[i] = -xi;  // ascending order
    x[k - 1 - i] = xi;
    w[i] = wi;
    w[k - 1 - i] = wi;
  }
  if (k == 1) {
    x[0] = 0.0;
    w[0] = 2.0;
  }
}

SphereRule build_gauss(int n, int k, Region region, bool with_companion) {
  const int dim = n + 1;
  double total_d = std::pow(double(k), n);
  if (total_d > 3.0e7)
    throw InputError("gauss rule too large: " + std::to_string(k) + "^" +
                     std::to_string(n) + " nodes");
  const std::size_t total = static_cast<std::size_t>(total_d + 0.5);

  std::vector<double> ref_x, ref_w;
  gauss_legendre(k, ref_x, ref_w);

  // per-axis tables: angle, weight, cos, sin, sin^exponent
  std::vector<std::vector<double>> cos_t(n), sin_t(n), wt(n), sin_pow(n);
  for (int ax = 0; ax < n; ++ax) {
    double lo = 0.0;
    double hi;
    if (region == Region::octant)
      hi = kPi / 2.0;
    else
      hi = (ax == n - 1) ? 2.0 * kPi : kPi;
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const int expnt = n - 1 - ax;  // Jacobian power for this axis
    cos_t[ax].resize(k);
    sin_t[ax].resize(k);
    wt[ax].resize(k);
    sin_pow[ax].resize(k);
    for (int i = 0; i < k; ++i) {
      double t = mid + hw * ref_x[i];
      cos_t[ax][i] = std::cos(t);
      sin_t[ax][i] = std::sin(t);
      wt[ax][i] = hw * ref_w[i];
      sin_pow[ax][i] = std::pow(std::abs(sin_t[ax][i]), expnt);
    }
  }

  SphereRule rule;
  rule.n = n;
  rule.engine =
      region == Region::octant ? Engine::gauss_octant : Engine::gauss_full;
  rule.nodes_per_axis = k;
  rule.dirs.resize(total * dim);
  rule.weights.resize(total);

  std::vector<int> idx(n, 0);
  std::vector<double> u(dim);
  for (std::size_t node = 0; node < total; ++node) {
    double weight = 1.0;
    double sin_prod = 1.0;
    for (int ax = 0; ax < n; ++ax) {
      const int i = idx[ax];
      weight *= wt[ax][i] * sin_pow[ax][i];
      u[ax] = sin_prod * cos_t[ax][i];
      sin_prod *= sin_t[ax][i];
    }
    u[n] = sin_prod;
    // renormalize against trig round-off so nodes are unit to 1e-12
    double nrm2 = 0.0;
    for (int c = 0; c < dim; ++c) nrm2 += u[c] * u[c];
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int c = 0; c < dim; ++c) rule.dirs[node * dim + c] = u[c] * inv;
    rule.weights[node] = weight;
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++idx[ax] < k) break;
      idx[ax] = 0;
    }
  }

  // pin the weight sum to the exact surface measure
  double target = unit_sphere_measure(n);
  if (region == Region::octant) target /= double(1 << dim);
  const double raw = pairwise_sum(rule.weights.data(), total);
  const double scale = target / raw;
  for (auto& wv : rule.weights) wv *= scale;

  if (with_companion && k >= 2) {
    rule.coarse = std::make_shared<const SphereRule>(
        build_gauss(n, std::max(1, k / 2), region, false));
  }
  return rule;
}

struct WeightedResult {
  double raw_sum = 0.0;       // sum w_i f_i (no octant factor)
  double raw_value_sum = 0.0; // sum f_i
  double raw_sq_sum = 0.0;    // sum f_i^2
};

WeightedResult evaluate_rule(const SphereRule& rule, const Integrand& f,
                             bool want_moments) {
  const std::size_t m = rule.node_count();
  const int dim = rule.n + 1;
  std::vector<double> vals(m);
  parallel_chunks(m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) vals[i] = f(rule.dir(i));
  });
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(vals[i])) {
      std::vector<double> dir(rule.dir(i), rule.dir(i) + dim);
      throw NonFiniteIntegrand(std::move(dir));
    }
  }
  WeightedResult out;
  out.raw_sum = pairwise_map_sum(
      0, m, [&](std::size_t i) { return rule.weights[i] * vals[i]; });
  if (want_moments) {
    out.raw_value_sum = pairwise_sum(vals.data(), m);
    out.raw_sq_sum =
        pairwise_map_sum(0, m, [&](std::size_t i) { return vals[i] * vals[i]; });
  }
  return out;
}

}  // namespace

double unit_ball_volume(int d) {
  if (d < 0) throw InputError("dimension must be nonnegative");
  return std::exp(0.5 * d * std::log(kPi) - std::lgamma(0.5 * d + 1.0));
}

double unit_sphere_measure(int n) {
  if (n < 1) throw InputError("sphere dimension must be >= 1");
  return (n + 1) * unit_ball_volume(n + 1);
}

SphereRule gauss_product_rule(int n, int nodes_per_axis, Region region) {
  if (n < 1 || n > 8)
    throw InputError("gauss rules support sphere dimensions 1..8");
  if (nodes_per_axis < 2) throw InputError("nodes_per_axis must be >= 2");
  return build_gauss(n, nodes_per_axis, region, true);
}

SphereRule monte_carlo_rule(int n, long samples, std::uint64_t seed) {
  if (n < 1) throw InputError("sphere dimension must be >= 1");
  if (samples < 100) throw InputError("monte carlo needs samples >= 100");
  const int dim = n + 1;
  const std::size_t pairs_per_sample = (dim + 1) / 2;

  SphereRule rule;
  rule.n = n;
  rule.engine = Engine::monte_carlo;
  rule.samples = samples;
  rule.seed = seed;
  rule.dirs.resize(std::size_t(samples) * dim);
  rule.weights.assign(std::size_t(samples),
                      unit_sphere_measure(n) / double(samples));

  const std::size_t m = std::size_t(samples);
  parallel_chunks(m, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> g(2 * pairs_per_sample);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t base = i * pairs_per_sample;
      for (std::size_t p = 0; p < pairs_per_sample; ++p)
        gauss_pair(seed, base + p, g[2 * p], g[2 * p + 1]);
      double nrm2 = 0.0;
      for (int c = 0; c < dim; ++c) nrm2 += g[c] * g[c];
      double* out = rule.dirs.data() + i * dim;
      if (nrm2 < 1e-300) {  // effectively impossible; deterministic fallback
        for (int c = 0; c < dim; ++c) out[c] = (c == 0) ? 1.0 : 0.0;
      } else {
        const double inv = 1.0 / std::sqrt(nrm2);
        for (int c = 0; c < dim; ++c) out[c] = g[c] * inv;
      }
    }
  });
  return rule;
}

IntegralEstimate integrate(const SphereRule& rule, const Integrand& f,
                           Symmetry symmetry) {
  if (rule.engine == Engine::gauss_octant && symmetry != Symmetry::unconditional)
    throw SymmetryMismatch();

  const std::size_t m = rule.node_count();
  const bool mc = rule.engine == Engine::monte_carlo;
  const double scale =
      rule.engine == Engine::gauss_octant ? double(1 << (rule.n + 1)) : 1.0;

  WeightedResult main = evaluate_rule(rule, f, mc);
  IntegralEstimate est;
  est.value = scale * main.raw_sum;
  est.evaluations = static_cast<long>(m);

  if (mc) {
    const double mean = main.raw_value_sum / double(m);
    const double var =
        std::max(0.0, main.raw_sq_sum / double(m) - mean * mean);
    est.error_indicator =
        unit_sphere_measure(rule.n) * std::sqrt(var / double(m));
  } else if (rule.coarse) {
    WeightedResult companion = evaluate_rule(*rule.coarse, f, false);
    est.error_indicator = std::abs(est.value - scale * companion.raw_sum);
  }
  return est;
}

SphereRule make_rule(const RuleConfig& config, int n, bool unconditional) {
  RuleConfig::Eng eng = config.engine;
  if (eng == RuleConfig::Eng::automatic)
    eng = n > 5 ? RuleConfig::Eng::monte_carlo : RuleConfig::Eng::gauss;

  if (eng == RuleConfig::Eng::monte_carlo)
    return monte_carlo_rule(n, config.samples, config.seed);

  Region region;
  switch (config.region) {
    case RuleConfig::Reg::octant:
      if (!unconditional) throw SymmetryMismatch();
      region = Region::octant;
      break;
    case RuleConfig::Reg::full:
      region = Region::full;
      break;
    default:
      region = unconditional ? Region::octant : Region::full;
  }
  const int k = config.nodes_per_axis > 0 ? config.nodes_per_axis : 48;
  return gauss_product_rule(n, k, region);
}

}  // namespace bsl
