#include "bsl/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "bsl/body_io.hpp"
#include "bsl/bounds.hpp"
#include "bsl/cli.hpp"
#include "bsl/functionals.hpp"
#include "bsl/quadrature.hpp"

namespace bsl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InvariantError(msg);
}

struct Suite {
  std::vector<InvariantResult> results;
  std::ostream* progress = nullptr;

  void run(const std::string& name, const std::function<std::string()>& body) {
    InvariantResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (progress) {
      *progress << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  ("
                << format_sig(r.seconds, 3) << " s)";
      if (!r.pass) *progress << "  " << r.detail;
      *progress << "\n" << std::flush;
    }
    results.push_back(std::move(r));
  }
};

std::vector<double> log_uniform_axes(int dim, CounterRng& rng) {
  std::vector<double> a(static_cast<std::size_t>(dim));
  for (double& v : a) v = 0.5 * std::pow(4.0, rng.next01());
  return a;
}

std::vector<double> perturbed_identity(int dim, CounterRng& rng) {
  std::vector<double> t(static_cast<std::size_t>(dim * dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      t[std::size_t(r * dim + c)] =
          (r == c ? 1.0 : 0.0) + 0.3 * rng.next_in(-1.0, 1.0);
  return t;
}

// Facet/vertex lists of T applied to a rhombus or box: vertices map by T,
// facet normals by the inverse transpose, so the pair stays exactly dual.
BodySpec mapped_polytope(int dim, const std::vector<double>& a,
                         const std::vector<double>& t, bool from_rhombus) {
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = t[std::size_t(r * dim + c)];
  const Eigen::MatrixXd minv_t = m.inverse().transpose();

  std::vector<std::vector<double>> vertices, normals;
  auto push_col = [&](std::vector<std::vector<double>>& dst,
                      const Eigen::VectorXd& v) {
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) row[std::size_t(i)] = v(i);
    dst.push_back(std::move(row));
  };

  if (from_rhombus) {
    for (int i = 0; i < dim; ++i)
      push_col(vertices, Eigen::VectorXd(a[std::size_t(i)] * m.col(i)));
    for (int pattern = 0; pattern < (1 << (dim - 1)); ++pattern) {
      Eigen::VectorXd nu(dim);
      for (int i = 0; i < dim; ++i) {
        const double sign = (i > 0 && ((pattern >> (i - 1)) & 1)) ? -1.0 : 1.0;
        nu(i) = sign / a[std::size_t(i)];
      }
      push_col(normals, Eigen::VectorXd(minv_t * nu));
    }
  } else {
    for (int pattern = 0; pattern < (1 << (dim - 1)); ++pattern) {
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) {
        const double sign = (i > 0 && ((pattern >> (i - 1)) & 1)) ? -1.0 : 1.0;
        v(i) = sign * a[std::size_t(i)];
      }
      push_col(vertices, Eigen::VectorXd(m * v));
    }
    for (int i = 0; i < dim; ++i)
      push_col(normals,
               Eigen::VectorXd(minv_t.col(i) / a[std::size_t(i)]));
  }
  std::vector<double> offsets(normals.size(), 1.0);
  return BodySpec::hpolytope(std::move(normals), std::move(offsets),
                             std::move(vertices));
}

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> random_unit_direction(int dim, CounterRng& rng) {
  std::vector<double> u(static_cast<std::size_t>(dim));
  double norm = 0.0;
  do {
    for (double& c : u) c = rng.next_gauss();
    norm = norm_of(u);
  } while (norm < 1e-6);
  for (double& c : u) c /= norm;
  return u;
}

BodySpec random_symmetric_body(int dim, CounterRng& rng, BodyPool pool) {
  if (dim < 2 || dim > kMaxAmbientDim)
    throw InputError("body dimension must be in [2, " +
                     std::to_string(kMaxAmbientDim) + "]");
  for (int attempt = 0; attempt < 10; ++attempt) {
    const std::vector<double> a = log_uniform_axes(dim, rng);
    const std::uint64_t kinds = pool == BodyPool::any ? 8 : 6;
    try {
      switch (rng.next_below(kinds)) {
        case 0: return BodySpec::rhombus(a);
        case 1: return BodySpec::box(a);
        case 2:
          return BodySpec::linear_image(BodySpec::rhombus(a),
                                        perturbed_identity(dim, rng));
        case 3:
          return BodySpec::linear_image(BodySpec::box(a),
                                        perturbed_identity(dim, rng));
        case 4: return mapped_polytope(dim, a, perturbed_identity(dim, rng), true);
        case 5: return mapped_polytope(dim, a, perturbed_identity(dim, rng), false);
        case 6: return BodySpec::ellipsoid(a);
        default:
          return BodySpec::linear_image(BodySpec::ellipsoid(a),
                                        perturbed_identity(dim, rng));
      }
    } catch (const GeometryError&) {
      // singular draw; reroll
    } catch (const InputError&) {
    }
  }
  throw NumericsError("failed to draw a nondegenerate random body");
}

std::vector<InvariantResult> run_invariant_suite(std::ostream* progress) {
  Suite s;
  s.progress = progress;

  // ---------- quadrature ----------

  s.run("quadrature/weight-normalization", [] {
    for (int n = 1; n <= 4; ++n) {
      const double sigma = unit_sphere_measure(n);
      for (Region reg : {Region::octant, Region::full}) {
        const SphereRule rule = gauss_product_rule(n, 12, reg);
        const double target =
            reg == Region::octant ? sigma / std::pow(2.0, n + 1) : sigma;
        const double sum =
            pairwise_sum(rule.weights.data(), rule.weights.size());
        require(std::abs(sum - target) <= 1e-13 * target,
                "gauss weight sum drifts at n = " + std::to_string(n));
      }
    }
    const SphereRule mc = monte_carlo_rule(2, 5000, 77);
    const double sum = pairwise_sum(mc.weights.data(), mc.weights.size());
    require(std::abs(sum - unit_sphere_measure(2)) <=
                1e-10 * unit_sphere_measure(2),
            "monte carlo weight sum drifts");
    return std::string("weights sum to the sphere (or octant) measure, n = 1..4");
  });

  s.run("quadrature/node-layout", [] {
    for (int n : {1, 2, 3}) {
      for (Region reg : {Region::octant, Region::full}) {
        const SphereRule rule = gauss_product_rule(n, 8, reg);
        for (std::size_t i = 0; i < rule.node_count(); ++i) {
          const double* u = rule.dir(i);
          double norm2 = 0.0;
          for (int c = 0; c <= n; ++c) norm2 += u[c] * u[c];
          require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-13,
                  "node leaves the unit sphere");
          require(rule.weights[i] > 0.0, "non-positive weight");
          if (reg == Region::octant)
            for (int c = 0; c <= n; ++c)
              require(u[c] >= 0.0, "octant node has a negative coordinate");
        }
      }
    }
    return std::string("nodes unit-norm, weights positive, octant nodes nonnegative");
  });

  s.run("quadrature/octant-full-consistency", [] {
    const CenteredBody smooth = centered(BodySpec::ellipsoid({1.5, 0.7, 1.0}));
    const CenteredBody kinked = centered(BodySpec::rhombus({1.5, 0.7, 1.0}));
    std::string detail;
    for (const auto* body : {&smooth, &kinked}) {
      const IntegralEstimate oc = radial_power_integral(
          *body, 2.5, gauss_product_rule(2, 64, Region::octant));
      const IntegralEstimate fu = radial_power_integral(
          *body, 2.5, gauss_product_rule(2, 64, Region::full));
      const double tol = 10.0 * (oc.error_indicator + fu.error_indicator) +
                         1e-9 * std::abs(oc.value);
      require(std::abs(oc.value - fu.value) <= tol,
              "octant and full rules disagree beyond indicators: " +
                  format_sig(std::abs(oc.value - fu.value), 3) + " vs " +
                  format_sig(tol, 3));
      detail += format_sig(std::abs(oc.value - fu.value) / oc.value, 2) + " ";
    }
    return "relative gaps " + detail + "within indicator budget";
  });

  s.run("quadrature/gauss-vs-mc", [] {
    const auto f = [](const double* u) { return u[0] * u[0] + 0.5; };
    const double exact =
        unit_sphere_measure(2) / 3.0 + 0.5 * unit_sphere_measure(2);
    const IntegralEstimate g =
        integrate(gauss_product_rule(2, 32, Region::full), f, Symmetry::none);
    const IntegralEstimate m =
        integrate(monte_carlo_rule(2, 200000, 424242), f, Symmetry::none);
    require(std::abs(g.value - exact) <= 1e-10 * exact,
            "gauss misses the polynomial moment");
    require(std::abs(m.value - exact) <=
                4.0 * m.error_indicator + 1e-12 * exact,
            "monte carlo misses by more than 4 standard errors: " +
                format_sig(std::abs(m.value - exact), 3) + " vs SE " +
                format_sig(m.error_indicator, 3));
    return "gauss exact; mc within 4 standard errors (" +
           format_sig(std::abs(m.value - exact) / m.error_indicator, 2) +
           " SE)";
  });

  s.run("quadrature/refinement-decay", [] {
    const CenteredBody e = centered(BodySpec::ellipsoid({1.4, 0.8}));
    const double exact = 2.0 * unit_ball_volume(2) * 1.4 * 0.8;  // alpha = 2
    double prev = std::numeric_limits<double>::infinity();
    for (int k : {8, 16, 32, 64}) {
      const double err = std::abs(
          radial_power_integral(e, 2.0, gauss_product_rule(1, k, Region::full))
              .value -
          exact);
      require(err <= prev + 1e-14, "error grows under refinement");
      prev = err;
    }
    require(prev <= 1e-9, "refined rule still inaccurate");
    return "K = 8/16/32/64 errors decay to " + format_sig(prev, 2);
  });

  s.run("quadrature/mc-determinism", [] {
    const auto f = [](const double* u) { return std::abs(u[0]) + u[1] * u[1]; };
    const auto once = [&](std::uint64_t seed) {
      return integrate(monte_carlo_rule(2, 50000, seed), f, Symmetry::none)
          .value;
    };
    const double a1 = once(2024), a2 = once(2024), b = once(2025);
    require(a1 == a2, "same seed gives different values");
    require(a1 != b, "different seeds give identical values");
    return std::string("same-seed runs bitwise identical; seeds independent");
  });

  // ---------- bodies ----------

  s.run("bodies/polar-involution", [] {
    CounterRng rng{0xB0D1E501ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng);
      const BodySpec kk = polar(polar(k));
      const CenteredBody ck = centered(k);
      const CenteredBody ckk = centered(kk);
      for (int t = 0; t < 200; ++t) {
        const auto u = random_unit_direction(dim, rng);
        const double r1 = radial_at(ck, u);
        const double r2 = radial_at(ckk, u);
        worst = std::max(worst, std::abs(r1 - r2) / r1);
      }
    }
    require(worst <= 1e-12,
            "double polar deviates by " + format_sig(worst, 3));
    return "sup relative radial deviation " + format_sig(worst, 2) +
           " over 50 bodies x 200 directions";
  });

  s.run("bodies/polar-reciprocity", [] {
    CounterRng rng{0xB0D1E502ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng);
      const BodySpec kp = polar(k);
      const CenteredBody ckp = centered(kp);
      for (int t = 0; t < 200; ++t) {
        const auto u = random_unit_direction(dim, rng);
        worst = std::max(
            worst, std::abs(radial_at(ckp, u) * support_at(k, u) - 1.0));
      }
    }
    require(worst <= 1e-10,
            "polar radial times support deviates from 1 by " +
                format_sig(worst, 3));
    return "sup |r_polar * h - 1| = " + format_sig(worst, 2) +
           " over 50 bodies x 200 directions";
  });

  s.run("bodies/polar-inclusion-reversal", [] {
    CounterRng rng{0xB0D1E503ull, 0};
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const auto a = log_uniform_axes(dim, rng);
      const CenteredBody pd = centered(polar(BodySpec::rhombus(a)));
      const CenteredBody pe = centered(polar(BodySpec::ellipsoid(a)));
      const CenteredBody pr = centered(polar(BodySpec::box(a)));
      for (int t = 0; t < 100; ++t) {
        const auto u = random_unit_direction(dim, rng);
        const double rd = radial_at(pd, u), re = radial_at(pe, u),
                     rr = radial_at(pr, u);
        require(re <= rd * (1.0 + 1e-12) && rr <= re * (1.0 + 1e-12),
                "polar duals fail to reverse the rhombus/ellipsoid/box chain");
      }
    }
    return std::string("polar reverses rhombus <= ellipsoid <= box, 10 draws x 100 dirs");
  });

  s.run("bodies/polar-scaling", [] {
    CounterRng rng{0xB0D1E504ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 2 + int(rng.next_below(2));
      const BodySpec k = random_symmetric_body(dim, rng);
      const double t = rng.next_in(0.5, 2.5);
      std::vector<double> scale(std::size_t(dim * dim), 0.0);
      for (int i = 0; i < dim; ++i) scale[std::size_t(i * dim + i)] = t;
      const BodySpec tk = BodySpec::linear_image(k, scale);
      const CenteredBody p_tk = centered(polar(tk));
      const CenteredBody p_k = centered(polar(k));
      for (int q = 0; q < 50; ++q) {
        const auto u = random_unit_direction(dim, rng);
        worst = std::max(worst, std::abs(radial_at(p_tk, u) * t -
                                         radial_at(p_k, u)) /
                                    radial_at(p_k, u));
      }
    }
    require(worst <= 1e-12, "polar of t*K deviates from (1/t)*polar(K)");
    return "sup relative deviation " + format_sig(worst, 2);
  });

  s.run("bodies/rhombus-ellipsoid-box-sandwich", [] {
    CounterRng rng{0xB0D1E505ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = 2 + int(rng.next_below(4));
      std::vector<double> a(static_cast<std::size_t>(dim));
      for (double& v : a) v = std::pow(10.0, rng.next_in(-1.5, 1.5));
      const SandwichReport rep = sandwich_check(a, 1000, 1000 + trial);
      worst = std::max(worst, rep.max_violation);
    }
    require(worst <= 1e-12,
            "covering chain violated by " + format_sig(worst, 3));
    return "max violation " + format_sig(worst, 2) +
           " over 20 axis draws x 1000 directions";
  });

  s.run("bodies/gauge-radial-identity", [] {
    CounterRng rng{0xB0D1E506ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng);
      const CenteredBody ck = centered(k);
      for (int t = 0; t < 100; ++t) {
        const auto u = random_unit_direction(dim, rng);
        worst = std::max(
            worst, std::abs(radial_at(ck, u) * gauge_at(k, u.data()) - 1.0));
      }
    }
    require(worst <= 1e-12, "gauge and radial are not reciprocal");
    return "sup |r * gauge - 1| = " + format_sig(worst, 2);
  });

  s.run("bodies/mvee-rhombus-axes", [] {
    for (const std::vector<double>& a :
         {std::vector<double>{3.0, 1.0}, std::vector<double>{2.0, 1.0, 0.5}}) {
      const BodySpec k = BodySpec::rhombus(a);
      const Loewner fit = loewner_ellipsoid(vertex_pairs(k), 1e-7);
      const int d = fit.dim;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const double want =
              r == c ? 1.0 / (a[std::size_t(r)] * a[std::size_t(r)]) : 0.0;
          require(std::abs(fit.A[std::size_t(r * d + c)] - want) <= 1e-4,
                  "enclosing ellipsoid of a rhombus is not axis-diagonal");
        }
    }
    return std::string("quadratic form matches diag(1/a_i^2) within 1e-4");
  });

  s.run("bodies/mvee-sandwich", [] {
    CounterRng rng{0xB0D1E507ull, 0};
    for (int trial = 0; trial < 6; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng, BodyPool::polytope);
      const auto pairs = vertex_pairs(k);
      const Loewner fit = loewner_ellipsoid(pairs, 1e-6);
      const double slack = 1.0 + fit.eps + 1e-9;
      for (const auto& v : pairs) {
        double q = 0.0;
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c)
            q += v[std::size_t(r)] * fit.A[std::size_t(r * dim + c)] *
                 v[std::size_t(c)];
        require(q <= slack, "a vertex escapes the enclosing ellipsoid");
      }
      const CenteredBody ck = centered(k);
      const double shrink = std::sqrt(double(dim) * (1.0 + fit.eps));
      for (int t = 0; t < 100; ++t) {
        const auto u = random_unit_direction(dim, rng);
        double q = 0.0;
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c)
            q += u[std::size_t(r)] * fit.A[std::size_t(r * dim + c)] *
                 u[std::size_t(c)];
        const double r_ell = 1.0 / std::sqrt(q);
        require(r_ell / shrink <= radial_at(ck, u) * (1.0 + 1e-9),
                "shrunken enclosing ellipsoid pokes out of the body");
      }
    }
    return std::string("vertices inside; ellipsoid/sqrt(d(1+eps)) inside body; 6 polytopes");
  });

  // ---------- functionals ----------

  s.run("functionals/polar-route-consistency", [] {
    CounterRng rng{0xF1A70001ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      const int dim = 2 + int(rng.next_below(2));
      const BodySpec k = random_symmetric_body(dim, rng);
      const SphereRule rule = gauss_product_rule(dim - 1, 64, Region::full);
      for (double beta : {1.5, 3.0}) {
        const double j_direct =
            polar_radial_power_integral(k, {}, beta, rule).value;
        const double j_via_polar =
            radial_power_integral(centered(polar(k)), beta, rule).value;
        worst = std::max(worst,
                         std::abs(j_direct - j_via_polar) / j_direct);
      }
    }
    require(worst <= 1e-10,
            "support route and polar-radial route disagree by " +
                format_sig(worst, 3));
    return "sup relative gap " + format_sig(worst, 2) +
           " over 12 bodies x 2 exponents";
  });

  s.run("functionals/power-mean-monotonicity", [] {
    CounterRng rng{0xF1A70002ull, 0};
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng);
      const CenteredBody ck = centered(k);
      const SphereRule rule = gauss_product_rule(dim - 1, 16, Region::full);
      std::vector<double> grid = {0.5, 1.0, 2.0, double(dim)};
      std::sort(grid.begin(), grid.end());
      double prev = 0.0;
      for (double alpha : grid) {
        const double mp = mean_power(ck, alpha, rule);
        require(mp >= prev * (1.0 - 1e-10),
                "power mean decreases between exponents");
        prev = mp;
      }
    }
    return std::string("means nondecreasing over {0.5, 1, 2, n+1}, 50 bodies");
  });

  s.run("functionals/ellipsoid-product-constancy", [] {
    CounterRng rng{0xF1A70003ull, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      std::vector<double> a(static_cast<std::size_t>(dim));
      for (double& v : a) v = 0.7 * std::pow(2.0, rng.next01());
      const BodySpec e = BodySpec::ellipsoid(a);
      const ExponentPair pair{double(dim), double(dim), dim - 1};
      const SphereRule rule = gauss_product_rule(dim - 1, 64, Region::full);
      const double prod = bs_product(e, {}, pair, rule);
      const double target =
          std::pow(double(dim) * unit_ball_volume(dim), 2.0 / double(dim));
      worst = std::max(worst, std::abs(prod - target) / target);
    }
    require(worst <= 1e-8,
            "ellipsoid product depends on the axes: " + format_sig(worst, 3));
    return "sup relative deviation from the ball constant " +
           format_sig(worst, 2);
  });

  s.run("functionals/symmetric-product-bound", [] {
    CounterRng rng{0xF1A70004ull, 0};
    SantaloOptions opts;
    opts.diam_tol = 1e-6;
    opts.max_iter = 300;
    int count = 0;
    for (int dim = 2; dim <= 4; ++dim) {
      const int k_axis = dim == 2 ? 96 : (dim == 3 ? 16 : 10);
      const SphereRule rule =
          gauss_product_rule(dim - 1, k_axis, Region::full);
      const ExponentPair pair{double(dim), double(dim), dim - 1};
      const double bound =
          std::pow(double(dim) * unit_ball_volume(dim), 2.0 / double(dim));
      for (int trial = 0; trial < 12; ++trial, ++count) {
        const BodySpec k = random_symmetric_body(dim, rng, BodyPool::polytope);
        const SantaloResult res =
            santalo_point(k, pair, rule, SantaloMode::product, opts);
        require(res.product_at_z <= res.product_at_origin * (1.0 + 1e-12),
                "descent returned a worse product than the origin");
        require(res.product_at_z <= bound * (1.0 + 1e-6),
                "product after descent exceeds the ellipsoid constant: " +
                    format_full(res.product_at_z) + " > " +
                    format_full(bound));
      }
    }
    return "product <= ellipsoid constant * (1 + 1e-6) for " +
           std::to_string(count) + " random polytopes";
  });

  s.run("functionals/polar-integral-convexity", [] {
    CounterRng rng{0xF1A70005ull, 0};
    for (int trial = 0; trial < 8; ++trial) {
      const int dim = 2 + int(rng.next_below(2));
      const BodySpec k = random_symmetric_body(dim, rng);
      const SphereRule rule = gauss_product_rule(dim - 1, 48, Region::full);
      for (double beta : {1.5, 2.0}) {
        std::vector<double> z1(static_cast<std::size_t>(dim)),
            z2(static_cast<std::size_t>(dim)), zm(static_cast<std::size_t>(dim));
        const auto u1 = random_unit_direction(dim, rng);
        const auto u2 = random_unit_direction(dim, rng);
        const double r1 = radial_at(centered(k), u1);
        const double r2 = radial_at(centered(k), u2);
        for (int i = 0; i < dim; ++i) {
          z1[std::size_t(i)] = 0.4 * r1 * u1[std::size_t(i)];
          z2[std::size_t(i)] = 0.4 * r2 * u2[std::size_t(i)];
          zm[std::size_t(i)] = 0.5 * (z1[std::size_t(i)] + z2[std::size_t(i)]);
        }
        const double ja = polar_radial_power_integral(k, z1, beta, rule).value;
        const double jb = polar_radial_power_integral(k, z2, beta, rule).value;
        const double jm = polar_radial_power_integral(k, zm, beta, rule).value;
        require(jm <= 0.5 * (ja + jb) * (1.0 + 1e-10),
                "polar integral violates midpoint convexity in the center");
      }
    }
    return std::string("midpoint convexity holds, 8 bodies x 2 exponents");
  });

  s.run("functionals/domain-monotonicity", [] {
    CounterRng rng{0xF1A70006ull, 0};
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const auto a = log_uniform_axes(dim, rng);
      const SphereRule rule = gauss_product_rule(dim - 1, 24, Region::full);
      const double alpha = 2.5, beta = 1.5;
      const double i_d =
          radial_power_integral(centered(BodySpec::rhombus(a)), alpha, rule)
              .value;
      const double i_e =
          radial_power_integral(centered(BodySpec::ellipsoid(a)), alpha, rule)
              .value;
      const double i_r =
          radial_power_integral(centered(BodySpec::box(a)), alpha, rule).value;
      require(i_d <= i_e * (1.0 + 1e-12) && i_e <= i_r * (1.0 + 1e-12),
              "radial power integral is not monotone in the body");
      const double j_d =
          polar_radial_power_integral(BodySpec::rhombus(a), {}, beta, rule)
              .value;
      const double j_e =
          polar_radial_power_integral(BodySpec::ellipsoid(a), {}, beta, rule)
              .value;
      const double j_r =
          polar_radial_power_integral(BodySpec::box(a), {}, beta, rule).value;
      require(j_r <= j_e * (1.0 + 1e-12) && j_e <= j_d * (1.0 + 1e-12),
              "polar integral is not anti-monotone in the body");
    }
    return std::string("I grows and J shrinks along rhombus <= ellipsoid <= box");
  });

  s.run("functionals/s-integral-homogeneity", [] {
    const SphereRule rule = gauss_product_rule(2, 64, Region::octant);
    const std::vector<double> a = {1.0, 1.4, 2.2};
    std::vector<double> a3 = a;
    for (double& v : a3) v *= 3.0;
    for (double beta : {0.5, 1.0, 2.5}) {
      const double s1 = s_integral(beta, a, rule).value;
      const double s3 = s_integral(beta, a3, rule).value;
      require(std::abs(s3 - std::pow(3.0, -beta) * s1) <=
                  1e-12 * std::abs(s1),
              "scaling the axes breaks (-beta)-homogeneity");
    }
    const double one =
        s_integral(2.0, {1.0, 1.0}, gauss_product_rule(1, 64, Region::octant))
            .value;
    require(std::abs(one - 1.0) <= 1e-10, "S(2, (1,1)) misses 1");
    return std::string("t^{-beta} scaling exact; S(2,(1,1)) = 1");
  });

  s.run("functionals/s-integral-radial-route", [] {
    const std::vector<double> a = {1.0, 4.0, 32.0};  // ascending
    std::vector<double> inv(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) inv[i] = 1.0 / a[i];
    const SphereRule rule = gauss_product_rule(2, 128, Region::octant);
    const double direct = s_integral(2.5, a, rule).value;
    const double via_rhombus =
        radial_power_integral(centered(BodySpec::rhombus(inv)), 2.5, rule)
            .value /
        8.0;
    require(std::abs(direct - via_rhombus) <= 1e-10 * direct,
            "plane-integral and rhombus-radial routes disagree");
    return "relative gap " +
           format_sig(std::abs(direct - via_rhombus) / direct, 2);
  });

  s.run("functionals/center-descent", [] {
    const BodySpec e = BodySpec::ellipsoid({1.5, 0.9});
    const SphereRule rule = gauss_product_rule(1, 96, Region::full);
    const ExponentPair pair{2.0, 2.0, 1};
    SantaloOptions opts;
    opts.z0 = {0.3, 0.0};
    const SantaloResult res =
        santalo_point(e, pair, rule, SantaloMode::product, opts);
    require(norm_of(res.z) <= 1e-3,
            "descent stops far from the optimal center: |z| = " +
                format_sig(norm_of(res.z), 3));
    require(res.product_at_z <= res.product_at_origin * (1.0 + 1e-12),
            "descent product exceeds the origin product");
    for (std::size_t i = 1; i < res.best_trace.size(); ++i)
      require(res.best_trace[i] <= res.best_trace[i - 1] + 1e-15,
              "incumbent trace is not monotone");
    const SantaloResult sym = santalo_point(
        BodySpec::rhombus({1.0, 1.0}), pair, rule, SantaloMode::polar_only);
    require(norm_of(sym.z) <= 1e-6 * diameter_estimate(BodySpec::rhombus({1.0, 1.0})),
            "symmetric body drifts from the origin");
    return std::string("ellipse descent returns to the center; symmetric case stays put");
  });

  // ---------- bounds ----------

  s.run("bounds/admissibility-equivalence", [] {
    CounterRng rng{0xB07D0001ull, 0};
    long checked = 0;
    for (int n : {1, 2, 3, 4}) {
      for (int t = 0; t < 10000; ++t) {
        double alpha, beta;
        if (t % 4 == 0) {
          alpha = double(1 + rng.next_below(2000)) / double(1 + rng.next_below(200));
          beta = alpha_star(alpha, n);
          if (!std::isfinite(beta)) beta = double(1 + rng.next_below(100));
          if (t % 8 == 0 && std::isfinite(beta))
            beta = std::nextafter(beta, t % 16 == 0 ? 0.0 : beta + 1.0);
        } else {
          alpha = double(1 + rng.next_below(4000)) / double(1 + rng.next_below(400));
          beta = double(1 + rng.next_below(4000)) / double(1 + rng.next_below(400));
        }
        admissible({alpha, beta, n});  // throws on route disagreement
        ++checked;
      }
    }
    return std::to_string(checked) +
           " rational pairs agree across both characterizations";
  });

  s.run("bounds/critical-pairing-sign-condition", [] {
    CounterRng rng{0xB07D0002ull, 0};
    long terms = 0;
    for (int n : {1, 2, 3, 4}) {
      terms += sign_condition_check(double(n + 1), n);
      for (int t = 0; t < 200; ++t) {
        const double alpha =
            double(n + 1) + double(rng.next_below(4000)) / 200.0;
        terms += sign_condition_check(alpha, n);
      }
    }
    return std::to_string(terms) + " inequality terms verified exactly";
  });

  s.run("bounds/boundary-damping", [] {
    const double pairs[][2] = {{2.0, 2.0}, {3.0, 3.0}, {4.0, 2.0}, {4.0, 4.0},
                               {10.0, 2.5}};
    for (const auto& p : pairs) {
      const DampingReport rep = boundary_damping_check(p[0], p[1]);
      require(rep.bounded, "damping map unbounded on [1, 1e8]");
      if (std::exp(p[0] / p[1]) <= 1e8)
        require(std::abs(rep.max_value - rep.closed_form) <=
                    1e-3 * rep.closed_form,
                "sampled maximum misses the closed-form peak");
    }
    return std::string("gamma^{-1/alpha} (ln gamma)^{1/beta} bounded; peak matches closed form");
  });

  s.run("bounds/admissible-scan-boundedness", [] {
    std::vector<double> gs(6);
    for (int i = 0; i < 6; ++i) gs[std::size_t(i)] = 10.0 * std::pow(1000.0, i / 5.0);
    const ScanResult res = gamma_scan(GammaFamily::rhombus_axis(1),
                                      {4.0, 4.0 / 3.0, 1}, gs);
    require(res.resolved, "scan asymptotics unresolved");
    require(res.fit.slope <= 0.02,
            "admissible boundary pair drifts upward: slope " +
                format_sig(res.fit.slope, 3));
    return "n=1 boundary pair slope " + format_sig(res.fit.slope, 3);
  });

  s.run("bounds/divergent-scan-slope", [] {
    std::vector<double> gs(6);
    for (int i = 0; i < 6; ++i) gs[std::size_t(i)] = 10.0 * std::pow(1000.0, i / 5.0);
    const ScanResult res = gamma_scan(GammaFamily::rhombus_axis(2),
                                      {10.0, 2.5, 2}, gs);
    require(std::abs(res.fit.slope - 0.4) <= 0.05,
            "divergent pair misses the predicted growth rate: slope " +
                format_sig(res.fit.slope, 3));
    return "n=2 inadmissible pair slope " + format_sig(res.fit.slope, 3) +
           " vs predicted 0.4";
  });

  s.run("bounds/qest-envelope", [] {
    GammaGrid grid;
    grid.points_per_axis = 6;
    grid.fit_points = 3;
    grid.nodes_per_axis = 256;
    const QestReport direct = verify_qest(2.5, 2, grid);
    const QestReport recip = verify_qest_reciprocal(2.5, 2, grid);
    require(direct.ok && recip.ok, "envelope report not ok");
    return "worst excesses " + format_sig(direct.worst_excess, 2) + " / " +
           format_sig(recip.worst_excess, 2) + " (tolerance 0.05)";
  });

  s.run("bounds/qest-integer-envelope", [] {
    GammaGrid g1;
    g1.points_per_axis = 8;
    g1.nodes_per_axis = 4096;
    const QestReport r1 = verify_qest(1.0, 1, g1);
    GammaGrid g2;
    g2.points_per_axis = 6;
    g2.nodes_per_axis = 256;
    const QestReport r2 = verify_qest(2.0, 2, g2);
    require(r1.ok && r2.ok, "log-corrected envelope drifts");
    return "log-corrected drift " + format_sig(r1.worst_excess, 2) + " / " +
           format_sig(r2.worst_excess, 2) + " (tolerance 0.10)";
  });

  s.run("bounds/s-recursion-envelope", [] {
    double worst = 0.0;
    for (double beta : {1.5, 2.5}) {
      const RecursionReport rep = s_recursion_check(beta, 2);
      require(rep.min_ratio > 0.0 && std::isfinite(rep.max_ratio),
              "recursion ratio degenerate");
      require(rep.max_ratio < 100.0,
              "recursion constant blows up: " + format_sig(rep.max_ratio, 3));
      worst = std::max(worst, rep.max_ratio);
    }
    return "largest one-step recursion constant " + format_sig(worst, 3);
  });

  // ---------- io / cli ----------

  s.run("io/body-json-roundtrip", [] {
    CounterRng rng{0x10C0FFEEull, 0};
    for (int trial = 0; trial < 12; ++trial) {
      const int dim = 2 + int(rng.next_below(3));
      const BodySpec k = random_symmetric_body(dim, rng);
      const std::string once = body_to_json(k);
      const std::string twice = body_to_json(parse_body_json(once));
      require(once == twice, "canonical encoding does not round-trip");
    }
    return std::string("12 random bodies round-trip byte-identically");
  });

  s.run("io/parse-error-naming", [] {
    const auto expect_key = [](const std::string& text, const std::string& key) {
      try {
        parse_body_json(text);
      } catch (const ParseError& e) {
        require(std::string(e.what()).find(key) != std::string::npos,
                "parse error does not name '" + key + "': " + e.what());
        return;
      }
      throw InvariantError("malformed body accepted: " + text);
    };
    expect_key("{\"kind\":\"rhombus\"}", "a");
    expect_key("{\"kind\":\"rhombus\",\"a\":[1,1],\"b\":2}", "b");
    expect_key("{\"kind\":\"sphere\",\"a\":[1,1]}", "kind");
    expect_key("{\"kind\":\"rhombus\",\"a\":[1,-1]}", "rhombus");
    expect_key("not json", "json");
    return std::string("malformed inputs rejected with the offending key named");
  });

  s.run("cli/scan-csv-determinism", [] {
    const std::vector<std::string> args = {
        "scan-gamma", "--n",     "1",   "--alpha", "4",
        "--beta",     "1.3333333333333333", "--gammas", "10:10000:5",
        "--nodes",    "512"};
    const auto run_once = [&] {
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      require(code == 0, "scan command failed: " + err.str());
      return out.str();
    };
    const char* saved = std::getenv("BSL_THREADS");
    const std::string first = run_once();
    setenv("BSL_THREADS", "1", 1);
    const std::string serial = run_once();
    setenv("BSL_THREADS", "4", 1);
    const std::string threaded = run_once();
    if (saved)
      setenv("BSL_THREADS", saved, 1);
    else
      unsetenv("BSL_THREADS");
    require(first == serial && serial == threaded,
            "CSV bytes depend on the run or the thread count");
    return std::string("CSV byte-identical across reruns and BSL_THREADS 1/4");
  });

  s.run("cli/report-schema", [] {
    namespace fs = std::filesystem;
    const fs::path body = fs::temp_directory_path() / "bsl_verify_body.json";
    std::ofstream(body) << "{\"kind\":\"rhombus\",\"a\":[1,1]}";
    std::ostringstream out, err;
    const int code = run_cli({"integrate", "--body", body.string(), "--alpha",
                              "2", "--nodes", "64"},
                             out, err);
    require(code == 0, "integrate command failed: " + err.str());
    const auto j = nlohmann::json::parse(out.str());
    for (const char* key : {"schema_version", "command", "parameters",
                            "results", "wall_time_seconds"})
      require(j.contains(key), std::string("report lacks '") + key + "'");
    std::function<void(const nlohmann::json&)> walk =
        [&](const nlohmann::json& node) {
          require(!node.is_null(), "report contains null (non-finite?) value");
          if (node.is_number())
            require(std::isfinite(node.get<double>()),
                    "report contains a non-finite number");
          if (node.is_object() || node.is_array())
            for (const auto& child : node) walk(child);
        };
    walk(j);
    fs::remove(body);
    return std::string("schema fields present; every numeric value finite");
  });

  return s.results;
}

}  // namespace bsl
