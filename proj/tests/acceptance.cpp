// End-to-end acceptance harness: twelve top-level checks, one summary line
// each, process exit code = number of failed checks.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bsl/bodies.hpp"
#include "bsl/bounds.hpp"
#include "bsl/cli.hpp"
#include "bsl/errors.hpp"
#include "bsl/functionals.hpp"
#include "bsl/quadrature.hpp"
#include "bsl/util.hpp"

using namespace bsl;

namespace {

struct Criterion {
  std::ostringstream note;
  void require(bool ok, const std::string& why) {
    if (!ok) throw std::runtime_error(why);
  }
};

int g_failures = 0;
int g_index = 0;

void run(const std::string& title, const std::function<void(Criterion&)>& fn) {
  ++g_index;
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why;
  try {
    fn(c);
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!ok) ++g_failures;
  std::printf("%s  %2d  %-58s [%6.2f s]%s%s\n", ok ? "PASS" : "FAIL", g_index,
              (title + (c.note.str().empty() ? "" : " — " + c.note.str()))
                  .c_str(),
              secs, why.empty() ? "" : "  <- ", why.c_str());
  std::fflush(stdout);
}

std::vector<double> log_uniform_axes(int dim, CounterRng& rng, double spread) {
  std::vector<double> a(static_cast<std::size_t>(dim));
  for (double& v : a) v = std::pow(10.0, rng.next_in(-spread, spread));
  return a;
}

std::vector<double> mild_matrix(int dim, CounterRng& rng) {
  // identity plus a strictly diagonally dominant perturbation: invertible
  std::vector<double> t(std::size_t(dim * dim), 0.0);
  const double scale = 0.6 / dim;
  for (int r = 0; r < dim; ++r)
    for (int col = 0; col < dim; ++col)
      t[std::size_t(r * dim + col)] =
          (r == col ? 1.0 : 0.0) + scale * (2.0 * rng.next01() - 1.0);
  return t;
}

// mixed pool of origin-symmetric bodies; polytopes_only restricts to kinds
// with vertex representations. Axis aspect stays below 4 so the fixed
// per-dimension quadrature resolutions stay adequate on kinked integrands.
BodySpec random_body(int dim, CounterRng& rng, bool polytopes_only) {
  const std::uint64_t kind = rng.next_below(polytopes_only ? 4 : 6);
  std::vector<double> a(static_cast<std::size_t>(dim));
  for (double& v : a) v = 0.5 * std::pow(4.0, rng.next01());
  switch (kind) {
    case 0: return BodySpec::rhombus(a);
    case 1: return BodySpec::box(a);
    case 2:
      return BodySpec::linear_image(BodySpec::rhombus(a), mild_matrix(dim, rng));
    case 3:
      return BodySpec::linear_image(BodySpec::box(a), mild_matrix(dim, rng));
    case 4: return BodySpec::ellipsoid(a);
    default:
      return BodySpec::linear_image(BodySpec::ellipsoid(a),
                                    mild_matrix(dim, rng));
  }
}

std::vector<double> random_direction(int dim, CounterRng& rng) {
  std::vector<double> u(static_cast<std::size_t>(dim));
  double nrm2 = 0.0;
  do {
    nrm2 = 0.0;
    for (double& v : u) {
      v = rng.next_gauss();
      nrm2 += v * v;
    }
  } while (nrm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(nrm2);
  for (double& v : u) v *= inv;
  return u;
}

std::vector<double> log_points(double lo, double hi, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    g[std::size_t(i)] = lo * std::pow(hi / lo, double(i) / double(count - 1));
  return g;
}

}  // namespace

int main() {
  std::printf("acceptance harness: 12 checks\n");

  run("sphere rule weight normalization (gauss 1e-10, mc 4 se)",
      [](Criterion& c) {
        const Integrand one = [](const double*) { return 1.0; };
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
          const double exact = unit_sphere_measure(n);
          const double gauss =
              integrate(gauss_product_rule(n, 32, Region::full), one,
                        Symmetry::none)
                  .value;
          worst = std::max(worst, std::abs(gauss - exact) / exact);
          c.require(std::abs(gauss - exact) <= 1e-10 * exact,
                    "gauss weight sum off at n=" + std::to_string(n));
          const IntegralEstimate mc = integrate(
              monte_carlo_rule(n, 100000, 20250816), one, Symmetry::none);
          c.require(std::abs(mc.value - exact) <=
                        4.0 * mc.error_indicator + 1e-10 * exact,
                    "monte carlo weight sum off at n=" + std::to_string(n));
        }
        c.note << "worst gauss rel err " << format_sig(worst, 2);
      });

  run("polar reciprocity and involution, 50 bodies x 1000 directions",
      [](Criterion& c) {
        CounterRng rng{0xACC2ull, 0};
        double worst_inv = 0.0, worst_rec = 0.0;
        for (int i = 0; i < 50; ++i) {
          const int dim = 2 + i % 3;
          const BodySpec k = random_body(dim, rng, false);
          const BodySpec kp = polar(k);
          const BodySpec kpp = polar(kp);
          const CenteredBody ck = centered(k);
          const CenteredBody ckp = centered(kp);
          const CenteredBody ckpp = centered(kpp);
          for (int t = 0; t < 1000; ++t) {
            const auto u = random_direction(dim, rng);
            const double r = radial_at(ck, u);
            worst_inv =
                std::max(worst_inv, std::abs(radial_at(ckpp, u) - r) / r);
            worst_rec = std::max(
                worst_rec, std::abs(radial_at(ckp, u) * support_at(k, u) - 1.0));
          }
        }
        c.require(worst_inv <= 1e-10, "involution error " +
                                          format_sig(worst_inv, 3));
        c.require(worst_rec <= 1e-10,
                  "reciprocity error " + format_sig(worst_rec, 3));
        c.note << "involution " << format_sig(worst_inv, 2) << ", reciprocity "
               << format_sig(worst_rec, 2);
      });

  run("rhombus/ellipsoid/box covering chain, 20 axis draws x 1000 directions",
      [](Criterion& c) {
        CounterRng rng{0xACC3ull, 0};
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
          const int dim = 2 + i % 4;
          const auto a = log_uniform_axes(dim, rng, 1.5);
          const SandwichReport rep =
              sandwich_check(a, 1000, 1000 + std::uint64_t(i));
          worst = std::max(worst, rep.max_violation);
        }
        c.require(worst <= 1e-12,
                  "containment violated by " + format_sig(worst, 3));
        c.note << "max violation " << format_sig(worst, 2);
      });

  run("two-factor product: ellipsoid constancy and polytope bound",
      [](Criterion& c) {
        CounterRng rng{0xACC4ull, 0};
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
          const int dim = 2 + i % 3;
          const int n = dim - 1;
          std::vector<double> a(static_cast<std::size_t>(dim));
          for (double& v : a) v = 0.7 * std::pow(2.0, rng.next01());
          const double ball =
              std::pow(double(dim) * unit_ball_volume(dim), 2.0 / dim);
          const SphereRule rule = gauss_product_rule(n, 64, Region::full);
          const double val = bs_product(BodySpec::ellipsoid(a), {},
                                        ExponentPair{double(dim), double(dim), n},
                                        rule);
          worst = std::max(worst, std::abs(val - ball) / ball);
          c.require(std::abs(val - ball) <= 1e-8 * ball,
                    "ellipsoid product deviates by " +
                        format_sig(std::abs(val - ball) / ball, 3));
        }
        c.note << "ellipsoid spread " << format_sig(worst, 2);

        SantaloOptions opts;
        opts.max_iter = 300;
        opts.diam_tol = 1e-6;
        double closest = 0.0;
        for (int i = 0; i < 100; ++i) {
          const int dim = 2 + i % 3;
          const int n = dim - 1;
          const int k = n == 1 ? 96 : (n == 2 ? 16 : 10);
          const BodySpec body = random_body(dim, rng, true);
          const SphereRule rule = gauss_product_rule(n, k, Region::full);
          const SantaloResult res = santalo_point(
              body, ExponentPair{double(dim), double(dim), n}, rule,
              SantaloMode::product, opts);
          const double ball =
              std::pow(double(dim) * unit_ball_volume(dim), 2.0 / dim);
          closest = std::max(closest, res.product_at_z / ball);
          c.require(res.product_at_z <= ball * (1.0 + 1e-6),
                    "polytope product exceeds the round-body value by factor " +
                        format_sig(res.product_at_z / ball, 6));
        }
        c.note << "; closest polytope/ball ratio " << format_sig(closest, 4);
      });

  run("plane-section integral normalization and homogeneity",
      [](Criterion& c) {
        const SphereRule rule = gauss_product_rule(1, 256, Region::octant);
        const double unit = s_integral(2.0, {1.0, 1.0}, rule).value;
        c.require(std::abs(unit - 1.0) <= 1e-10,
                  "normalization off by " + format_sig(unit - 1.0, 3));
        const double base = s_integral(1.7, {1.3, 0.6}, rule).value;
        double worst = 0.0;
        for (double t : {3.0, 0.2}) {
          const double scaled =
              s_integral(1.7, {1.3 * t, 0.6 * t}, rule).value;
          const double expected = std::pow(t, -1.7) * base;
          worst = std::max(worst, std::abs(scaled - expected) / expected);
        }
        c.require(worst <= 1e-12, "homogeneity off by " + format_sig(worst, 3));
        c.note << "unit gap " << format_sig(std::abs(unit - 1.0), 2)
               << ", homogeneity " << format_sig(worst, 2);
      });

  run("one-variable section asymptotics: slopes and log-corrected case",
      [](Criterion& c) {
        const SphereRule rule = gauss_product_rule(1, 4096, Region::octant);
        const auto gammas = log_points(1e2, 1e5, 7);
        std::vector<double> xs, ys;
        for (double g : gammas) xs.push_back(std::log10(g));

        for (double beta : {0.5, 2.0}) {
          ys.clear();
          for (double g : gammas)
            ys.push_back(std::log10(s_integral(beta, {g, 1.0}, rule).value));
          const double slope = fit_slope(xs, ys).slope;
          const double predicted = beta < 1.0 ? -beta : -1.0;
          c.require(std::abs(slope - predicted) <= 0.03,
                    "slope " + format_sig(slope, 4) + " for exponent " +
                        format_sig(beta, 2));
          c.note << "b=" << format_sig(beta, 2) << " slope "
                 << format_sig(slope, 3) << "; ";
        }

        double lo = 1e300, hi = 0.0;
        for (double g : gammas) {
          const double ratio =
              s_integral(1.0, {g, 1.0}, rule).value * g / std::log(g);
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
        }
        c.require(lo >= 0.9 && hi <= 1.3,
                  "log-corrected ratio leaves [0.9, 1.3]: [" +
                      format_sig(lo, 4) + ", " + format_sig(hi, 4) + "]");
        c.note << "b=1 ratio in [" << format_sig(lo, 3) << ", "
               << format_sig(hi, 3) << "]";
      });

  run("per-axis envelope slopes on the two-variable lattice, both families",
      [](Criterion& c) {
        GammaGrid grid;  // sqrt(2)..1e3, 8 points per axis, top-3 fit
        for (double beta : {0.5, 1.5, 2.5}) {
          const QestReport direct = verify_qest(beta, 2, grid);
          c.require(direct.ok, "direct envelope violated at b=" +
                                   format_sig(beta, 2) + " (worst excess " +
                                   format_sig(direct.worst_excess, 3) + ")");
          const QestReport recip = verify_qest_reciprocal(beta, 2, grid);
          c.require(recip.ok, "reciprocal envelope violated at b=" +
                                  format_sig(beta, 2) + " (worst excess " +
                                  format_sig(recip.worst_excess, 3) + ")");
        }
        c.note << "six reports ok";
      });

  run("eccentricity scans: divergent rate and flat boundary pairs",
      [](Criterion& c) {
        const ScanResult div = gamma_scan(GammaFamily::rhombus_axis(2),
                                          {10.0, 2.5, 2}, log_points(10, 1e4, 6));
        c.require(div.resolved, "divergent scan unresolved");
        c.require(std::abs(div.fit.slope - 0.4) <= 0.05,
                  "divergent slope " + format_sig(div.fit.slope, 4));

        const ScanResult edge2 =
            gamma_scan(GammaFamily::rhombus_axis(2), {10.0, 1.25, 2},
                       log_points(10, 2e5, 6));
        c.require(edge2.resolved, "boundary scan unresolved (n=2)");
        c.require(std::abs(edge2.fit.slope) <= 0.02,
                  "boundary slope " + format_sig(edge2.fit.slope, 4) +
                      " (n=2)");

        const ScanResult edge1 =
            gamma_scan(GammaFamily::rhombus_axis(1), {4.0, 4.0 / 3.0, 1},
                       log_points(10, 1e4, 6));
        c.require(edge1.resolved, "boundary scan unresolved (n=1)");
        c.require(std::abs(edge1.fit.slope) <= 0.02,
                  "boundary slope " + format_sig(edge1.fit.slope, 4) +
                      " (n=1)");
        c.note << "slopes " << format_sig(div.fit.slope, 3) << ", "
               << format_sig(edge2.fit.slope, 2) << ", "
               << format_sig(edge1.fit.slope, 2);
      });

  run("admissibility: dual-route agreement and pairing sign condition",
      [](Criterion& c) {
        long checked = 0;
        for (int n = 1; n <= 4; ++n) {
          CounterRng rng{0xACC9ull + std::uint64_t(n), 0};
          for (int i = 0; i < 10000; ++i) {
            const double alpha = std::pow(10.0, rng.next_in(-1.0, 1.3));
            const double beta = std::pow(10.0, rng.next_in(-1.0, 1.3));
            const Admissibility rep = admissible({alpha, beta, n});
            c.require(rep.main_holds == rep.star_holds,
                      "route disagreement at (" + format_sig(alpha, 6) + ", " +
                          format_sig(beta, 6) + ", n=" + std::to_string(n) +
                          ")");
            ++checked;
          }
          c.require(sign_condition_check(double(n + 1), n) >= 1,
                    "sign condition empty at the corner, n=" +
                        std::to_string(n));
          for (int i = 0; i < 200; ++i) {
            const double alpha =
                double(n + 1) * std::pow(10.0, rng.next_in(0.0, 2.0));
            c.require(sign_condition_check(alpha, n) >= 1,
                      "sign condition failed at alpha=" + format_sig(alpha, 6) +
                          ", n=" + std::to_string(n));
          }
        }
        c.note << checked << " pairs, exact arithmetic, both routes agree";
      });

  run("normalized power means are non-decreasing in the exponent",
      [](Criterion& c) {
        CounterRng rng{0xACCAull, 0};
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
          const int dim = 2 + i % 3;
          const CenteredBody body = centered(random_body(dim, rng, false));
          const SphereRule rule =
              gauss_product_rule(dim - 1, 16, Region::full);
          double prev = 0.0;
          for (double alpha : {0.5, 1.0, 2.0, double(dim)}) {
            const double mp = mean_power(body, alpha, rule);
            c.require(mp >= prev * (1.0 - 1e-10),
                      "power mean decreased between exponents");
            if (prev > 0.0) worst = std::max(worst, prev / mp - 1.0);
            prev = mp;
          }
        }
        c.note << "largest backward step " << format_sig(worst, 2);
      });

  run("enclosing ellipsoids: rhombus axes exact, random polytopes sandwiched",
      [](Criterion& c) {
        CounterRng rng{0xACCBull, 0};
        double worst_axis = 0.0;
        for (int i = 0; i < 9; ++i) {
          const int dim = 2 + i % 3;
          const auto a = log_uniform_axes(dim, rng, 0.75);
          const Loewner fit =
              loewner_ellipsoid(vertex_pairs(BodySpec::rhombus(a)), 1e-6);
          for (int r = 0; r < dim; ++r)
            for (int col = 0; col < dim; ++col) {
              const double entry = fit.A[std::size_t(r * dim + col)] *
                                   a[std::size_t(r)] * a[std::size_t(col)];
              const double target = (r == col) ? 1.0 : 0.0;
              worst_axis = std::max(worst_axis, std::abs(entry - target));
            }
        }
        c.require(worst_axis <= 1e-4, "rhombus ellipsoid off by " +
                                          format_sig(worst_axis, 3));

        for (int i = 0; i < 20; ++i) {
          const int dim = 2 + i % 3;
          const BodySpec k = random_body(dim, rng, true);
          const auto verts = vertex_pairs(k);
          const Loewner fit = loewner_ellipsoid(verts, 1e-6);
          for (const auto& v : verts) {
            double q = 0.0;
            for (int r = 0; r < dim; ++r)
              for (int col = 0; col < dim; ++col)
                q += v[std::size_t(r)] * fit.A[std::size_t(r * dim + col)] *
                     v[std::size_t(col)];
            c.require(q <= 1.0 + fit.eps + 1e-9,
                      "vertex escapes the enclosing ellipsoid");
          }
          const CenteredBody ck = centered(k);
          const double shrink = std::sqrt(double(dim) * (1.0 + fit.eps));
          for (int t = 0; t < 100; ++t) {
            const auto u = random_direction(dim, rng);
            double q = 0.0;
            for (int r = 0; r < dim; ++r)
              for (int col = 0; col < dim; ++col)
                q += u[std::size_t(r)] * fit.A[std::size_t(r * dim + col)] *
                     u[std::size_t(col)];
            const double r_ell = 1.0 / std::sqrt(q);
            c.require(r_ell / shrink <=
                          radial_at(ck, u.data()) * (1.0 + 1e-9),
                      "shrunken ellipsoid pokes outside the body");
          }
        }
        c.note << "axis error " << format_sig(worst_axis, 2)
               << "; 20 sandwich fits hold";
      });

  run("scan command determinism across reruns and thread counts",
      [](Criterion& c) {
        const std::vector<std::string> args = {
            "scan-gamma", "--n",      "1",        "--alpha", "4",
            "--beta",     "1.3333333333333333",  "--gammas", "10:10000:5",
            "--nodes",    "512"};
        const auto run_once = [&] {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          c.require(code == 0, "scan command failed: " + err.str());
          return out.str();
        };
        const char* saved = std::getenv("BSL_THREADS");
        const std::string first = run_once();
        const std::string again = run_once();
        setenv("BSL_THREADS", "1", 1);
        const std::string serial = run_once();
        setenv("BSL_THREADS", "4", 1);
        const std::string threaded = run_once();
        if (saved)
          setenv("BSL_THREADS", saved, 1);
        else
          unsetenv("BSL_THREADS");
        c.require(first == again, "reruns differ byte for byte");
        c.require(first == serial && serial == threaded,
                  "csv depends on the thread count");
        c.note << "4 runs byte-identical, "
               << first.size() << " bytes";
      });

  std::printf("%d/12 checks passed\n", 12 - g_failures);
  return g_failures;
}
