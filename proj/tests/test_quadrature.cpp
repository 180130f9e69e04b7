#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bsl/errors.hpp"
#include "bsl/quadrature.hpp"
#include "bsl/util.hpp"

using namespace bsl;

namespace {
constexpr double kPi = std::numbers::pi;

double weight_sum(const SphereRule& rule) {
  return pairwise_sum(rule.weights.data(), rule.weights.size());
}
}  // namespace

TEST_CASE("reference measures") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-15));
  CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
  CHECK(unit_sphere_measure(1) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(unit_sphere_measure(2) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(unit_sphere_measure(3) ==
        doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
}

TEST_CASE("gauss rule weights sum to the angular measure") {
  for (int n = 1; n <= 4; ++n) {
    const double sigma = unit_sphere_measure(n);
    const SphereRule full = gauss_product_rule(n, 12, Region::full);
    CHECK(weight_sum(full) == doctest::Approx(sigma).epsilon(1e-13));
    const SphereRule octant = gauss_product_rule(n, 12, Region::octant);
    CHECK(weight_sum(octant) ==
          doctest::Approx(sigma / std::pow(2.0, n + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gauss nodes lie on the sphere with positive weights") {
  for (Region reg : {Region::octant, Region::full}) {
    const SphereRule rule = gauss_product_rule(2, 10, reg);
    for (std::size_t i = 0; i < rule.node_count(); ++i) {
      const double* u = rule.dir(i);
      const double norm2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
      CHECK(std::abs(norm2 - 1.0) <= 1e-13);
      CHECK(rule.weights[i] > 0.0);
      if (reg == Region::octant) {
        CHECK(u[0] >= 0.0);
        CHECK(u[1] >= 0.0);
        CHECK(u[2] >= 0.0);
      }
    }
  }
}

TEST_CASE("polynomial moments on the 2-sphere") {
  const SphereRule rule = gauss_product_rule(2, 16, Region::full);
  const auto second = integrate(
      rule, [](const double* u) { return u[0] * u[0]; }, Symmetry::none);
  CHECK(second.value == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
  const auto fourth = integrate(
      rule, [](const double* u) { return u[0] * u[0] * u[1] * u[1]; },
      Symmetry::none);
  CHECK(fourth.value == doctest::Approx(4.0 * kPi / 15.0).epsilon(1e-12));
}

TEST_CASE("octant rule with sign-symmetric integrand matches the full rule") {
  // smooth and even in every coordinate, so both rules converge spectrally
  const auto f = [](const double* u) {
    return std::exp(u[0] * u[0]) + u[1] * u[1] * u[2] * u[2];
  };
  const double via_octant =
      integrate(gauss_product_rule(2, 24, Region::octant), f,
                Symmetry::unconditional)
          .value;
  const double via_full =
      integrate(gauss_product_rule(2, 24, Region::full), f, Symmetry::none)
          .value;
  CHECK(via_octant == doctest::Approx(via_full).epsilon(1e-12));
}

TEST_CASE("octant rule rejects integrands that are not sign-symmetric") {
  const SphereRule rule = gauss_product_rule(2, 8, Region::octant);
  CHECK_THROWS_AS(
      integrate(rule, [](const double* u) { return u[0]; }, Symmetry::none),
      SymmetryMismatch);
}

TEST_CASE("error indicator shrinks under refinement") {
  const auto f = [](const double* u) {
    return std::exp(u[0]) / (2.0 + u[1]);
  };
  double prev = 1e300;
  for (int k : {8, 16, 32, 64}) {
    const auto est =
        integrate(gauss_product_rule(2, k, Region::full), f, Symmetry::none);
    CHECK(est.error_indicator >= 0.0);
    CHECK(est.error_indicator <= prev);
    prev = est.error_indicator;
  }
  CHECK(prev <= 1e-9);
}

TEST_CASE("monte carlo estimates the moment within its own error bar") {
  const double exact = 4.0 * kPi / 3.0;
  const auto est = integrate(
      monte_carlo_rule(2, 200000, 31337),
      [](const double* u) { return u[0] * u[0]; }, Symmetry::none);
  CHECK(est.error_indicator > 0.0);
  CHECK(std::abs(est.value - exact) <= 4.0 * est.error_indicator);
}

TEST_CASE("monte carlo weights are normalized exactly") {
  const SphereRule rule = monte_carlo_rule(3, 5000, 7);
  CHECK(weight_sum(rule) ==
        doctest::Approx(unit_sphere_measure(3)).epsilon(1e-12));
}

TEST_CASE("monte carlo runs are reproducible by seed") {
  const auto f = [](const double* u) { return std::abs(u[0]) + u[1] * u[1]; };
  const auto run = [&](std::uint64_t seed) {
    return integrate(monte_carlo_rule(2, 20000, seed), f, Symmetry::none)
        .value;
  };
  CHECK(run(99) == run(99));
  CHECK(run(99) != run(100));
}

TEST_CASE("automatic engine picks gauss in low dimension, monte carlo high") {
  RuleConfig cfg;
  cfg.nodes_per_axis = 6;
  cfg.samples = 500;
  const SphereRule low = make_rule(cfg, 2, true);
  CHECK(low.node_count() == 36);  // 6^2 tensor nodes
  const SphereRule high = make_rule(cfg, 6, true);
  CHECK(high.node_count() == 500);  // sample count, not 6^6
}

TEST_CASE("explicit octant region with asymmetric intent is rejected") {
  RuleConfig cfg;
  cfg.region = RuleConfig::Reg::octant;
  CHECK_THROWS_AS(make_rule(cfg, 2, false), SymmetryMismatch);
}

TEST_CASE("rule construction rejects bad sizes") {
  CHECK_THROWS_AS(gauss_product_rule(0, 8, Region::full), InputError);
  CHECK_THROWS_AS(gauss_product_rule(2, 0, Region::full), InputError);
  CHECK_THROWS_AS(monte_carlo_rule(2, 0, 1), InputError);
}

TEST_CASE("non-finite integrand values are reported, not propagated") {
  const SphereRule rule = gauss_product_rule(1, 8, Region::full);
  CHECK_THROWS_AS(integrate(
                      rule,
                      [](const double*) {
                        return std::numeric_limits<double>::infinity();
                      },
                      Symmetry::none),
                  NonFiniteIntegrand);
}

TEST_CASE("deterministic pairwise reduction is exact on a known sum") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / double(i + 1);
  const double s1 = pairwise_sum(v.data(), v.size());
  const double s2 = pairwise_sum(v.data(), v.size());
  CHECK(s1 == s2);
  CHECK(s1 == doctest::Approx(7.4854708605503449).epsilon(1e-15));
}
