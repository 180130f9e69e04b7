#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "bsl/bounds.hpp"
#include "bsl/errors.hpp"
#include "bsl/util.hpp"

using namespace bsl;

TEST_CASE("critical dual exponent by regime") {
  CHECK(alpha_star(3.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(alpha_star(2.0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(alpha_star(10.0, 2) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(alpha_star(2.0, 2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(std::isinf(alpha_star(0.5, 2)));
  CHECK(std::isinf(alpha_star(1.0, 3)));
  CHECK_THROWS_AS(alpha_star(-1.0, 2), InputError);
  CHECK_THROWS_AS(alpha_star(2.0, 0), InputError);
}

TEST_CASE("admissibility decisions at and around the boundary") {
  CHECK(admissible({3.0, 3.0, 2}).main_holds);             // corner
  CHECK(admissible({10.0, 1.25, 2}).main_holds);           // equality edge
  CHECK_FALSE(admissible({10.0, 2.0, 2}).main_holds);      // outside
  CHECK_FALSE(admissible(
                  {10.0, std::nextafter(1.25, 2.0), 2})
                  .main_holds);                            // just outside
  CHECK(admissible({0.5, 100.0, 3}).main_holds);           // alpha <= 1 column
  const Admissibility rep = admissible({7.0, 1.2, 2});
  CHECK(rep.main_holds == rep.star_holds);
  CHECK(rep.alpha_star == doctest::Approx(1.4).epsilon(1e-15));
  CHECK_THROWS_AS(admissible({0.0, 1.0, 2}), InputError);
  CHECK_THROWS_AS(admissible({1.0, 1.0, 9}), InputError);  // n out of range
}

TEST_CASE("predicted growth exponent of the product") {
  CHECK(predicted_product_slope({10.0, 2.5, 2}) ==
        doctest::Approx(0.4).epsilon(1e-14));
  CHECK(predicted_product_slope({4.0, 4.0 / 3.0, 1}) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(predicted_product_slope({3.0, 3.0, 2}) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("envelope exponent vectors") {
  CHECK(qest_exponents(2.5, 2) == std::vector<double>{-1.0, -1.0, -0.5});
  CHECK(qest_exponents(1.5, 2) == std::vector<double>{-1.0, -0.5, 0.0});
  CHECK(qest_exponents(0.5, 1) == std::vector<double>{-0.5, 0.0});
  // integer exponent above the axis count stays in the monomial regime
  CHECK(qest_exponents(3.0, 2) == std::vector<double>{-1.0, -1.0, -1.0});
  CHECK_THROWS_AS(qest_exponents(2.0, 2), IntegerBetaCase);
  CHECK_THROWS_AS(qest_exponents(1.0, 1), IntegerBetaCase);
  try {
    qest_exponents(2.0, 3);
    FAIL("expected the integer-exponent signal");
  } catch (const IntegerBetaCase& e) {
    CHECK(e.k == 2);
  }
  CHECK_THROWS_AS(qest_exponents(-1.0, 2), InputError);
}

TEST_CASE("slope fitting") {
  const std::vector<double> xs = {1.0, 1.5, 2.0, 2.5};
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 2.0 * xs[i] + 1.0;
  const SlopeFit line = fit_slope(xs, ys);
  CHECK(line.slope == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(line.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(line.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(line.max_residual <= 1e-12);

  const SlopeFit flat = fit_slope(xs, {3.0, 3.0, 3.0, 3.0});
  CHECK(flat.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(flat.r_squared == doctest::Approx(1.0));

  CounterRng rng{42, 0};
  std::vector<double> nx(10), ny(10);
  for (int i = 0; i < 10; ++i) {
    nx[std::size_t(i)] = 0.2 * i;
    ny[std::size_t(i)] = nx[std::size_t(i)] + 0.01 * rng.next_gauss();
  }
  const SlopeFit noisy = fit_slope(nx, ny);
  CHECK(std::abs(noisy.slope - 1.0) <= 0.03);
  CHECK(noisy.r_squared > 0.99);
}

TEST_CASE("slope fitting rejects unusable data") {
  CHECK_THROWS_AS(fit_slope({1.0, 2.0}, {1.0, 2.0}), InputError);
  CHECK_THROWS_AS(fit_slope({1.0, 1.0, 2.0}, {1.0, 2.0, 3.0}), InputError);
  CHECK_THROWS_AS(fit_slope({1.0, 2.0, 3.0}, {1.0, 2.0}), InputError);
  CHECK_THROWS_AS(fit_slope({1.0, 1.2, 1.4}, {1.0, 2.0, 3.0}), DegenerateFit);
  CHECK_THROWS_AS(
      fit_slope({1.0, 2.0, std::numeric_limits<double>::quiet_NaN()},
                {1.0, 2.0, 3.0}),
      InputError);
}

TEST_CASE("eccentricity scan on the admissible boundary stays flat") {
  std::vector<double> gammas(5);
  for (int i = 0; i < 5; ++i)
    gammas[std::size_t(i)] = 10.0 * std::pow(10.0, 0.75 * i);
  const ScanResult res = gamma_scan(GammaFamily::rhombus_axis(1),
                                    {4.0, 4.0 / 3.0, 1}, gammas);
  CHECK(res.resolved);
  CHECK(res.rows.size() == 5);
  CHECK(res.nodes_used.size() == 5);
  CHECK(res.fit.slope <= 0.02);
  CHECK(res.predicted == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  for (const ScanRow& row : res.rows) {
    CHECK(row.i_alpha > 0.0);
    CHECK(row.j_beta > 0.0);
    CHECK(row.product ==
          doctest::Approx(std::pow(row.i_alpha, 0.25) *
                          std::pow(row.j_beta, 0.75))
              .epsilon(1e-12));
  }
}

TEST_CASE("eccentricity scan reproduces the divergent growth rate") {
  std::vector<double> gammas(6);
  for (int i = 0; i < 6; ++i)
    gammas[std::size_t(i)] = 10.0 * std::pow(1000.0, i / 5.0);
  const ScanResult res =
      gamma_scan(GammaFamily::rhombus_axis(2), {10.0, 2.5, 2}, gammas);
  CHECK(res.resolved);
  CHECK(std::abs(res.fit.slope - 0.4) <= 0.05);
}

TEST_CASE("eccentricity scan input validation") {
  const GammaFamily fam = GammaFamily::rhombus_axis(1);
  const ExponentPair pair{4.0, 4.0 / 3.0, 1};
  CHECK_THROWS_AS(gamma_scan(fam, pair, {10.0, 100.0, 1000.0}), InputError);
  CHECK_THROWS_AS(gamma_scan(fam, pair, {10.0, 10.0, 100.0, 1000.0}),
                  InputError);
  CHECK_THROWS_AS(gamma_scan(fam, pair, {0.5, 10.0, 100.0, 1000.0}),
                  InputError);
  CHECK_THROWS_AS(gamma_scan(fam, pair, {10.0, 100.0, 1000.0, 2e6}),
                  InputError);
  CHECK_THROWS_AS(
      gamma_scan(GammaFamily{{1.0, 0.0, 0.0}}, pair,
                 {10.0, 100.0, 1000.0, 10000.0}),
      InputError);  // family length vs ambient dimension
}

TEST_CASE("unresolved-scan signal carries both half-fits") {
  ScanResult partial;
  partial.predicted = 0.4;
  const UnresolvedAsymptotics e{std::move(partial), 0.1, 0.35};
  CHECK(e.slope_low == doctest::Approx(0.1));
  CHECK(e.slope_high == doctest::Approx(0.35));
  CHECK(e.partial.predicted == doctest::Approx(0.4));
  const NumericsError* base = &e;
  CHECK(base != nullptr);
}

TEST_CASE("region classification agrees with admissibility on a mixed grid") {
  const RegionTable table =
      region_scan(2, {10.0, 3.0}, {2.0, 1.25}, 1e5);
  CHECK(table.rows.size() == 4);
  CHECK(table.agree_count == 4);
  for (const RegionRow& row : table.rows) {
    CHECK(row.agree);
    if (row.alpha == 10.0 && row.beta == 2.0) {
      CHECK_FALSE(row.admissible_pair);
      CHECK(row.cls == RegionClass::divergent);
      CHECK(std::abs(row.fitted_slope - 0.3) <= 0.05);
    }
    if (row.alpha == 3.0) CHECK(row.admissible_pair);
  }
  CHECK_THROWS_AS(region_scan(2, {}, {2.0}, 1e4), InputError);
  CHECK_THROWS_AS(region_scan(2, {10.0}, {2.0}, 50.0), InputError);
  CHECK_THROWS_AS(region_scan(2, {10.0}, {2.0}, 1e6), InputError);
  CHECK_THROWS_AS(region_scan(0, {10.0}, {2.0}, 1e4), InputError);
}

TEST_CASE("per-axis envelope verification in one variable") {
  GammaGrid grid;
  grid.points_per_axis = 6;
  grid.nodes_per_axis = 1024;

  const QestReport half = verify_qest(0.5, 1, grid);
  CHECK(half.ok);
  REQUIRE(half.axes.size() == 1);
  CHECK(half.axes[0].predicted == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(half.axes[0].empirical + 0.5) <= 0.03);

  const QestReport two = verify_qest(2.0, 1, grid);
  CHECK(two.ok);
  CHECK_FALSE(two.integer_beta);  // 2 lies above the single-axis range
  CHECK(two.axes[0].predicted == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(two.axes[0].empirical + 1.0) <= 0.03);

  const QestReport one = verify_qest(1.0, 1, grid);  // log-corrected case
  CHECK(one.ok);
  CHECK(one.integer_beta);
  CHECK(one.k == 1);

  const QestReport recip = verify_qest_reciprocal(2.5, 1, grid);
  CHECK(recip.ok);
  CHECK(recip.reciprocal);
  CHECK(recip.axes[0].predicted == doctest::Approx(1.5).epsilon(1e-13));
  CHECK_THROWS_AS(verify_qest_reciprocal(1.0, 1, grid), IntegerBetaCase);
}

TEST_CASE("envelope verification input validation") {
  GammaGrid bad;
  bad.points_per_axis = 1;
  CHECK_THROWS_AS(verify_qest(2.5, 2, bad), InputError);
  GammaGrid wide;
  wide.hi = 2000.0;
  CHECK_THROWS_AS(verify_qest(2.5, 2, wide), InputError);
  CHECK_THROWS_AS(verify_qest(2.5, 0, {}), InputError);
  CHECK_THROWS_AS(verify_qest(-0.5, 2, {}), InputError);
}

TEST_CASE("dual-exponent pairing sign condition, exact arithmetic") {
  CHECK(sign_condition_check(4.0, 2) == 1);   // beta = 2
  CHECK(sign_condition_check(3.5, 2) == 2);   // beta = 7/3
  CHECK(sign_condition_check(3.0, 2) == 2);   // beta = 3 at the corner
  CHECK(sign_condition_check(2.0, 1) == 1);
  CHECK(sign_condition_check(97.0, 4) > 0);
  CHECK_THROWS_AS(sign_condition_check(2.9, 2), InputError);
  CHECK_THROWS_AS(sign_condition_check(1.5, 1), InputError);
}

TEST_CASE("eccentricity damping factor is bounded with a known peak") {
  const DampingReport rep = boundary_damping_check(10.0, 2.5);
  CHECK(rep.bounded);
  const double closed = std::exp(-0.4) * std::pow(4.0, 0.4);
  CHECK(rep.closed_form == doctest::Approx(closed).epsilon(1e-13));
  CHECK(rep.max_value == doctest::Approx(closed).epsilon(1e-3));
  CHECK(rep.argmax == doctest::Approx(std::exp(4.0)).epsilon(1e-2));

  const DampingReport unit = boundary_damping_check(2.0, 2.0);
  CHECK(unit.bounded);
  CHECK(unit.max_value ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-3));
  CHECK_THROWS_AS(boundary_damping_check(-1.0, 2.0), InputError);
}

TEST_CASE("one-step reduction of the section integral stays bounded") {
  const RecursionReport rep = s_recursion_check(2.5, 2);
  CHECK(rep.cases == 9);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.max_ratio < 100.0);
  CHECK(rep.worst_axes.size() == 3);
  CHECK_THROWS_AS(s_recursion_check(2.0, 2), InputError);
  CHECK_THROWS_AS(s_recursion_check(0.9, 2), InputError);
  CHECK_THROWS_AS(s_recursion_check(2.5, 4), InputError);
}
