#include <cmath>
#include <stdexcept>
#include <vector>

#include "blotto/analysis.hpp"
#include "blotto/game.hpp"
#include "doctest.h"

using namespace blotto;

namespace {

constexpr double kTight = 1e-12;

Series exp_series(double a, double b, const std::vector<double>& vs) {
  Series points;
  for (double v : vs) points.emplace_back(v, a * std::exp(b * v));
  return points;
}

}  // namespace

TEST_CASE("fit_exponential recovers exact synthetic coefficients") {
  const Series points = exp_series(2.0, 3.0, {0.0, 0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0});
  const ExpFit fit = fit_exponential(points);
  CHECK(fit.amplitude == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.residual_sse < 1e-12);
  CHECK(fit.converged);
}

TEST_CASE("fit_exponential handles decay and tiny amplitudes") {
  const ExpFit decay = fit_exponential(exp_series(5.0, -2.0, {0.0, 0.2, 0.5, 0.8, 1.0}));
  CHECK(decay.amplitude == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(decay.rate == doctest::Approx(-2.0).epsilon(1e-6));

  const ExpFit small = fit_exponential(exp_series(1e-3, 4.0, {0.0, 0.25, 0.5, 0.75, 1.0}));
  CHECK(small.amplitude == doctest::Approx(1e-3).epsilon(1e-5));
  CHECK(small.rate == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("fit_exponential agrees with the frozen scipy fit on noisy data") {
  // frozen: tests/oracle/gen_constants.py (scipy.optimize.curve_fit)
  const std::vector<double> y{2.04, 2.2539584308928693, 2.7267147913035266,
                              3.2620893458195512, 3.607795224773208, 4.064640031896335,
                              5.0667824089833156, 5.715302236126327, 6.507429168563634,
                              7.791999572007889};
  Series points;
  for (std::size_t h = 0; h < y.size(); ++h)
    points.emplace_back(static_cast<double>(h) / 10.0, y[h]);
  const ExpFit fit = fit_exponential(points);
  CHECK(fit.amplitude == doctest::Approx(2.0010980144858914).epsilon(1e-6));
  CHECK(fit.rate == doctest::Approx(1.498996794016702).epsilon(1e-6));
  CHECK(fit.residual_sse == doctest::Approx(0.09829316169918409).epsilon(1e-6));
}

TEST_CASE("fit_exponential rejects degenerate inputs") {
  CHECK_THROWS_AS(fit_exponential({{0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_exponential({{0.5, 1.0}, {0.5, 2.0}, {0.5, 3.0}}), std::domain_error);
}

TEST_CASE("fit_exponential survives an all-zero response") {
  // Log-linear seeding has no positive samples; the fit should still return
  // the flat optimum a = 0 rather than crash.
  const ExpFit fit = fit_exponential({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
  CHECK(fit.amplitude == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit.residual_sse == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit_quadratic interpolates three points exactly") {
  // y = 1 - 2w + 0.5w^2 through w = -1, 0, 2.
  const Series points{{-1.0, 3.5}, {0.0, 1.0}, {2.0, -1.0}};
  const QuadFit fit = fit_quadratic(points);
  CHECK(fit.c0 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.c1 == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.c2 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit.residual_sse < 1e-9);
}

TEST_CASE("fit_quadratic agrees with the frozen numpy fit on noisy data") {
  // frozen: tests/oracle/gen_constants.py (numpy.polyfit)
  const std::vector<double> w{-1.0, -0.5, 0.0, 0.5, 1.0, 1.5};
  const std::vector<double> y{2.4099999999999997, 1.4049999999999998, 0.715,
                              0.22499999999999998, -0.01, 0.030000000000000134};
  Series points;
  for (std::size_t i = 0; i < w.size(); ++i) points.emplace_back(w[i], y[i]);
  const QuadFit fit = fit_quadratic(points);
  CHECK(fit.c0 == doctest::Approx(0.698).epsilon(1e-9));
  CHECK(fit.c1 == doctest::Approx(-1.2021785714285713).epsilon(1e-9));
  CHECK(fit.c2 == doctest::Approx(0.5032142857142858).epsilon(1e-9));
  CHECK(fit.residual_sse == doctest::Approx(0.0008244642857142825).epsilon(1e-9));
}

TEST_CASE("fit_quadratic rejects rank-deficient designs") {
  CHECK_THROWS_AS(fit_quadratic({{1.0, 2.0}, {2.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_quadratic({{1.0, 2.0}, {1.0, 3.0}, {2.0, 4.0}, {2.0, 5.0}}),
                  std::domain_error);
}

TEST_CASE("pearson matches the frozen numpy correlation") {
  // frozen: tests/oracle/gen_constants.py (numpy.corrcoef)
  const std::vector<double> x{1.0, 2.0, 3.5, 5.0, 7.25};
  const std::vector<double> y{0.9, 2.2, 3.1, 5.4, 6.9};
  CHECK(pearson(x, y) == doctest::Approx(0.9901979308825097).epsilon(1e-12));
  CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> negated;
  for (double value : y) negated.push_back(-value);
  CHECK(pearson(x, negated) == doctest::Approx(-0.9901979308825097).epsilon(1e-12));

  CHECK_THROWS_AS(pearson({1.0, 2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), std::domain_error);
}

TEST_CASE("concentration share sums the top-valued battlefields") {
  // frozen: tests/oracle/gen_constants.py
  const std::vector<double> allocations{0.1, 2.4, 0.3, 1.2, 0.05, 3.0};
  const ValuationVector valuations{0.2, 0.9, 0.4, 0.6, 0.1, 0.8};
  CHECK(concentration_share(allocations, valuations, 0.5) ==
        doctest::Approx(0.9361702127659576).epsilon(1e-12));
  CHECK(concentration_share(allocations, valuations, 0.1) ==
        doctest::Approx(0.3404255319148936).epsilon(1e-12));
  CHECK(concentration_share(allocations, valuations, 1.0) == doctest::Approx(1.0));

  // Valuation ties resolve by battlefield index (stable sort).
  const ValuationVector tied{0.5, 0.5, 0.1};
  CHECK(concentration_share({1.0, 3.0, 6.0}, tied, 1.0 / 3.0) == doctest::Approx(0.1));

  CHECK_THROWS_AS(concentration_share({1.0}, {0.1, 0.2}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(concentration_share(allocations, valuations, 0.0), std::domain_error);
  CHECK_THROWS_AS(concentration_share(allocations, valuations, 1.1), std::domain_error);
  CHECK_THROWS_AS(concentration_share({0.0, 0.0}, {0.1, 0.2}, 0.5), std::domain_error);
}

TEST_CASE("align_by_valuation sorts ascending and keeps tie order") {
  const Series aligned = align_by_valuation({3.0, 1.0, 2.0, 4.0}, {0.9, 0.1, 0.5, 0.5});
  REQUIRE(aligned.size() == 4);
  CHECK(aligned[0] == std::pair{0.1, 1.0});
  CHECK(aligned[1] == std::pair{0.5, 2.0});  // index 2 before index 3
  CHECK(aligned[2] == std::pair{0.5, 4.0});
  CHECK(aligned[3] == std::pair{0.9, 3.0});
  CHECK_THROWS_AS(align_by_valuation({1.0}, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("net and total valuations are element-wise") {
  const ValuationVector own{0.9, 0.2, 0.5};
  const ValuationVector opp{0.1, 0.6, 0.5};
  const std::vector<double> net = net_valuations(own, opp);
  const std::vector<double> total = total_valuations(own, opp);
  const std::vector<double> net_expected{0.8, -0.4, 0.0};
  const std::vector<double> total_expected{1.0, 0.8, 1.0};
  REQUIRE(net.size() == 3);
  REQUIRE(total.size() == 3);
  for (std::size_t h = 0; h < 3; ++h) {
    CHECK(net[h] == doctest::Approx(net_expected[h]).epsilon(kTight));
    CHECK(total[h] == doctest::Approx(total_expected[h]).epsilon(kTight));
  }
  CHECK_THROWS_AS(net_valuations({0.1}, {0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(total_valuations({0.1}, {0.1, 0.2}), std::invalid_argument);
}
