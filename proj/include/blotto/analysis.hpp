#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

struct ExpFit {
  double amplitude = 0.0;  // a in y = a * exp(b v)
  double rate = 0.0;       // b, the concentration coefficient
  double residual_sse = 0.0;
  bool converged = false;
  std::size_t steps = 0;
};

struct QuadFit {
  double c0 = 0.0;  // y = c0 + c1 w + c2 w^2
  double c1 = 0.0;
  double c2 = 0.0;
  double residual_sse = 0.0;
};

using Series = std::vector<std::pair<double, double>>;

// Damped Gauss-Newton least squares for y = a*exp(b v), seeded by a
// log-linear regression over the strictly positive points.
ExpFit fit_exponential(const Series& points);

// OLS on (1, w, w^2) via normal equations with partial pivoting.
QuadFit fit_quadratic(const Series& points);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Fraction of total resources on the ceil(top_fraction * k) battlefields
// with the highest own valuations (ties by index).
double concentration_share(const Strategy& strategy, const ValuationVector& valuations,
                           double top_fraction);
double concentration_share(const std::vector<double>& allocations,
                           const ValuationVector& valuations, double top_fraction);

// (valuation, allocation) pairs sorted ascending by valuation, stable on
// ties; canonical input for the exponential fits and figure series.
Series align_by_valuation(const std::vector<double>& allocations,
                          const ValuationVector& valuations);

// w_h = v_h^own - v_h^opp.
std::vector<double> net_valuations(const ValuationVector& own, const ValuationVector& opponent);

// v_h^A + v_h^B.
std::vector<double> total_valuations(const ValuationVector& a, const ValuationVector& b);

}  // namespace blotto
