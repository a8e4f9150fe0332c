#include "blotto/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blotto {

namespace {

double sse_for(const Series& points, double a, double b) {
  double sse = 0.0;
  for (const auto& [v, y] : points) {
    const double r = y - a * std::exp(b * v);
    sse += r * r;
  }
  return sse;
}

// Least-squares line y = intercept + slope*x.
std::pair<double, double> ols_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {my - slope * mx, slope};
}

}  // namespace

ExpFit fit_exponential(const Series& points) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_exponential: need at least 2 points");
  const double v0 = points.front().first;
  const bool all_equal = std::all_of(points.begin(), points.end(),
                                     [&](const auto& p) { return p.first == v0; });
  if (all_equal)
    throw std::domain_error("fit_exponential: degenerate abscissae (all v equal)");

  // Log-linear start over the strictly positive responses.
  std::vector<double> lv;
  std::vector<double> ly;
  for (const auto& [v, y] : points) {
    if (y > 1e-9) {
      lv.push_back(v);
      ly.push_back(std::log(y));
    }
  }
  double a;
  double b;
  if (lv.size() >= 2) {
    const auto [intercept, slope] = ols_line(lv, ly);
    a = std::exp(intercept);
    b = slope;
  } else {
    double mean = 0.0;
    for (const auto& [v, y] : points) mean += y;
    a = mean / static_cast<double>(points.size());
    b = 0.0;
  }

  constexpr double kGradientTolerance = 1e-10;
  constexpr std::size_t kMaxSteps = 500;
  double sse = sse_for(points, a, b);
  double lambda = 1e-3;

  ExpFit fit;
  for (fit.steps = 0; fit.steps < kMaxSteps; ++fit.steps) {
    // Gradient and Gauss-Newton normal matrix for residuals y - a*exp(bv).
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (const auto& [v, y] : points) {
      const double e = std::exp(b * v);
      const double r = y - a * e;
      const double da = -e;          // d r / d a
      const double db = -a * v * e;  // d r / d b
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    if (std::sqrt(ga * ga + gb * gb) < kGradientTolerance) {
      fit.converged = true;
      break;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double maa = jaa * (1.0 + lambda);
      const double mbb = jbb * (1.0 + lambda);
      const double det = maa * mbb - jab * jab;
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 10.0;
        continue;
      }
      const double step_a = (-ga * mbb + gb * jab) / det;
      const double step_b = (-gb * maa + ga * jab) / det;
      const double na = a + step_a;
      const double nb = b + step_b;
      const double nsse = sse_for(points, na, nb);
      if (std::isfinite(nsse) && nsse <= sse) {
        a = na;
        b = nb;
        sse = nsse;
        lambda = std::max(lambda * 0.1, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;  // damping stalled; report the best point found
  }

  // A stalled loop can still sit at the optimum; re-check the gradient.
  if (!fit.converged) {
    double ga = 0.0, gb = 0.0;
    for (const auto& [v, y] : points) {
      const double e = std::exp(b * v);
      const double r = y - a * e;
      ga += -e * r;
      gb += -a * v * e * r;
    }
    fit.converged = std::sqrt(ga * ga + gb * gb) < kGradientTolerance;
  }

  fit.amplitude = a;
  fit.rate = b;
  fit.residual_sse = sse;
  return fit;
}

QuadFit fit_quadratic(const Series& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_quadratic: need at least 3 points");
  std::vector<double> distinct;
  for (const auto& [w, y] : points) {
    if (std::find(distinct.begin(), distinct.end(), w) == distinct.end()) distinct.push_back(w);
  }
  if (distinct.size() < 3)
    throw std::domain_error("fit_quadratic: degenerate design (need 3 distinct abscissae)");

  // Normal equations on the monomial basis (1, w, w^2).
  std::array<double, 5> s{};  // s[k] = sum w^k
  std::array<double, 3> t{};  // t[k] = sum w^k y
  for (const auto& [w, y] : points) {
    double wk = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += wk;
      if (k < 3) t[k] += wk * y;
      wk *= w;
    }
  }
  double m[3][4] = {{s[0], s[1], s[2], t[0]}, {s[1], s[2], s[3], t[1]}, {s[2], s[3], s[4], t[2]}};

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    if (std::abs(m[pivot][col]) < 1e-12)
      throw std::domain_error("fit_quadratic: rank-deficient normal equations");
    if (pivot != col)
      for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[pivot][j]);
    for (int row = col + 1; row < 3; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  QuadFit fit;
  double c[3];
  for (int row = 2; row >= 0; --row) {
    double rhs = m[row][3];
    for (int j = row + 1; j < 3; ++j) rhs -= m[row][j] * c[j];
    c[row] = rhs / m[row][row];
  }
  fit.c0 = c[0];
  fit.c1 = c[1];
  fit.c2 = c[2];
  for (const auto& [w, y] : points) {
    const double r = y - (fit.c0 + fit.c1 * w + fit.c2 * w * w);
    fit.residual_sse += r * r;
  }
  return fit;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::domain_error("pearson: undefined for zero variance");
  return sxy / std::sqrt(sxx * syy);
}

double concentration_share(const std::vector<double>& allocations,
                           const ValuationVector& valuations, double top_fraction) {
  if (allocations.size() != valuations.size())
    throw std::invalid_argument("concentration_share: length mismatch");
  if (!(top_fraction > 0.0) || top_fraction > 1.0)
    throw std::domain_error("concentration_share: top fraction must lie in (0, 1]");
  const double total = std::accumulate(allocations.begin(), allocations.end(), 0.0);
  if (!(total > 0.0))
    throw std::domain_error("concentration_share: strategy allocates nothing");

  const std::size_t k = allocations.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    return valuations[lhs] > valuations[rhs];
  });
  const auto top = static_cast<std::size_t>(
      std::ceil(top_fraction * static_cast<double>(k)) + 0.5);
  double in_top = 0.0;
  for (std::size_t i = 0; i < std::min(top, k); ++i) in_top += allocations[order[i]];
  return in_top / total;
}

double concentration_share(const Strategy& strategy, const ValuationVector& valuations,
                           double top_fraction) {
  return concentration_share(strategy.allocations, valuations, top_fraction);
}

Series align_by_valuation(const std::vector<double>& allocations,
                          const ValuationVector& valuations) {
  if (allocations.size() != valuations.size())
    throw std::invalid_argument("align_by_valuation: length mismatch");
  Series pairs;
  pairs.reserve(allocations.size());
  for (std::size_t h = 0; h < allocations.size(); ++h)
    pairs.emplace_back(valuations[h], allocations[h]);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  return pairs;
}

std::vector<double> net_valuations(const ValuationVector& own, const ValuationVector& opponent) {
  if (own.size() != opponent.size())
    throw std::invalid_argument("net_valuations: length mismatch");
  std::vector<double> net(own.size());
  for (std::size_t h = 0; h < own.size(); ++h) net[h] = own[h] - opponent[h];
  return net;
}

std::vector<double> total_valuations(const ValuationVector& a, const ValuationVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_valuations: length mismatch");
  std::vector<double> total(a.size());
  for (std::size_t h = 0; h < a.size(); ++h) total[h] = a[h] + b[h];
  return total;
}

}  // namespace blotto
