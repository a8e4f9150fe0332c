#include "blotto/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace blotto {

double continuum_allocation(double valuation, double budget) {
  if (valuation < 0.0 || valuation > 1.0)
    throw std::domain_error("continuum_allocation: valuation must lie in [0, 1]");
  if (!(budget > 0.0)) throw std::domain_error("continuum_allocation: budget must be positive");
  // Uniform(0,1) valuations give integral v^2 dv = 1/3.
  return budget * 3.0 * valuation * valuation;
}

Strategy discrete_equilibrium(const ValuationVector& grid, double budget) {
  if (grid.empty()) throw std::invalid_argument("discrete_equilibrium: empty grid");
  if (!(budget > 0.0)) throw std::domain_error("discrete_equilibrium: budget must be positive");
  double sum_squares = 0.0;
  for (double v : grid) sum_squares += v * v;
  if (!(sum_squares > 0.0))
    throw std::domain_error("discrete_equilibrium: grid needs a positive valuation");
  Strategy strategy;
  strategy.allocations.resize(grid.size());
  for (std::size_t h = 0; h < grid.size(); ++h)
    strategy.allocations[h] = budget * grid[h] * grid[h] / sum_squares;
  return strategy;
}

Strategy nash_3field(double budget) {
  if (!(budget > 0.0)) throw std::domain_error("nash_3field: budget must be positive");
  Strategy strategy;
  strategy.allocations = {0.0, 0.0, budget};
  return strategy;
}

Strategy realize_equilibrium(const EquilibriumStrategySpec& spec) {
  switch (spec.kind) {
    case EquilibriumKind::ContinuumUniform: {
      if (spec.grid.empty())
        throw std::invalid_argument("realize_equilibrium: continuum rule needs a grid sample");
      Strategy strategy;
      strategy.allocations.resize(spec.grid.size());
      // Density rule scaled per battlefield; not budget-exact on finite grids.
      for (std::size_t h = 0; h < spec.grid.size(); ++h)
        strategy.allocations[h] =
            continuum_allocation(spec.grid[h], spec.budget) / static_cast<double>(spec.grid.size());
      return strategy;
    }
    case EquilibriumKind::DiscreteGrid:
      return discrete_equilibrium(spec.grid, spec.budget);
    case EquilibriumKind::Nash3Field:
      return nash_3field(spec.budget);
  }
  throw std::logic_error("realize_equilibrium: unknown kind");
}

std::vector<VersusPoint> versus_equilibrium(const RunTrace& trace,
                                            const EquilibriumStrategySpec& spec, Player player,
                                            bool use_instantaneous_best) {
  const Strategy equilibrium = realize_equilibrium(spec);
  const std::size_t k = trace.config.battlefields;
  if (equilibrium.allocations.size() != k)
    throw std::invalid_argument("versus_equilibrium: baseline dimension differs from the run");

  const ValuationVector& own_values =
      player == Player::A ? trace.valuations_a : trace.valuations_b;
  const ValuationVector& opp_values =
      player == Player::A ? trace.valuations_b : trace.valuations_a;

  std::vector<VersusPoint> series;
  series.reserve(trace.iterations.size());
  for (const IterationRecord& record : trace.iterations) {
    const std::vector<double>* candidate;
    if (use_instantaneous_best)
      candidate = player == Player::A ? &record.best_a.allocations : &record.best_b.allocations;
    else
      candidate = player == Player::A ? &record.average_best_a : &record.average_best_b;

    const auto [score_own, score_eq] =
        score_pair(*candidate, equilibrium.allocations, own_values, opp_values);
    VersusPoint point;
    point.iteration = record.iteration;
    point.score_diff = score_own - score_eq;
    point.match_utility = match_utilities(score_own, score_eq, FitnessMode::MatchWin).first;
    series.push_back(point);
  }
  return series;
}

}  // namespace blotto
