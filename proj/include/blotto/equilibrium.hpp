#pragma once

#include <cstddef>
#include <vector>

#include "blotto/ga.hpp"
#include "blotto/game.hpp"

namespace blotto {

enum class EquilibriumKind { ContinuumUniform, DiscreteGrid, Nash3Field };

struct EquilibriumStrategySpec {
  EquilibriumKind kind = EquilibriumKind::DiscreteGrid;
  double budget = 1.0;
  ValuationVector grid;  // required for DiscreteGrid
};

struct VersusPoint {
  std::size_t iteration = 0;
  double score_diff = 0.0;     // score(average best) - score(equilibrium)
  double match_utility = 0.0;  // win/tie/loss utility of the average best
};

// Symmetric continuum rule for uniform(0,1) valuations: budget * 3v^2.
double continuum_allocation(double valuation, double budget);

// Share rule on a finite grid: allocation_h = budget * v_h^2 / sum v^2.
Strategy discrete_equilibrium(const ValuationVector& grid, double budget);

// Pure equilibrium of the 3-battlefield game with V = (0, 1/3, 2/3).
Strategy nash_3field(double budget);

Strategy realize_equilibrium(const EquilibriumStrategySpec& spec);

// Plays each iteration's running average-best against the fixed baseline
// (score comparison plus the match utility). Instantaneous variant swaps in
// the per-iteration best instead of the running mean.
std::vector<VersusPoint> versus_equilibrium(const RunTrace& trace,
                                            const EquilibriumStrategySpec& spec,
                                            Player player = Player::A,
                                            bool use_instantaneous_best = false);

}  // namespace blotto
