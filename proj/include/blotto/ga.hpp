#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/rng.hpp"

namespace blotto {

// Magnitude rule for the epsilon transfer applied by mutate().
enum class EpsilonMode {
  Uniform01,   // eps ~ U(0,1) in absolute resource units
  UnitScaled,  // eps ~ U(0,1) * init unit
};

struct GAParams {
  std::size_t population_size = 50;          // p
  std::optional<double> mutation_rate;       // mu; empty -> k/p clamped to 1
  std::size_t iterations = 1000;             // T
  double init_unit = 1.0;                    // increment used by the init sampler
  EpsilonMode epsilon_mode = EpsilonMode::Uniform01;
  // true: epsilon transfer only on the reset branch.
  // Default (false): reset with prob mu, epsilon transfer otherwise.
  bool noise_only_on_mutation = false;

  double mutation_rate_for(std::size_t battlefields) const;
  void validate() const;
};

struct StrategyFamily {
  Player owner = Player::A;
  std::vector<Strategy> members;
  std::size_t generation_index = 0;
};

using FitnessVector = std::vector<double>;

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  Strategy best_a;
  Strategy best_b;
  double best_fitness_a = 0.0;
  double best_fitness_b = 0.0;
  // Component-wise mean of best strategies over iterations 1..t.
  std::vector<double> average_best_a;
  std::vector<double> average_best_b;
  // Filled by the experiment layer when a baseline comparison is requested.
  double versus_diff = std::numeric_limits<double>::quiet_NaN();
  double versus_utility = std::numeric_limits<double>::quiet_NaN();
};

struct RunTrace {
  GameConfig config;
  GAParams params;
  ValuationVector valuations_a;
  ValuationVector valuations_b;
  StrategyFamily initial_a;
  StrategyFamily initial_b;
  std::vector<IterationRecord> iterations;
  StrategyFamily final_a;
  StrategyFamily final_b;

  // Last recorded running mean; empty when the run had zero iterations.
  const std::vector<double>& final_average_best(Player player) const;
};

// Algorithm-1 sampler: add `unit` to uniform indices until the budget is
// spent; the last increment is truncated so the total lands on the budget.
Strategy init_strategy(double budget, std::size_t battlefields, double unit, Player owner,
                       RandomStream& rng);

StrategyFamily init_family(const GameConfig& config, const GAParams& params, Player owner,
                           RandomStream& rng);

// fitness[l] = sum over opponent members m of member l's match utility.
FitnessVector evaluate_fitness(const StrategyFamily& family, const StrategyFamily& opponents,
                               const ValuationVector& own_values,
                               const ValuationVector& opponent_values, FitnessMode mode);

// Inverse-CDF draw over fitness shares r_a = f_a / total; uniform when the
// total is zero. `u` in [0,1). Exposed for direct testing.
std::size_t sample_fitness_proportional(const FitnessVector& fitness, double total, double u);

// Tournament of 3 fitness-proportional draws (with replacement); the draw
// with minimal fitness is discarded, ties going to the lowest family index.
std::pair<std::size_t, std::size_t> select_parent_indices(const FitnessVector& fitness,
                                                          RandomStream& rng);

// child_h = weight*a_h + (1-weight)*b_h. Exposed for direct testing.
Strategy crossover_blend(const Strategy& parent_a, const Strategy& parent_b, double weight);

// Draws one weight ~ U(0,1) per child.
Strategy crossover(const Strategy& parent_a, const Strategy& parent_b, RandomStream& rng);

// Move min(amount, allocations[from]) from one battlefield to another.
void transfer_noise(Strategy& strategy, double amount, std::size_t from, std::size_t to);

// delta <= mu: fresh Algorithm-1 strategy; otherwise an epsilon transfer
// between two distinct battlefields (see GAParams::noise_only_on_mutation).
Strategy mutate(const Strategy& child, double mu, double budget, double unit, RandomStream& rng,
                EpsilonMode epsilon_mode = EpsilonMode::Uniform01,
                bool noise_only_on_mutation = false);

// One generation step: elite, mutated elite, then p-2 tournament children.
StrategyFamily evolve(const StrategyFamily& family, const FitnessVector& fitness,
                      const GameConfig& config, const GAParams& params, RandomStream& rng);

// Full co-evolution loop; both families advance from the time-t state.
RunTrace run(const GameConfig& config, const GAParams& params);

}  // namespace blotto
