#include "blotto/game.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace blotto {

void GameConfig::validate() const {
  if (battlefields < 1) throw std::domain_error("GameConfig: battlefield count must be >= 1");
  if (!(budget_a > 0.0)) throw std::domain_error("GameConfig: n_A must be positive");
  if (!(asymmetry > 0.0) || asymmetry > 1.0)
    throw std::domain_error("GameConfig: alpha must lie in (0, 1]");
  if (valuation_mode == ValuationMode::Explicit) {
    if (explicit_valuations_a.size() != battlefields ||
        explicit_valuations_b.size() != battlefields)
      throw std::invalid_argument("GameConfig: explicit valuation vectors must have length k");
    for (const auto& values : {explicit_valuations_a, explicit_valuations_b}) {
      for (double v : values) {
        if (!(v >= 0.0) || v > 1.0)
          throw std::domain_error("GameConfig: explicit valuations must lie in [0, 1]");
      }
    }
  }
}

double Strategy::total() const {
  return std::accumulate(allocations.begin(), allocations.end(), 0.0);
}

double battlefield_utility(double own_force, double opponent_force, double own_value) {
  if (own_force < 0.0 || opponent_force < 0.0)
    throw std::invalid_argument("battlefield_utility: negative allocation");
  const double diff = own_force - opponent_force;
  if (diff > kTieTolerance) return own_value;
  if (diff < -kTieTolerance) return 0.0;
  return 0.5 * own_value;
}

std::pair<double, double> score_pair(const std::vector<double>& forces_a,
                                     const std::vector<double>& forces_b,
                                     const ValuationVector& values_a,
                                     const ValuationVector& values_b) {
  double score_a = 0.0;
  double score_b = 0.0;
  for (std::size_t h = 0; h < forces_a.size(); ++h) {
    const double diff = forces_a[h] - forces_b[h];
    if (diff > kTieTolerance) {
      score_a += values_a[h];
    } else if (diff < -kTieTolerance) {
      score_b += values_b[h];
    } else {
      score_a += 0.5 * values_a[h];
      score_b += 0.5 * values_b[h];
    }
  }
  return {score_a, score_b};
}

std::pair<double, double> match_utilities(double score_a, double score_b, FitnessMode mode) {
  if (mode == FitnessMode::ScoreSum) return {score_a, score_b};
  const double diff = score_a - score_b;
  if (diff > kTieTolerance) return {1.0, 0.0};
  if (diff < -kTieTolerance) return {0.0, 1.0};
  return {0.5, 0.5};
}

GameOutcome play_game(const Strategy& strategy_a, const Strategy& strategy_b,
                      const ValuationVector& values_a, const ValuationVector& values_b,
                      FitnessMode mode) {
  const std::size_t k = strategy_a.allocations.size();
  if (strategy_b.allocations.size() != k || values_a.size() != k || values_b.size() != k)
    throw std::invalid_argument("play_game: strategy and valuation lengths differ");

  GameOutcome out;
  out.per_battlefield.reserve(k);
  for (std::size_t h = 0; h < k; ++h) {
    const double xa = strategy_a.allocations[h];
    const double xb = strategy_b.allocations[h];
    if (xa < 0.0 || xb < 0.0) throw std::invalid_argument("play_game: negative allocation");
    BattlefieldOutcome field;
    const double diff = xa - xb;
    if (diff > kTieTolerance) {
      field.winner = BattleWinner::A;
      field.value_to_a = values_a[h];
    } else if (diff < -kTieTolerance) {
      field.winner = BattleWinner::B;
      field.value_to_b = values_b[h];
    } else {
      field.winner = BattleWinner::Tie;
      field.value_to_a = 0.5 * values_a[h];
      field.value_to_b = 0.5 * values_b[h];
    }
    out.score_a += field.value_to_a;
    out.score_b += field.value_to_b;
    out.per_battlefield.push_back(field);
  }
  std::tie(out.utility_a, out.utility_b) = match_utilities(out.score_a, out.score_b, mode);
  return out;
}

ValidationResult validate_strategy(const Strategy& strategy, double budget) {
  ValidationResult result;
  double total = 0.0;
  for (std::size_t h = 0; h < strategy.allocations.size(); ++h) {
    const double x = strategy.allocations[h];
    if (x < 0.0) {
      result.valid = false;
      result.offending_index = static_cast<std::ptrdiff_t>(h);
      result.reason = "negative allocation at battlefield " + std::to_string(h);
      return result;
    }
    total += x;
  }
  if (total > budget + kBudgetTolerance) {
    result.valid = false;
    result.excess = total - budget;
    result.reason = "allocations exceed budget by " + std::to_string(result.excess);
  }
  return result;
}

ValuationVector evenly_spaced_valuations(std::size_t battlefields) {
  ValuationVector values(battlefields);
  for (std::size_t h = 0; h < battlefields; ++h)
    values[h] = static_cast<double>(h) / static_cast<double>(battlefields);
  return values;
}

std::pair<ValuationVector, ValuationVector> make_valuations(const GameConfig& config,
                                                            RandomStream& rng) {
  config.validate();
  switch (config.valuation_mode) {
    case ValuationMode::HomogeneousEvenlySpaced: {
      ValuationVector grid = evenly_spaced_valuations(config.battlefields);
      return {grid, grid};
    }
    case ValuationMode::HeterogeneousPermuted: {
      ValuationVector grid = evenly_spaced_valuations(config.battlefields);
      const auto order = rng.permutation(config.battlefields);
      ValuationVector permuted(config.battlefields);
      for (std::size_t h = 0; h < config.battlefields; ++h) permuted[h] = grid[order[h]];
      return {grid, permuted};
    }
    case ValuationMode::Explicit:
      return {config.explicit_valuations_a, config.explicit_valuations_b};
  }
  throw std::logic_error("make_valuations: unknown valuation mode");
}

}  // namespace blotto
