#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blotto/rng.hpp"

namespace blotto {

// Force comparisons (battlefields) and score comparisons (match outcome)
// count as ties within this margin.
inline constexpr double kTieTolerance = 1e-12;
// Slack allowed on the resource constraint sum(x) <= budget.
inline constexpr double kBudgetTolerance = 1e-9;

enum class Player { A, B };

inline Player opponent_of(Player p) { return p == Player::A ? Player::B : Player::A; }
inline const char* player_name(Player p) { return p == Player::A ? "A" : "B"; }

enum class ValuationMode {
  HomogeneousEvenlySpaced,  // both players use the evenly spaced grid
  HeterogeneousPermuted,    // B plays a seeded random permutation of the grid
  Explicit,                 // caller supplies both vectors
};

enum class FitnessMode {
  MatchWin,  // 1 / 0.5 / 0 from the score comparison
  ScoreSum,  // utility equals the own score
};

using ValuationVector = std::vector<double>;

struct GameConfig {
  std::size_t battlefields = 3;  // k
  double budget_a = 1.0;         // n_A, resource units
  double asymmetry = 1.0;        // alpha in (0,1]; n_B = alpha * n_A
  ValuationMode valuation_mode = ValuationMode::HomogeneousEvenlySpaced;
  FitnessMode fitness_mode = FitnessMode::MatchWin;
  std::uint64_t seed = 1;
  ValuationVector explicit_valuations_a;  // Explicit mode only
  ValuationVector explicit_valuations_b;

  double budget(Player p) const { return p == Player::A ? budget_a : asymmetry * budget_a; }
  void validate() const;
};

struct Strategy {
  std::vector<double> allocations;  // resource units per battlefield
  Player owner = Player::A;

  double total() const;
};

enum class BattleWinner { A, B, Tie };

struct BattlefieldOutcome {
  BattleWinner winner = BattleWinner::Tie;
  double value_to_a = 0.0;
  double value_to_b = 0.0;
};

struct GameOutcome {
  double score_a = 0.0;
  double score_b = 0.0;
  double utility_a = 0.0;
  double utility_b = 0.0;
  std::vector<BattlefieldOutcome> per_battlefield;
};

struct ValidationResult {
  bool valid = true;
  std::ptrdiff_t offending_index = -1;  // first negative entry, -1 otherwise
  double excess = 0.0;                  // spend above budget, 0 when within
  std::string reason;
};

// Battlefield value to its owner: full value on a win, half on a tie
// (within kTieTolerance), nothing on a loss. Throws on negative forces.
double battlefield_utility(double own_force, double opponent_force, double own_value);

// Scores only, no allocation; the fitness-evaluation hot path. Assumes
// dimensions were validated by the caller.
std::pair<double, double> score_pair(const std::vector<double>& forces_a,
                                     const std::vector<double>& forces_b,
                                     const ValuationVector& values_a,
                                     const ValuationVector& values_b);

// Match utilities from a score pair under the given mode.
std::pair<double, double> match_utilities(double score_a, double score_b, FitnessMode mode);

GameOutcome play_game(const Strategy& strategy_a, const Strategy& strategy_b,
                      const ValuationVector& values_a, const ValuationVector& values_b,
                      FitnessMode mode);

ValidationResult validate_strategy(const Strategy& strategy, double budget);

// {0, 1/k, 2/k, ..., (k-1)/k}
ValuationVector evenly_spaced_valuations(std::size_t battlefields);

// Valuation pair for one run. Heterogeneous mode consumes one permutation
// from the stream; the other modes leave the stream untouched.
std::pair<ValuationVector, ValuationVector> make_valuations(const GameConfig& config,
                                                            RandomStream& rng);

}  // namespace blotto
