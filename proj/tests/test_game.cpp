#include <cmath>
#include <stdexcept>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/rng.hpp"
#include "doctest.h"

using namespace blotto;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("random stream reproduces the frozen mt19937_64 draws") {
  // frozen: tests/oracle/gen_constants.py (standard-defined engine replica)
  RandomStream rng(42);
  const std::vector<double> expected{0.755155532954539, 0.6390313938546974,
                                     0.7521452007480266, 0.13627268363243705};
  for (double value : expected) CHECK(rng.uniform01() == value);
}

TEST_CASE("uniform01 stays in [0, 1) and uniform_index in range") {
  RandomStream rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.uniform_index(7) < 7);
  }
}

TEST_CASE("uniform bounds map onto [lo, hi)") {
  RandomStream rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
  }
}

TEST_CASE("permutation matches the frozen draw and is a bijection") {
  // frozen: tests/oracle/gen_constants.py
  RandomStream rng(99);
  const std::vector<std::size_t> expected{0, 2, 5, 1, 4, 3};
  CHECK(rng.permutation(6) == expected);

  RandomStream other(123);
  auto order = other.permutation(40);
  std::vector<bool> seen(40, false);
  for (std::size_t index : order) {
    REQUIRE(index < 40);
    CHECK_FALSE(seen[index]);
    seen[index] = true;
  }
}

TEST_CASE("derive_run_seed matches the frozen splitmix64 chain") {
  // frozen: tests/oracle/gen_constants.py
  CHECK(derive_run_seed(1, 0, 0) == 0xacc79e7cb32001caULL);
  CHECK(derive_run_seed(1, 0, 1) == 0x69058e9868c4fc54ULL);
  CHECK(derive_run_seed(1, 1, 0) == 0x4aab31433470a03eULL);
  CHECK(derive_run_seed(123456789, 7, 3) == 0x46fa61dc43e898d6ULL);
}

TEST_CASE("battlefield utility awards full value on win, half on tie") {
  CHECK(battlefield_utility(2.0, 1.0, 0.6) == 0.6);
  CHECK(battlefield_utility(1.0, 2.0, 0.6) == 0.0);
  CHECK(battlefield_utility(1.0, 1.0, 0.6) == doctest::Approx(0.3).epsilon(kTight));
  // Forces within the tie tolerance still split the value.
  CHECK(battlefield_utility(1.0, 1.0 + 0.5 * kTieTolerance, 0.6) ==
        doctest::Approx(0.3).epsilon(kTight));
  CHECK_THROWS_AS(battlefield_utility(-0.1, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(battlefield_utility(0.0, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("score_pair reproduces the frozen hand-worked match") {
  // frozen: tests/oracle/gen_constants.py
  const std::vector<double> forces_a{0.4, 0.0, 2.1, 1.5};
  const std::vector<double> forces_b{0.4, 1.0, 1.6, 1.0};
  const ValuationVector values_a{0.9, 0.1, 0.5, 0.25};
  const ValuationVector values_b{0.2, 0.8, 0.3, 0.7};
  const auto [score_a, score_b] = score_pair(forces_a, forces_b, values_a, values_b);
  CHECK(score_a == doctest::Approx(1.2).epsilon(kTight));
  CHECK(score_b == doctest::Approx(0.9).epsilon(kTight));
}

TEST_CASE("match utilities follow the win/tie/loss rule") {
  CHECK(match_utilities(1.0, 0.5, FitnessMode::MatchWin) == std::pair{1.0, 0.0});
  CHECK(match_utilities(0.5, 1.0, FitnessMode::MatchWin) == std::pair{0.0, 1.0});
  CHECK(match_utilities(0.7, 0.7, FitnessMode::MatchWin) == std::pair{0.5, 0.5});
  // Scores inside the tie margin count as a draw.
  const auto [ua, ub] = match_utilities(0.7, 0.7 + 0.5 * kTieTolerance, FitnessMode::MatchWin);
  CHECK(ua == 0.5);
  CHECK(ub == 0.5);
  CHECK(match_utilities(1.2, 0.9, FitnessMode::ScoreSum) == std::pair{1.2, 0.9});
}

TEST_CASE("play_game mirrors score_pair and labels battlefield winners") {
  Strategy a;
  a.allocations = {0.4, 0.0, 2.1, 1.5};
  Strategy b;
  b.owner = Player::B;
  b.allocations = {0.4, 1.0, 1.6, 1.0};
  const ValuationVector values_a{0.9, 0.1, 0.5, 0.25};
  const ValuationVector values_b{0.2, 0.8, 0.3, 0.7};

  const GameOutcome outcome = play_game(a, b, values_a, values_b, FitnessMode::MatchWin);
  CHECK(outcome.score_a == doctest::Approx(1.2).epsilon(kTight));
  CHECK(outcome.score_b == doctest::Approx(0.9).epsilon(kTight));
  CHECK(outcome.utility_a == 1.0);
  CHECK(outcome.utility_b == 0.0);
  REQUIRE(outcome.per_battlefield.size() == 4);
  CHECK(outcome.per_battlefield[0].winner == BattleWinner::Tie);
  CHECK(outcome.per_battlefield[1].winner == BattleWinner::B);
  CHECK(outcome.per_battlefield[2].winner == BattleWinner::A);
  CHECK(outcome.per_battlefield[3].winner == BattleWinner::A);
  CHECK(outcome.per_battlefield[0].value_to_a == doctest::Approx(0.45));
  CHECK(outcome.per_battlefield[0].value_to_b == doctest::Approx(0.1));

  const GameOutcome by_score = play_game(a, b, values_a, values_b, FitnessMode::ScoreSum);
  CHECK(by_score.utility_a == by_score.score_a);
  CHECK(by_score.utility_b == by_score.score_b);
}

TEST_CASE("play_game rejects mismatched dimensions") {
  Strategy a;
  a.allocations = {1.0, 0.0};
  Strategy b;
  b.owner = Player::B;
  b.allocations = {0.5, 0.5, 0.0};
  CHECK_THROWS_AS(play_game(a, b, {0.0, 0.5}, {0.0, 0.5}, FitnessMode::MatchWin),
                  std::invalid_argument);
}

TEST_CASE("validate_strategy flags negatives and budget excess") {
  Strategy ok;
  ok.allocations = {0.25, 0.25, 0.5};
  CHECK(validate_strategy(ok, 1.0).valid);

  Strategy negative;
  negative.allocations = {0.5, -0.1, 0.6};
  const ValidationResult bad_sign = validate_strategy(negative, 1.0);
  CHECK_FALSE(bad_sign.valid);
  CHECK(bad_sign.offending_index == 1);

  Strategy heavy;
  heavy.allocations = {0.8, 0.8, 0.8};
  const ValidationResult over = validate_strategy(heavy, 1.0);
  CHECK_FALSE(over.valid);
  CHECK(over.excess == doctest::Approx(1.4).epsilon(1e-9));

  // Slack within the budget tolerance is accepted.
  Strategy close;
  close.allocations = {0.5, 0.5 + 0.5 * kBudgetTolerance};
  CHECK(validate_strategy(close, 1.0).valid);
}

TEST_CASE("evenly spaced valuations form the 0-based grid") {
  CHECK(evenly_spaced_valuations(3) ==
        ValuationVector{0.0, 1.0 / 3.0, 2.0 / 3.0});
  const ValuationVector grid = evenly_spaced_valuations(10);
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(0.9).epsilon(kTight));
}

TEST_CASE("homogeneous valuations leave the stream untouched") {
  GameConfig config;
  config.battlefields = 5;
  RandomStream rng(77);
  auto [values_a, values_b] = make_valuations(config, rng);
  CHECK(values_a == evenly_spaced_valuations(5));
  CHECK(values_b == values_a);
  RandomStream fresh(77);
  CHECK(rng.uniform01() == fresh.uniform01());
}

TEST_CASE("heterogeneous valuations permute the grid for player B") {
  // frozen: tests/oracle/gen_constants.py (het values_b seed 31)
  GameConfig config;
  config.battlefields = 5;
  config.valuation_mode = ValuationMode::HeterogeneousPermuted;
  RandomStream rng(31);
  auto [values_a, values_b] = make_valuations(config, rng);
  CHECK(values_a == evenly_spaced_valuations(5));
  CHECK(values_b == ValuationVector{0.0, 0.4, 0.8, 0.6, 0.2});
}

TEST_CASE("explicit valuations pass through untouched") {
  GameConfig config;
  config.battlefields = 2;
  config.valuation_mode = ValuationMode::Explicit;
  config.explicit_valuations_a = {0.25, 0.75};
  config.explicit_valuations_b = {1.0, 0.0};
  RandomStream rng(1);
  auto [values_a, values_b] = make_valuations(config, rng);
  CHECK(values_a == config.explicit_valuations_a);
  CHECK(values_b == config.explicit_valuations_b);
}

TEST_CASE("config validation rejects out-of-range parameters") {
  GameConfig config;
  CHECK_NOTHROW(config.validate());

  GameConfig no_fields = config;
  no_fields.battlefields = 0;
  CHECK_THROWS_AS(no_fields.validate(), std::domain_error);

  GameConfig no_budget = config;
  no_budget.budget_a = 0.0;
  CHECK_THROWS_AS(no_budget.validate(), std::domain_error);

  GameConfig alpha_low = config;
  alpha_low.asymmetry = 0.0;
  CHECK_THROWS_AS(alpha_low.validate(), std::domain_error);

  GameConfig alpha_high = config;
  alpha_high.asymmetry = 1.5;
  CHECK_THROWS_AS(alpha_high.validate(), std::domain_error);

  GameConfig explicit_bad = config;
  explicit_bad.valuation_mode = ValuationMode::Explicit;
  explicit_bad.explicit_valuations_a = {0.5, 0.5};  // wrong length for k = 3
  explicit_bad.explicit_valuations_b = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(explicit_bad.validate(), std::invalid_argument);

  GameConfig explicit_range = config;
  explicit_range.valuation_mode = ValuationMode::Explicit;
  explicit_range.explicit_valuations_a = {0.0, 0.5, 1.5};  // above 1
  explicit_range.explicit_valuations_b = {0.0, 0.5, 1.0};
  CHECK_THROWS_AS(explicit_range.validate(), std::domain_error);
}

TEST_CASE("asymmetry scales player B's budget") {
  GameConfig config;
  config.budget_a = 10.0;
  config.asymmetry = 0.85;
  CHECK(config.budget(Player::A) == 10.0);
  CHECK(config.budget(Player::B) == doctest::Approx(8.5).epsilon(kTight));
  CHECK(opponent_of(Player::A) == Player::B);
  CHECK(opponent_of(Player::B) == Player::A);
}
