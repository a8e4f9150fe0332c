#include "blotto/ga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blotto {

double GAParams::mutation_rate_for(std::size_t battlefields) const {
  if (mutation_rate) return *mutation_rate;
  const double rate =
      static_cast<double>(battlefields) / static_cast<double>(population_size);
  return std::min(rate, 1.0);
}

void GAParams::validate() const {
  if (population_size < 3)
    throw std::domain_error("GAParams: population must be >= 3 (tournament of three)");
  if (!(init_unit > 0.0)) throw std::domain_error("GAParams: init unit must be positive");
  if (mutation_rate && (*mutation_rate < 0.0 || *mutation_rate > 1.0))
    throw std::domain_error("GAParams: mutation rate must lie in [0, 1]");
}

const std::vector<double>& RunTrace::final_average_best(Player player) const {
  static const std::vector<double> empty;
  if (iterations.empty()) return empty;
  const IterationRecord& last = iterations.back();
  return player == Player::A ? last.average_best_a : last.average_best_b;
}

Strategy init_strategy(double budget, std::size_t battlefields, double unit, Player owner,
                       RandomStream& rng) {
  if (!(budget > 0.0) || !(unit > 0.0))
    throw std::domain_error("init_strategy: budget and unit must be positive");
  Strategy strategy;
  strategy.owner = owner;
  strategy.allocations.assign(battlefields, 0.0);
  double remaining = budget;
  while (remaining > 0.0) {
    const std::size_t index = rng.uniform_index(battlefields);
    const double increment = std::min(unit, remaining);
    strategy.allocations[index] += increment;
    remaining -= increment;
  }
  return strategy;
}

StrategyFamily init_family(const GameConfig& config, const GAParams& params, Player owner,
                           RandomStream& rng) {
  config.validate();
  params.validate();
  StrategyFamily family;
  family.owner = owner;
  family.generation_index = 0;
  family.members.reserve(params.population_size);
  const double budget = config.budget(owner);
  for (std::size_t l = 0; l < params.population_size; ++l)
    family.members.push_back(
        init_strategy(budget, config.battlefields, params.init_unit, owner, rng));
  return family;
}

FitnessVector evaluate_fitness(const StrategyFamily& family, const StrategyFamily& opponents,
                               const ValuationVector& own_values,
                               const ValuationVector& opponent_values, FitnessMode mode) {
  if (family.members.size() != opponents.members.size())
    throw std::invalid_argument("evaluate_fitness: family sizes differ");
  FitnessVector fitness(family.members.size(), 0.0);
  for (std::size_t l = 0; l < family.members.size(); ++l) {
    double total = 0.0;
    const auto& own = family.members[l].allocations;
    for (const Strategy& opp : opponents.members) {
      const auto [score_own, score_opp] =
          score_pair(own, opp.allocations, own_values, opponent_values);
      total += match_utilities(score_own, score_opp, mode).first;
    }
    fitness[l] = total;
  }
  return fitness;
}

std::size_t sample_fitness_proportional(const FitnessVector& fitness, double total, double u) {
  const std::size_t p = fitness.size();
  if (p == 0) throw std::invalid_argument("sample_fitness_proportional: empty fitness");
  if (!(total > 0.0)) {
    const auto index = static_cast<std::size_t>(u * static_cast<double>(p));
    return std::min(index, p - 1);
  }
  const double target = u * total;
  double cumulative = 0.0;
  for (std::size_t l = 0; l < p; ++l) {
    cumulative += fitness[l];
    if (target < cumulative) return l;
  }
  return p - 1;
}

std::pair<std::size_t, std::size_t> select_parent_indices(const FitnessVector& fitness,
                                                          RandomStream& rng) {
  if (fitness.size() < 3)
    throw std::invalid_argument("select_parent_indices: need at least 3 strategies");
  double total = 0.0;
  for (double f : fitness) {
    if (f < 0.0) throw std::domain_error("select_parent_indices: negative fitness");
    total += f;
  }
  std::size_t draws[3];
  for (auto& draw : draws) draw = sample_fitness_proportional(fitness, total, rng.uniform01());

  std::size_t loser = 0;
  for (std::size_t d = 1; d < 3; ++d) {
    const bool lower = fitness[draws[d]] < fitness[draws[loser]];
    const bool tie_lower_index =
        fitness[draws[d]] == fitness[draws[loser]] && draws[d] < draws[loser];
    if (lower || tie_lower_index) loser = d;
  }
  std::pair<std::size_t, std::size_t> parents;
  parents.first = draws[loser == 0 ? 1 : 0];
  parents.second = draws[loser == 2 ? 1 : 2];
  return parents;
}

Strategy crossover_blend(const Strategy& parent_a, const Strategy& parent_b, double weight) {
  if (parent_a.allocations.size() != parent_b.allocations.size())
    throw std::invalid_argument("crossover: parent lengths differ");
  if (parent_a.owner != parent_b.owner)
    throw std::invalid_argument("crossover: parents belong to different players");
  Strategy child;
  child.owner = parent_a.owner;
  child.allocations.resize(parent_a.allocations.size());
  for (std::size_t h = 0; h < child.allocations.size(); ++h)
    child.allocations[h] =
        weight * parent_a.allocations[h] + (1.0 - weight) * parent_b.allocations[h];
  return child;
}

Strategy crossover(const Strategy& parent_a, const Strategy& parent_b, RandomStream& rng) {
  return crossover_blend(parent_a, parent_b, rng.uniform01());
}

void transfer_noise(Strategy& strategy, double amount, std::size_t from, std::size_t to) {
  if (from == to) throw std::invalid_argument("transfer_noise: indices must differ");
  const double moved = std::min(amount, strategy.allocations[from]);
  strategy.allocations[from] -= moved;
  strategy.allocations[to] += moved;
}

namespace {

void apply_epsilon_transfer(Strategy& strategy, double unit, EpsilonMode mode,
                            RandomStream& rng) {
  const std::size_t k = strategy.allocations.size();
  if (k < 2) return;
  double epsilon = rng.uniform01();
  if (mode == EpsilonMode::UnitScaled) epsilon *= unit;
  const std::size_t from = rng.uniform_index(k);
  std::size_t to = rng.uniform_index(k - 1);
  if (to >= from) ++to;
  transfer_noise(strategy, epsilon, from, to);
}

}  // namespace

Strategy mutate(const Strategy& child, double mu, double budget, double unit, RandomStream& rng,
                EpsilonMode epsilon_mode, bool noise_only_on_mutation) {
  const std::size_t k = child.allocations.size();
  const double delta = rng.uniform01();
  if (delta <= mu) {
    Strategy reset = init_strategy(budget, k, unit, child.owner, rng);
    if (noise_only_on_mutation) apply_epsilon_transfer(reset, unit, epsilon_mode, rng);
    return reset;
  }
  if (noise_only_on_mutation) return child;
  Strategy perturbed = child;
  apply_epsilon_transfer(perturbed, unit, epsilon_mode, rng);
  return perturbed;
}

StrategyFamily evolve(const StrategyFamily& family, const FitnessVector& fitness,
                      const GameConfig& config, const GAParams& params, RandomStream& rng) {
  const std::size_t p = family.members.size();
  if (fitness.size() != p) throw std::invalid_argument("evolve: fitness length mismatch");
  if (p != params.population_size)
    throw std::invalid_argument("evolve: family size differs from params");

  std::size_t elite = 0;
  for (std::size_t l = 1; l < p; ++l)
    if (fitness[l] > fitness[elite]) elite = l;

  const double budget = config.budget(family.owner);
  const double mu = params.mutation_rate_for(config.battlefields);

  StrategyFamily next;
  next.owner = family.owner;
  next.generation_index = family.generation_index + 1;
  next.members.reserve(p);
  next.members.push_back(family.members[elite]);
  next.members.push_back(mutate(family.members[elite], mu, budget, params.init_unit, rng,
                                params.epsilon_mode, params.noise_only_on_mutation));
  for (std::size_t c = 2; c < p; ++c) {
    const auto [a, b] = select_parent_indices(fitness, rng);
    Strategy child = crossover(family.members[a], family.members[b], rng);
    next.members.push_back(mutate(child, mu, budget, params.init_unit, rng, params.epsilon_mode,
                                  params.noise_only_on_mutation));
  }
  return next;
}

namespace {

std::size_t argmax_lowest(const FitnessVector& fitness) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < fitness.size(); ++l)
    if (fitness[l] > fitness[best]) best = l;
  return best;
}

}  // namespace

RunTrace run(const GameConfig& config, const GAParams& params) {
  config.validate();
  params.validate();

  RunTrace trace;
  trace.config = config;
  trace.params = params;

  RandomStream rng(config.seed);
  auto [values_a, values_b] = make_valuations(config, rng);
  trace.valuations_a = values_a;
  trace.valuations_b = values_b;

  StrategyFamily family_a = init_family(config, params, Player::A, rng);
  StrategyFamily family_b = init_family(config, params, Player::B, rng);
  trace.initial_a = family_a;
  trace.initial_b = family_b;

  const std::size_t k = config.battlefields;
  std::vector<double> sum_best_a(k, 0.0);
  std::vector<double> sum_best_b(k, 0.0);
  trace.iterations.reserve(params.iterations);

  for (std::size_t t = 1; t <= params.iterations; ++t) {
    const FitnessVector fitness_a =
        evaluate_fitness(family_a, family_b, values_a, values_b, config.fitness_mode);
    const FitnessVector fitness_b =
        evaluate_fitness(family_b, family_a, values_b, values_a, config.fitness_mode);

    const std::size_t best_a = argmax_lowest(fitness_a);
    const std::size_t best_b = argmax_lowest(fitness_b);

    IterationRecord record;
    record.iteration = t;
    record.best_a = family_a.members[best_a];
    record.best_b = family_b.members[best_b];
    record.best_fitness_a = fitness_a[best_a];
    record.best_fitness_b = fitness_b[best_b];
    record.average_best_a.resize(k);
    record.average_best_b.resize(k);
    const double inverse_t = 1.0 / static_cast<double>(t);
    for (std::size_t h = 0; h < k; ++h) {
      sum_best_a[h] += record.best_a.allocations[h];
      sum_best_b[h] += record.best_b.allocations[h];
      record.average_best_a[h] = sum_best_a[h] * inverse_t;
      record.average_best_b[h] = sum_best_b[h] * inverse_t;
    }
    trace.iterations.push_back(std::move(record));

    // Synchronous update: both next generations come from the time-t state.
    StrategyFamily next_a = evolve(family_a, fitness_a, config, params, rng);
    StrategyFamily next_b = evolve(family_b, fitness_b, config, params, rng);
    family_a = std::move(next_a);
    family_b = std::move(next_b);
  }

  trace.final_a = std::move(family_a);
  trace.final_b = std::move(family_b);
  return trace;
}

}  // namespace blotto
