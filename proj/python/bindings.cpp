#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "blotto/analysis.hpp"
#include "blotto/equilibrium.hpp"
#include "blotto/experiment.hpp"
#include "blotto/ga.hpp"
#include "blotto/game.hpp"
#include "blotto/rng.hpp"

namespace py = pybind11;
using namespace blotto;

namespace {

std::vector<double> trace_best_fitness(const RunTrace& trace, Player player) {
  std::vector<double> series;
  series.reserve(trace.iterations.size());
  for (const IterationRecord& record : trace.iterations)
    series.push_back(player == Player::A ? record.best_fitness_a : record.best_fitness_b);
  return series;
}

std::vector<std::vector<double>> trace_average_best(const RunTrace& trace, Player player) {
  std::vector<std::vector<double>> series;
  series.reserve(trace.iterations.size());
  for (const IterationRecord& record : trace.iterations)
    series.push_back(player == Player::A ? record.average_best_a : record.average_best_b);
  return series;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
  module.doc() = "Two-player resource-allocation games with evolutionary learning";

  py::enum_<Player>(module, "Player")
      .value("A", Player::A)
      .value("B", Player::B);

  py::enum_<ValuationMode>(module, "ValuationMode")
      .value("HOMOGENEOUS", ValuationMode::HomogeneousEvenlySpaced)
      .value("HETEROGENEOUS", ValuationMode::HeterogeneousPermuted)
      .value("EXPLICIT", ValuationMode::Explicit);

  py::enum_<FitnessMode>(module, "FitnessMode")
      .value("MATCH_WIN", FitnessMode::MatchWin)
      .value("SCORE_SUM", FitnessMode::ScoreSum);

  py::enum_<EpsilonMode>(module, "EpsilonMode")
      .value("UNIFORM", EpsilonMode::Uniform01)
      .value("UNIT_SCALED", EpsilonMode::UnitScaled);

  py::enum_<EquilibriumKind>(module, "EquilibriumKind")
      .value("CONTINUUM_UNIFORM", EquilibriumKind::ContinuumUniform)
      .value("DISCRETE_GRID", EquilibriumKind::DiscreteGrid)
      .value("NASH_3FIELD", EquilibriumKind::Nash3Field);

  py::class_<GameConfig>(module, "GameConfig")
      .def(py::init<>())
      .def_readwrite("battlefields", &GameConfig::battlefields)
      .def_readwrite("budget_a", &GameConfig::budget_a)
      .def_readwrite("asymmetry", &GameConfig::asymmetry)
      .def_readwrite("valuation_mode", &GameConfig::valuation_mode)
      .def_readwrite("fitness_mode", &GameConfig::fitness_mode)
      .def_readwrite("seed", &GameConfig::seed)
      .def_readwrite("explicit_valuations_a", &GameConfig::explicit_valuations_a)
      .def_readwrite("explicit_valuations_b", &GameConfig::explicit_valuations_b)
      .def("budget", &GameConfig::budget, py::arg("player"))
      .def("validate", &GameConfig::validate)
      .def("__repr__", [](const GameConfig& config) {
        std::ostringstream out;
        out << "GameConfig(battlefields=" << config.battlefields << ", budget_a="
            << config.budget_a << ", asymmetry=" << config.asymmetry << ", seed=" << config.seed
            << ")";
        return out.str();
      });

  py::class_<GAParams>(module, "GAParams")
      .def(py::init<>())
      .def_readwrite("population_size", &GAParams::population_size)
      .def_readwrite("mutation_rate", &GAParams::mutation_rate)
      .def_readwrite("iterations", &GAParams::iterations)
      .def_readwrite("init_unit", &GAParams::init_unit)
      .def_readwrite("epsilon_mode", &GAParams::epsilon_mode)
      .def_readwrite("noise_only_on_mutation", &GAParams::noise_only_on_mutation)
      .def("mutation_rate_for", &GAParams::mutation_rate_for, py::arg("battlefields"))
      .def("validate", &GAParams::validate);

  py::class_<Strategy>(module, "Strategy")
      .def(py::init<>())
      .def_readwrite("allocations", &Strategy::allocations)
      .def_readwrite("owner", &Strategy::owner)
      .def("total", &Strategy::total);

  py::class_<RunTrace>(module, "RunTrace")
      .def_property_readonly("valuations_a",
                             [](const RunTrace& trace) { return trace.valuations_a; })
      .def_property_readonly("valuations_b",
                             [](const RunTrace& trace) { return trace.valuations_b; })
      .def_property_readonly("iterations",
                             [](const RunTrace& trace) { return trace.iterations.size(); })
      .def("final_average_best", &RunTrace::final_average_best, py::arg("player"),
           py::return_value_policy::copy)
      .def("best_fitness_series", &trace_best_fitness, py::arg("player"))
      .def("average_best_series", &trace_average_best, py::arg("player"));

  py::class_<VersusPoint>(module, "VersusPoint")
      .def_readonly("iteration", &VersusPoint::iteration)
      .def_readonly("score_diff", &VersusPoint::score_diff)
      .def_readonly("match_utility", &VersusPoint::match_utility)
      .def("__repr__", [](const VersusPoint& point) {
        std::ostringstream out;
        out << "VersusPoint(iteration=" << point.iteration << ", score_diff=" << point.score_diff
            << ", match_utility=" << point.match_utility << ")";
        return out.str();
      });

  py::class_<ExpFit>(module, "ExpFit")
      .def_readonly("amplitude", &ExpFit::amplitude)
      .def_readonly("rate", &ExpFit::rate)
      .def_readonly("residual_sse", &ExpFit::residual_sse)
      .def_readonly("converged", &ExpFit::converged);

  py::class_<QuadFit>(module, "QuadFit")
      .def_readonly("c0", &QuadFit::c0)
      .def_readonly("c1", &QuadFit::c1)
      .def_readonly("c2", &QuadFit::c2)
      .def_readonly("residual_sse", &QuadFit::residual_sse);

  module.def("run", &run, py::arg("config"), py::arg("params"),
             py::call_guard<py::gil_scoped_release>(),
             "Evolve both families and record the full trace.");

  module.def("evenly_spaced_valuations", &evenly_spaced_valuations, py::arg("battlefields"));

  module.def("continuum_allocation", &continuum_allocation, py::arg("valuation"),
             py::arg("budget"));

  module.def(
      "discrete_equilibrium",
      [](const ValuationVector& grid, double budget) {
        return discrete_equilibrium(grid, budget).allocations;
      },
      py::arg("grid"), py::arg("budget"));

  module.def(
      "nash_3field", [](double budget) { return nash_3field(budget).allocations; },
      py::arg("budget"));

  module.def(
      "versus_equilibrium",
      [](const RunTrace& trace, EquilibriumKind kind, double budget, const ValuationVector& grid,
         Player player, bool use_instantaneous_best) {
        EquilibriumStrategySpec spec;
        spec.kind = kind;
        spec.budget = budget;
        spec.grid = grid;
        return versus_equilibrium(trace, spec, player, use_instantaneous_best);
      },
      py::arg("trace"), py::arg("kind"), py::arg("budget"), py::arg("grid") = ValuationVector{},
      py::arg("player") = Player::A, py::arg("use_instantaneous_best") = false);

  module.def("fit_exponential", &fit_exponential, py::arg("points"));
  module.def("fit_quadratic", &fit_quadratic, py::arg("points"));
  module.def("pearson", &pearson, py::arg("x"), py::arg("y"));
  module.def(
      "concentration_share",
      [](const std::vector<double>& allocations, const ValuationVector& valuations,
         double top_fraction) {
        return concentration_share(allocations, valuations, top_fraction);
      },
      py::arg("allocations"), py::arg("valuations"), py::arg("top_fraction"));
  module.def("align_by_valuation", &align_by_valuation, py::arg("allocations"),
             py::arg("valuations"));
  module.def("net_valuations", &net_valuations, py::arg("own"), py::arg("opponent"));
  module.def("derive_run_seed", &derive_run_seed, py::arg("listed_seed"), py::arg("sweep_index"),
             py::arg("seed_index"));
}
