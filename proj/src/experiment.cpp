#include "blotto/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "blotto/analysis.hpp"
#include "blotto/equilibrium.hpp"
#include "blotto/rng.hpp"

namespace blotto {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_checksum: cannot open " + path);
  std::uint64_t hash = 14695981039346656037ull;  // FNV-1a 64 offset basis
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(hex);
}

bool RunManifest::all_succeeded() const {
  return std::all_of(runs.begin(), runs.end(),
                     [](const RunEntry& entry) { return entry.error.empty(); });
}

// --- spec parsing ---------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line,
                             const std::string& message) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, const std::string& origin, std::size_t line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    parse_fail(origin, line, "expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_uint64(const std::string& value, const std::string& origin,
                           std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    parse_fail(origin, line, "expected an unsigned integer, got '" + value + "'");
  }
}

std::size_t parse_size(const std::string& value, const std::string& origin, std::size_t line) {
  return static_cast<std::size_t>(parse_uint64(value, origin, line));
}

bool parse_bool(const std::string& value, const std::string& origin, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  parse_fail(origin, line, "expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string current;
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

std::vector<double> parse_number_list(const std::string& value, const std::string& origin,
                                      std::size_t line) {
  std::vector<double> numbers;
  for (const std::string& item : split_list(value))
    numbers.push_back(parse_number(item, origin, line));
  return numbers;
}

constexpr const char* kSweepAxes[] = {"alpha", "k", "n_A", "p", "mu", "T", "unit"};

bool is_sweep_axis(const std::string& name) {
  return std::find(std::begin(kSweepAxes), std::end(kSweepAxes), name) != std::end(kSweepAxes);
}

void apply_sweep_value(GameConfig& config, GAParams& params, const std::string& name,
                       double value) {
  const auto as_count = [&](const char* what) {
    if (value < 0.0 || value != std::floor(value))
      throw std::domain_error(std::string("sweep axis ") + what + " requires integer values");
    return static_cast<std::size_t>(value);
  };
  if (name == "alpha") {
    config.asymmetry = value;
  } else if (name == "k") {
    config.battlefields = as_count("k");
  } else if (name == "n_A") {
    config.budget_a = value;
  } else if (name == "p") {
    params.population_size = as_count("p");
  } else if (name == "mu") {
    params.mutation_rate = value;
  } else if (name == "T") {
    params.iterations = as_count("T");
  } else if (name == "unit") {
    params.init_unit = value;
  } else {
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
  }
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& text, const std::string& origin) {
  ExperimentSpec spec;
  bool seeds_given = false;

  std::istringstream stream(text);
  std::string raw;
  std::string section;
  std::size_t line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(origin, line_number, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "game" && section != "ga" && section != "sweep" && section != "outputs")
        parse_fail(origin, line_number, "unknown section [" + section + "]");
      continue;
    }

    const auto equals = line.find('=');
    if (equals == std::string::npos)
      parse_fail(origin, line_number, "expected 'key = value'");
    const std::string key = trim(line.substr(0, equals));
    const std::string value = trim(line.substr(equals + 1));
    if (section.empty())
      parse_fail(origin, line_number, "key '" + key + "' appears before any section");

    if (section == "game") {
      if (key == "k") {
        spec.game.battlefields = parse_size(value, origin, line_number);
      } else if (key == "n_A") {
        spec.game.budget_a = parse_number(value, origin, line_number);
      } else if (key == "alpha") {
        spec.game.asymmetry = parse_number(value, origin, line_number);
      } else if (key == "valuations") {
        if (value == "homogeneous")
          spec.game.valuation_mode = ValuationMode::HomogeneousEvenlySpaced;
        else if (value == "heterogeneous")
          spec.game.valuation_mode = ValuationMode::HeterogeneousPermuted;
        else if (value == "explicit")
          spec.game.valuation_mode = ValuationMode::Explicit;
        else
          parse_fail(origin, line_number, "valuations must be homogeneous|heterogeneous|explicit");
      } else if (key == "fitness") {
        if (value == "match-win")
          spec.game.fitness_mode = FitnessMode::MatchWin;
        else if (value == "score-sum")
          spec.game.fitness_mode = FitnessMode::ScoreSum;
        else
          parse_fail(origin, line_number, "fitness must be match-win|score-sum");
      } else if (key == "seed") {
        spec.game.seed = parse_uint64(value, origin, line_number);
      } else if (key == "values_A") {
        spec.game.explicit_valuations_a = parse_number_list(value, origin, line_number);
      } else if (key == "values_B") {
        spec.game.explicit_valuations_b = parse_number_list(value, origin, line_number);
      } else {
        parse_fail(origin, line_number, "unknown key '" + key + "' in [game]");
      }
    } else if (section == "ga") {
      if (key == "p") {
        spec.ga.population_size = parse_size(value, origin, line_number);
      } else if (key == "mu") {
        spec.ga.mutation_rate = parse_number(value, origin, line_number);
      } else if (key == "T") {
        spec.ga.iterations = parse_size(value, origin, line_number);
      } else if (key == "unit") {
        spec.ga.init_unit = parse_number(value, origin, line_number);
      } else if (key == "epsilon") {
        if (value == "uniform")
          spec.ga.epsilon_mode = EpsilonMode::Uniform01;
        else if (value == "unit-scaled")
          spec.ga.epsilon_mode = EpsilonMode::UnitScaled;
        else
          parse_fail(origin, line_number, "epsilon must be uniform|unit-scaled");
      } else if (key == "noise_only_on_mutation") {
        spec.ga.noise_only_on_mutation = parse_bool(value, origin, line_number);
      } else {
        parse_fail(origin, line_number, "unknown key '" + key + "' in [ga]");
      }
    } else if (section == "sweep") {
      if (key == "seeds") {
        seeds_given = true;
        spec.seeds.clear();
        for (const std::string& item : split_list(value))
          spec.seeds.push_back(parse_uint64(item, origin, line_number));
      } else if (is_sweep_axis(key)) {
        for (const SweepAxis& axis : spec.sweep)
          if (axis.parameter == key)
            parse_fail(origin, line_number, "duplicate sweep axis '" + key + "'");
        SweepAxis axis;
        axis.parameter = key;
        axis.values = parse_number_list(value, origin, line_number);
        if (axis.values.empty())
          parse_fail(origin, line_number, "sweep axis '" + key + "' has no values");
        spec.sweep.push_back(std::move(axis));
      } else {
        parse_fail(origin, line_number, "unknown key '" + key + "' in [sweep]");
      }
    } else {  // outputs
      if (key == "dir") {
        spec.outputs.directory = value;
      } else if (key == "traces") {
        spec.outputs.write_traces = parse_bool(value, origin, line_number);
      } else if (key == "diagnostics") {
        spec.outputs.write_diagnostics = parse_bool(value, origin, line_number);
      } else {
        parse_fail(origin, line_number, "unknown key '" + key + "' in [outputs]");
      }
    }
  }

  if (!seeds_given) spec.seeds = {spec.game.seed};
  spec.game.validate();
  spec.ga.validate();
  return spec;
}

ExperimentSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_spec: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str(), path);
}

// --- planning --------------------------------------------------------------

std::vector<RunPlanItem> plan_runs(const ExperimentSpec& spec) {
  std::size_t sweep_points = 1;
  for (const SweepAxis& axis : spec.sweep) sweep_points *= axis.values.size();

  std::vector<RunPlanItem> plan;
  plan.reserve(sweep_points * spec.seeds.size());
  for (std::size_t sweep_index = 0; sweep_index < sweep_points; ++sweep_index) {
    GameConfig config = spec.game;
    GAParams params = spec.ga;
    std::vector<std::pair<std::string, double>> point;

    // Row-major decomposition: the last declared axis varies fastest.
    std::size_t remainder = sweep_index;
    std::vector<std::size_t> axis_index(spec.sweep.size(), 0);
    for (std::size_t a = spec.sweep.size(); a-- > 0;) {
      axis_index[a] = remainder % spec.sweep[a].values.size();
      remainder /= spec.sweep[a].values.size();
    }
    for (std::size_t a = 0; a < spec.sweep.size(); ++a) {
      const double value = spec.sweep[a].values[axis_index[a]];
      apply_sweep_value(config, params, spec.sweep[a].parameter, value);
      point.emplace_back(spec.sweep[a].parameter, value);
    }
    config.validate();
    params.validate();

    for (std::size_t seed_index = 0; seed_index < spec.seeds.size(); ++seed_index) {
      RunPlanItem item;
      item.run_index = sweep_index * spec.seeds.size() + seed_index;
      item.sweep_index = sweep_index;
      item.seed_index = seed_index;
      item.listed_seed = spec.seeds[seed_index];
      item.run_seed = derive_run_seed(item.listed_seed, sweep_index, seed_index);
      item.sweep_point = point;
      item.config = config;
      item.config.seed = item.run_seed;
      item.params = params;
      char label[32];
      std::snprintf(label, sizeof(label), "run_%04zu", item.run_index);
      item.label = label;
      plan.push_back(std::move(item));
    }
  }
  return plan;
}

// --- serialization ---------------------------------------------------------

namespace {

const char* valuation_mode_name(ValuationMode mode) {
  switch (mode) {
    case ValuationMode::HomogeneousEvenlySpaced: return "homogeneous";
    case ValuationMode::HeterogeneousPermuted: return "heterogeneous";
    case ValuationMode::Explicit: return "explicit";
  }
  return "homogeneous";
}

ValuationMode valuation_mode_from(const std::string& name) {
  if (name == "homogeneous") return ValuationMode::HomogeneousEvenlySpaced;
  if (name == "heterogeneous") return ValuationMode::HeterogeneousPermuted;
  if (name == "explicit") return ValuationMode::Explicit;
  throw std::runtime_error("manifest: unknown valuation mode '" + name + "'");
}

json config_to_json(const GameConfig& config) {
  json out;
  out["k"] = config.battlefields;
  out["n_A"] = config.budget_a;
  out["alpha"] = config.asymmetry;
  out["valuations"] = valuation_mode_name(config.valuation_mode);
  out["fitness"] = config.fitness_mode == FitnessMode::MatchWin ? "match-win" : "score-sum";
  out["seed"] = config.seed;
  if (config.valuation_mode == ValuationMode::Explicit) {
    out["values_A"] = config.explicit_valuations_a;
    out["values_B"] = config.explicit_valuations_b;
  }
  return out;
}

GameConfig config_from_json(const json& in) {
  GameConfig config;
  config.battlefields = in.at("k").get<std::size_t>();
  config.budget_a = in.at("n_A").get<double>();
  config.asymmetry = in.at("alpha").get<double>();
  config.valuation_mode = valuation_mode_from(in.at("valuations").get<std::string>());
  config.fitness_mode = in.at("fitness").get<std::string>() == "score-sum"
                            ? FitnessMode::ScoreSum
                            : FitnessMode::MatchWin;
  config.seed = in.at("seed").get<std::uint64_t>();
  if (in.contains("values_A")) config.explicit_valuations_a = in["values_A"].get<ValuationVector>();
  if (in.contains("values_B")) config.explicit_valuations_b = in["values_B"].get<ValuationVector>();
  return config;
}

json params_to_json(const GAParams& params) {
  json out;
  out["p"] = params.population_size;
  if (params.mutation_rate)
    out["mu"] = *params.mutation_rate;
  else
    out["mu"] = nullptr;
  out["T"] = params.iterations;
  out["unit"] = params.init_unit;
  out["epsilon"] = params.epsilon_mode == EpsilonMode::Uniform01 ? "uniform" : "unit-scaled";
  out["noise_only_on_mutation"] = params.noise_only_on_mutation;
  return out;
}

GAParams params_from_json(const json& in) {
  GAParams params;
  params.population_size = in.at("p").get<std::size_t>();
  if (!in.at("mu").is_null()) params.mutation_rate = in.at("mu").get<double>();
  params.iterations = in.at("T").get<std::size_t>();
  params.init_unit = in.at("unit").get<double>();
  params.epsilon_mode = in.at("epsilon").get<std::string>() == "unit-scaled"
                            ? EpsilonMode::UnitScaled
                            : EpsilonMode::Uniform01;
  params.noise_only_on_mutation = in.at("noise_only_on_mutation").get<bool>();
  return params;
}

json spec_to_json(const ExperimentSpec& spec) {
  json out;
  out["game"] = config_to_json(spec.game);
  out["ga"] = params_to_json(spec.ga);
  json axes = json::array();
  for (const SweepAxis& axis : spec.sweep)
    axes.push_back({{"parameter", axis.parameter}, {"values", axis.values}});
  out["sweep"] = axes;
  out["seeds"] = spec.seeds;
  out["outputs"] = {{"dir", spec.outputs.directory},
                    {"traces", spec.outputs.write_traces},
                    {"diagnostics", spec.outputs.write_diagnostics}};
  return out;
}

ExperimentSpec spec_from_json(const json& in) {
  ExperimentSpec spec;
  spec.game = config_from_json(in.at("game"));
  spec.ga = params_from_json(in.at("ga"));
  for (const json& axis : in.at("sweep")) {
    SweepAxis parsed;
    parsed.parameter = axis.at("parameter").get<std::string>();
    parsed.values = axis.at("values").get<std::vector<double>>();
    spec.sweep.push_back(std::move(parsed));
  }
  spec.seeds = in.at("seeds").get<std::vector<std::uint64_t>>();
  const json& outputs = in.at("outputs");
  spec.outputs.directory = outputs.at("dir").get<std::string>();
  spec.outputs.write_traces = outputs.at("traces").get<bool>();
  spec.outputs.write_diagnostics = outputs.at("diagnostics").get<bool>();
  return spec;
}

json point_to_json(const std::vector<std::pair<std::string, double>>& point) {
  json out = json::object();
  for (const auto& [name, value] : point) out[name] = value;
  return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string render_trace_csv(const RunTrace& trace) {
  const std::size_t k = trace.config.battlefields;
  std::string out;
  out += "iteration,best_fitness_a,best_fitness_b,versus_diff,versus_utility";
  const auto block = [&](const char* stem) {
    for (std::size_t h = 0; h < k; ++h) out += "," + std::string(stem) + std::to_string(h);
  };
  block("best_a_");
  block("best_b_");
  block("avg_best_a_");
  block("avg_best_b_");
  out += "\n";
  for (const IterationRecord& record : trace.iterations) {
    out += std::to_string(record.iteration);
    out += "," + format_double(record.best_fitness_a);
    out += "," + format_double(record.best_fitness_b);
    out += "," + format_double(record.versus_diff);
    out += "," + format_double(record.versus_utility);
    for (double x : record.best_a.allocations) out += "," + format_double(x);
    for (double x : record.best_b.allocations) out += "," + format_double(x);
    for (double x : record.average_best_a) out += "," + format_double(x);
    for (double x : record.average_best_b) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

json family_to_json(const StrategyFamily& family) {
  json members = json::array();
  for (const Strategy& strategy : family.members) members.push_back(strategy.allocations);
  return members;
}

json diagnostics_json(const RunPlanItem& item, const RunTrace& trace,
                      const std::vector<VersusPoint>& versus) {
  json out;
  out["label"] = item.label;
  out["listed_seed"] = item.listed_seed;
  out["run_seed"] = item.run_seed;
  out["sweep_point"] = point_to_json(item.sweep_point);
  out["config"] = config_to_json(item.config);
  out["ga"] = params_to_json(item.params);
  out["valuations_a"] = trace.valuations_a;
  out["valuations_b"] = trace.valuations_b;
  out["initial_a"] = family_to_json(trace.initial_a);
  out["initial_b"] = family_to_json(trace.initial_b);

  const std::vector<double>& avg_a = trace.final_average_best(Player::A);
  const std::vector<double>& avg_b = trace.final_average_best(Player::B);
  out["final_average_best_a"] = avg_a;
  out["final_average_best_b"] = avg_b;
  if (!trace.iterations.empty()) {
    out["final_best_a"] = trace.iterations.back().best_a.allocations;
    out["final_best_b"] = trace.iterations.back().best_b.allocations;
    out["final_best_fitness_a"] = trace.iterations.back().best_fitness_a;
    out["final_best_fitness_b"] = trace.iterations.back().best_fitness_b;
  }

  const auto exp_fit_json = [](const std::vector<double>& alloc,
                               const ValuationVector& values) -> json {
    try {
      const ExpFit fit = fit_exponential(align_by_valuation(alloc, values));
      return {{"a", fit.amplitude},
              {"b", fit.rate},
              {"residual_sse", fit.residual_sse},
              {"converged", fit.converged}};
    } catch (const std::exception&) {
      return nullptr;
    }
  };
  out["exp_fit_a"] = avg_a.empty() ? json(nullptr) : exp_fit_json(avg_a, trace.valuations_a);
  out["exp_fit_b"] = avg_b.empty() ? json(nullptr) : exp_fit_json(avg_b, trace.valuations_b);

  try {
    out["pearson_average_best"] = pearson(avg_a, avg_b);
  } catch (const std::exception&) {
    out["pearson_average_best"] = nullptr;
  }

  const auto share_json = [](const std::vector<double>& alloc,
                             const ValuationVector& values) -> json {
    try {
      return {{"top_half", concentration_share(alloc, values, 0.5)},
              {"top_tenth", concentration_share(alloc, values, 0.1)}};
    } catch (const std::exception&) {
      return nullptr;
    }
  };
  out["concentration_a"] = avg_a.empty() ? json(nullptr) : share_json(avg_a, trace.valuations_a);
  out["concentration_b"] = avg_b.empty() ? json(nullptr) : share_json(avg_b, trace.valuations_b);

  if (versus.empty()) {
    out["versus_equilibrium"] = nullptr;
  } else {
    json series = json::array();
    for (const VersusPoint& point : versus)
      series.push_back({point.iteration, point.score_diff, point.match_utility});
    out["versus_equilibrium"] = {{"final_diff", versus.back().score_diff},
                                 {"final_utility", versus.back().match_utility},
                                 {"series", std::move(series)}};
  }
  return out;
}

void execute_run(const RunPlanItem& item, const OutputOptions& outputs, const fs::path& out_dir,
                 RunEntry& entry) {
  entry.label = item.label;
  entry.sweep_index = item.sweep_index;
  entry.seed_index = item.seed_index;
  entry.listed_seed = item.listed_seed;
  entry.run_seed = item.run_seed;
  entry.sweep_point = item.sweep_point;

  const auto started = std::chrono::steady_clock::now();
  try {
    RunTrace trace = run(item.config, item.params);

    std::vector<VersusPoint> versus;
    try {
      EquilibriumStrategySpec baseline;
      baseline.kind = EquilibriumKind::DiscreteGrid;
      baseline.budget = item.config.budget(Player::A);
      baseline.grid = trace.valuations_a;
      versus = versus_equilibrium(trace, baseline, Player::A);
    } catch (const std::exception&) {
      versus.clear();  // degenerate grid; trace keeps NaN columns
    }
    for (std::size_t i = 0; i < versus.size(); ++i) {
      trace.iterations[i].versus_diff = versus[i].score_diff;
      trace.iterations[i].versus_utility = versus[i].match_utility;
    }

    if (outputs.write_traces) {
      entry.trace_path = item.label + "_trace.csv";
      const fs::path path = out_dir / entry.trace_path;
      write_text_file(path, render_trace_csv(trace));
      entry.trace_checksum = file_checksum(path.string());
    }
    if (outputs.write_diagnostics) {
      entry.diagnostics_path = item.label + "_diagnostics.json";
      const fs::path path = out_dir / entry.diagnostics_path;
      write_text_file(path, diagnostics_json(item, trace, versus).dump(2) + "\n");
      entry.diagnostics_checksum = file_checksum(path.string());
    }
  } catch (const std::exception& failure) {
    entry.error = failure.what();
  }
  const auto finished = std::chrono::steady_clock::now();
  entry.duration_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();
}

json entry_to_json(const RunEntry& entry) {
  json out;
  out["label"] = entry.label;
  out["sweep_index"] = entry.sweep_index;
  out["seed_index"] = entry.seed_index;
  out["listed_seed"] = entry.listed_seed;
  out["run_seed"] = entry.run_seed;
  out["sweep_point"] = point_to_json(entry.sweep_point);
  out["trace"] = entry.trace_path;
  out["diagnostics"] = entry.diagnostics_path;
  out["trace_checksum"] = entry.trace_checksum;
  out["diagnostics_checksum"] = entry.diagnostics_checksum;
  out["duration_ms"] = entry.duration_ms;
  out["error"] = entry.error;
  return out;
}

RunEntry entry_from_json(const json& in) {
  RunEntry entry;
  entry.label = in.at("label").get<std::string>();
  entry.sweep_index = in.at("sweep_index").get<std::size_t>();
  entry.seed_index = in.at("seed_index").get<std::size_t>();
  entry.listed_seed = in.at("listed_seed").get<std::uint64_t>();
  entry.run_seed = in.at("run_seed").get<std::uint64_t>();
  for (const auto& [name, value] : in.at("sweep_point").items())
    entry.sweep_point.emplace_back(name, value.get<double>());
  entry.trace_path = in.at("trace").get<std::string>();
  entry.diagnostics_path = in.at("diagnostics").get<std::string>();
  entry.trace_checksum = in.at("trace_checksum").get<std::string>();
  entry.diagnostics_checksum = in.at("diagnostics_checksum").get<std::string>();
  entry.duration_ms = in.at("duration_ms").get<double>();
  entry.error = in.at("error").get<std::string>();
  return entry;
}

}  // namespace

// --- execution ---------------------------------------------------------------

RunManifest run_experiments(const ExperimentSpec& spec, std::size_t jobs) {
  const std::vector<RunPlanItem> plan = plan_runs(spec);
  const fs::path out_dir(spec.outputs.directory);
  fs::create_directories(out_dir);

  RunManifest manifest;
  manifest.spec = spec;
  manifest.output_dir = spec.outputs.directory;
  manifest.runs.resize(plan.size());

  const auto started = std::chrono::steady_clock::now();
  if (jobs == 0) jobs = 1;
  jobs = std::min(jobs, std::max<std::size_t>(plan.size(), 1));
  if (jobs <= 1 || plan.size() <= 1) {
    for (std::size_t i = 0; i < plan.size(); ++i)
      execute_run(plan[i], spec.outputs, out_dir, manifest.runs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= plan.size()) return;
          execute_run(plan[i], spec.outputs, out_dir, manifest.runs[i]);
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
  }
  const auto finished = std::chrono::steady_clock::now();
  manifest.total_duration_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();

  json out;
  out["spec"] = spec_to_json(spec);
  out["output_dir"] = manifest.output_dir;
  json runs = json::array();
  for (const RunEntry& entry : manifest.runs) runs.push_back(entry_to_json(entry));
  out["runs"] = std::move(runs);
  out["total_duration_ms"] = manifest.total_duration_ms;
  write_text_file(out_dir / "manifest.json", out.dump(2) + "\n");
  return manifest;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_manifest: cannot open " + path);
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const std::exception& failure) {
    throw std::runtime_error("load_manifest: " + path + ": " + failure.what());
  }
  RunManifest manifest;
  manifest.spec = spec_from_json(parsed.at("spec"));
  // Artifacts are addressed relative to wherever the manifest actually lives.
  manifest.output_dir = fs::path(path).parent_path().string();
  if (manifest.output_dir.empty()) manifest.output_dir = ".";
  for (const json& entry : parsed.at("runs")) manifest.runs.push_back(entry_from_json(entry));
  manifest.total_duration_ms = parsed.at("total_duration_ms").get<double>();
  return manifest;
}

void validate_manifest(const RunManifest& manifest) {
  const fs::path root(manifest.output_dir);
  for (const RunEntry& entry : manifest.runs) {
    if (!entry.error.empty()) continue;
    const auto check = [&](const std::string& rel, const std::string& expected) {
      if (rel.empty()) return;
      const fs::path path = root / rel;
      if (!fs::exists(path))
        throw std::runtime_error("manifest lists a missing file: " + path.string());
      const std::string actual = file_checksum(path.string());
      if (actual != expected)
        throw std::runtime_error("checksum mismatch for " + path.string() + " (expected " +
                                 expected + ", got " + actual + ")");
    };
    check(entry.trace_path, entry.trace_checksum);
    check(entry.diagnostics_path, entry.diagnostics_checksum);
  }
}

}  // namespace blotto
