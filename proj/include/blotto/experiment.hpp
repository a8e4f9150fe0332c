#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blotto/ga.hpp"
#include "blotto/game.hpp"

namespace blotto {

struct SweepAxis {
  std::string parameter;          // alpha | k | n_A | p | mu | T | unit
  std::vector<double> values;
};

struct OutputOptions {
  std::string directory = "out";
  bool write_traces = true;
  bool write_diagnostics = true;
};

struct ExperimentSpec {
  GameConfig game;
  GAParams ga;
  std::vector<SweepAxis> sweep;        // cross product, declaration order
  std::vector<std::uint64_t> seeds;    // defaults to {game.seed} when absent
  OutputOptions outputs;
};

// One scheduled run: the sweep point applied to the base config, with its
// derived per-run seed already planted in config.seed.
struct RunPlanItem {
  std::size_t run_index = 0;
  std::size_t sweep_index = 0;
  std::size_t seed_index = 0;
  std::uint64_t listed_seed = 0;
  std::uint64_t run_seed = 0;
  std::vector<std::pair<std::string, double>> sweep_point;
  GameConfig config;
  GAParams params;
  std::string label;                   // "run_0000" style
};

struct RunEntry {
  std::string label;
  std::size_t sweep_index = 0;
  std::size_t seed_index = 0;
  std::uint64_t listed_seed = 0;
  std::uint64_t run_seed = 0;
  std::vector<std::pair<std::string, double>> sweep_point;
  std::string trace_path;              // relative to the output directory
  std::string diagnostics_path;
  std::string trace_checksum;          // fnv1a-64 hex of the file bytes
  std::string diagnostics_checksum;
  double duration_ms = 0.0;
  std::string error;                   // empty on success
};

struct RunManifest {
  ExperimentSpec spec;
  std::string output_dir;
  std::vector<RunEntry> runs;
  double total_duration_ms = 0.0;

  bool all_succeeded() const;
};

// INI-style grammar with [game], [ga], [sweep], [outputs] sections; errors
// carry "<origin>:<line>:" prefixes.
ExperimentSpec parse_spec(const std::string& path);
ExperimentSpec parse_spec_text(const std::string& text, const std::string& origin = "<spec>");

std::vector<RunPlanItem> plan_runs(const ExperimentSpec& spec);

// Executes the whole plan (optionally across threads), writes per-run trace
// CSV + diagnostics JSON, then the manifest. Deterministic per run seed and
// independent of `jobs`.
RunManifest run_experiments(const ExperimentSpec& spec, std::size_t jobs = 1);

RunManifest load_manifest(const std::string& path);
void validate_manifest(const RunManifest& manifest);  // throws on mismatch

// Writes the figure's CSV series under <output_dir>/figures; returns the
// paths written. Supported ids: 2, 3, 4, 5, 7, 8, 9, 10, 11, 12.
std::vector<std::string> emit_figure_data(const RunManifest& manifest,
                                          const std::string& figure_id);

std::string file_checksum(const std::string& path);  // fnv1a-64 hex

// Stable float formatting (shortest round-trip) shared by all writers.
std::string format_double(double value);

}  // namespace blotto
