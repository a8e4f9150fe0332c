#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "blotto/experiment.hpp"

namespace {

int cmd_run(const std::string& spec_path, const std::string& out_override, std::size_t jobs) {
  blotto::ExperimentSpec spec = blotto::parse_spec(spec_path);
  if (!out_override.empty()) {
    spec.outputs.directory = out_override;
  } else if (const char* env = std::getenv("BLOTTO_OUT_DIR"); env != nullptr && *env != '\0') {
    spec.outputs.directory = env;
  }

  const blotto::RunManifest manifest = blotto::run_experiments(spec, jobs);
  std::size_t failed = 0;
  for (const blotto::RunEntry& entry : manifest.runs) {
    if (entry.error.empty()) continue;
    ++failed;
    std::cerr << entry.label << ": " << entry.error << "\n";
  }
  std::cout << manifest.runs.size() << " run(s), " << failed << " failed, outputs in "
            << manifest.output_dir << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_figure(const std::string& manifest_path, const std::string& figure_id) {
  const blotto::RunManifest manifest = blotto::load_manifest(manifest_path);
  blotto::validate_manifest(manifest);
  for (const std::string& path : blotto::emit_figure_data(manifest, figure_id))
    std::cout << path << "\n";
  return 0;
}

int cmd_validate(const std::string& spec_path) {
  const blotto::ExperimentSpec spec = blotto::parse_spec(spec_path);
  const auto plan = blotto::plan_runs(spec);
  std::cout << "ok: " << plan.size() << " run(s) over " << spec.seeds.size() << " seed(s), k="
            << spec.game.battlefields << ", n_A=" << blotto::format_double(spec.game.budget_a)
            << ", alpha=" << blotto::format_double(spec.game.asymmetry)
            << ", p=" << spec.ga.population_size << ", T=" << spec.ga.iterations
            << ", mu=" << blotto::format_double(spec.ga.mutation_rate_for(spec.game.battlefields))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colonel Blotto learning experiments"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_override;
  std::size_t jobs = 1;
  CLI::App* run = app.add_subcommand("run", "execute an experiment spec");
  run->add_option("spec", spec_path, "experiment spec file")->required();
  run->add_option("--out", out_override, "output directory (overrides spec and BLOTTO_OUT_DIR)");
  run->add_option("--jobs", jobs, "worker threads across independent runs")
      ->check(CLI::PositiveNumber);

  std::string manifest_path;
  std::string figure_id;
  CLI::App* figure = app.add_subcommand("figure", "emit plot-ready series for a study figure");
  figure->add_option("manifest", manifest_path, "manifest.json from a previous run")->required();
  figure->add_option("figure-id", figure_id, "figure id (2-12)")->required();

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "parse and check a spec without running");
  validate->add_option("spec", validate_path, "experiment spec file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(spec_path, out_override, jobs);
    if (figure->parsed()) return cmd_figure(manifest_path, figure_id);
    return cmd_validate(validate_path);
  } catch (const std::exception& failure) {
    std::cerr << "error: " << failure.what() << "\n";
    return 1;
  }
}
