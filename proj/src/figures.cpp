#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "blotto/analysis.hpp"
#include "blotto/equilibrium.hpp"
#include "blotto/experiment.hpp"

namespace blotto {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw std::runtime_error("trace is missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      table.header = cells;
      have_header = true;
      continue;
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const std::string& c : cells) values.push_back(std::strtod(c.c_str(), nullptr));
    table.rows.push_back(std::move(values));
  }
  return table;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

std::vector<const RunEntry*> completed_runs(const RunManifest& manifest) {
  std::vector<const RunEntry*> runs;
  for (const RunEntry& entry : manifest.runs)
    if (entry.error.empty()) runs.push_back(&entry);
  return runs;
}

[[noreturn]] void missing_runs(const std::string& figure, const std::string& requirement) {
  throw std::runtime_error("figure " + figure + " needs " + requirement);
}

fs::path diagnostics_file(const RunManifest& manifest, const RunEntry& entry,
                          const std::string& figure) {
  if (entry.diagnostics_path.empty())
    missing_runs(figure, "diagnostics output (re-run the spec with diagnostics = true)");
  return fs::path(manifest.output_dir) / entry.diagnostics_path;
}

fs::path trace_file(const RunManifest& manifest, const RunEntry& entry,
                    const std::string& figure) {
  if (entry.trace_path.empty())
    missing_runs(figure, "trace output (re-run the spec with traces = true)");
  return fs::path(manifest.output_dir) / entry.trace_path;
}

// Figure 2: discrete equilibrium shares across the evenly spaced grid.
std::vector<std::string> figure_equilibrium_shares(const RunManifest& manifest,
                                                   const fs::path& dir) {
  const std::size_t k = manifest.spec.game.battlefields;
  const ValuationVector grid = evenly_spaced_valuations(k);
  const Strategy eq = discrete_equilibrium(grid, 1.0);
  std::string out = "valuation,share\n";
  for (std::size_t h = 0; h < k; ++h)
    out += format_double(grid[h]) + "," + format_double(eq.allocations[h]) + "\n";
  const fs::path path = dir / "fig02_equilibrium_shares.csv";
  write_file(path, out);
  return {path.string()};
}

// Figure 3: histogram of initial per-battlefield allocations (player A).
std::vector<std::string> figure_initial_histogram(const RunManifest& manifest,
                                                  const fs::path& dir) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs("3", "at least one completed run");
  const json diag = read_json(diagnostics_file(manifest, *runs.front(), "3"));
  std::map<double, std::size_t> counts;
  for (const json& member : diag.at("initial_a"))
    for (const json& allocation : member) counts[allocation.get<double>()] += 1;
  std::string out = "allocation,count\n";
  for (const auto& [allocation, count] : counts)
    out += format_double(allocation) + "," + std::to_string(count) + "\n";
  const fs::path path = dir / ("fig03_initial_histogram_" + runs.front()->label + ".csv");
  write_file(path, out);
  return {path.string()};
}

// Figures 4 and 7: average-best allocation against own valuation at
// logarithmically spaced checkpoints, long format, one file per run.
std::vector<std::string> figure_average_best_checkpoints(const RunManifest& manifest,
                                                         const fs::path& dir,
                                                         const std::string& figure) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs(figure, "at least one completed run");
  std::vector<std::string> written;
  for (const RunEntry* entry : runs) {
    const Table trace = read_csv(trace_file(manifest, *entry, figure));
    if (trace.rows.empty()) missing_runs(figure, "runs with at least one iteration (T >= 1)");
    const json diag = read_json(diagnostics_file(manifest, *entry, figure));
    const auto values_a = diag.at("valuations_a").get<std::vector<double>>();
    const auto values_b = diag.at("valuations_b").get<std::vector<double>>();
    const std::size_t k = values_a.size();

    const std::size_t last = trace.rows.size();
    std::set<std::size_t> checkpoints{last};
    for (std::size_t c = 1; c < last; c *= 10) checkpoints.insert(c);

    std::string out = "iteration,player,valuation,allocation\n";
    for (std::size_t checkpoint : checkpoints) {
      const std::vector<double>& row = trace.rows[checkpoint - 1];
      const std::size_t base_a = trace.column("avg_best_a_0");
      const std::size_t base_b = trace.column("avg_best_b_0");
      const auto emit = [&](const char* player, const std::vector<double>& values,
                            std::size_t base) {
        std::vector<double> alloc(row.begin() + base, row.begin() + base + k);
        for (const auto& [v, x] : align_by_valuation(alloc, values))
          out += std::to_string(checkpoint) + "," + player + "," + format_double(v) + "," +
                 format_double(x) + "\n";
      };
      emit("A", values_a, base_a);
      emit("B", values_b, base_b);
    }
    const fs::path path =
        dir / ("fig" + (figure == "4" ? std::string("04") : std::string("07")) +
               "_average_best_" + entry->label + ".csv");
    write_file(path, out);
    written.push_back(path.string());
  }
  return written;
}

// Figures 5 and 8: utility/score difference against the equilibrium baseline.
std::vector<std::string> figure_versus_series(const RunManifest& manifest, const fs::path& dir,
                                              const std::string& figure) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs(figure, "at least one completed run");
  std::vector<std::string> written;
  for (const RunEntry* entry : runs) {
    const Table trace = read_csv(trace_file(manifest, *entry, figure));
    const std::size_t it = trace.column("iteration");
    const std::size_t diff = trace.column("versus_diff");
    const std::size_t util = trace.column("versus_utility");
    if (trace.rows.empty() || std::isnan(trace.rows.front()[diff]))
      missing_runs(figure, "runs with a versus-equilibrium series (non-degenerate grid)");
    std::string out = "iteration,score_diff,match_utility\n";
    for (const std::vector<double>& row : trace.rows)
      out += format_double(row[it]) + "," + format_double(row[diff]) + "," +
             format_double(row[util]) + "\n";
    const fs::path path =
        dir / ("fig" + (figure == "5" ? std::string("05") : std::string("08")) + "_versus_" +
               entry->label + ".csv");
    write_file(path, out);
    written.push_back(path.string());
  }
  return written;
}

// Figures 9 and 10: player B's final average-best against own valuation with
// the exponential fit, one file per run (alpha in the header comment).
std::vector<std::string> figure_concentration_fit(const RunManifest& manifest,
                                                  const fs::path& dir,
                                                  const std::string& figure) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs(figure, "at least one completed run (alpha sweep spec)");
  std::vector<std::string> written;
  for (const RunEntry* entry : runs) {
    const json diag = read_json(diagnostics_file(manifest, *entry, figure));
    const auto alloc = diag.at("final_average_best_b").get<std::vector<double>>();
    const auto values = diag.at("valuations_b").get<std::vector<double>>();
    if (alloc.empty()) missing_runs(figure, "runs with at least one iteration (T >= 1)");
    const Series series = align_by_valuation(alloc, values);
    const ExpFit fit = fit_exponential(series);

    double alpha = manifest.spec.game.asymmetry;
    for (const auto& [name, value] : entry->sweep_point)
      if (name == "alpha") alpha = value;

    std::string out = "# alpha=" + format_double(alpha) + " a=" + format_double(fit.amplitude) +
                      " b=" + format_double(fit.rate) + "\n";
    out += "valuation,allocation,fit\n";
    for (const auto& [v, x] : series)
      out += format_double(v) + "," + format_double(x) + "," +
             format_double(fit.amplitude * std::exp(fit.rate * v)) + "\n";
    const fs::path path =
        dir / ("fig" + (figure == "9" ? std::string("09") : std::string("10")) +
               "_concentration_" + entry->label + ".csv");
    write_file(path, out);
    written.push_back(path.string());
  }
  return written;
}

// Figure 11: index-aligned average bests (left, with Pearson header) and the
// same allocations against total valuations (right).
std::vector<std::string> figure_correlation(const RunManifest& manifest, const fs::path& dir) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs("11", "at least one completed heterogeneous run");
  const RunEntry* entry = runs.front();
  const json diag = read_json(diagnostics_file(manifest, *entry, "11"));
  const auto avg_a = diag.at("final_average_best_a").get<std::vector<double>>();
  const auto avg_b = diag.at("final_average_best_b").get<std::vector<double>>();
  const auto values_a = diag.at("valuations_a").get<std::vector<double>>();
  const auto values_b = diag.at("valuations_b").get<std::vector<double>>();
  if (avg_a.empty()) missing_runs("11", "runs with at least one iteration (T >= 1)");

  std::string left = "# pearson=" + format_double(pearson(avg_a, avg_b)) + "\n";
  left += "battlefield,avg_best_a,avg_best_b\n";
  for (std::size_t h = 0; h < avg_a.size(); ++h)
    left += std::to_string(h) + "," + format_double(avg_a[h]) + "," + format_double(avg_b[h]) +
            "\n";
  const fs::path left_path = dir / ("fig11_correlation_" + entry->label + ".csv");
  write_file(left_path, left);

  const std::vector<double> totals = total_valuations(values_a, values_b);
  std::vector<std::size_t> order(totals.size());
  for (std::size_t h = 0; h < order.size(); ++h) order[h] = h;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return totals[l] < totals[r]; });
  std::string right = "total_valuation,avg_best_a,avg_best_b\n";
  for (std::size_t h : order)
    right += format_double(totals[h]) + "," + format_double(avg_a[h]) + "," +
             format_double(avg_b[h]) + "\n";
  const fs::path right_path = dir / ("fig11_total_valuation_" + entry->label + ".csv");
  write_file(right_path, right);
  return {left_path.string(), right_path.string()};
}

// Figure 12: allocations against net valuations with the quadratic fit, one
// file per player.
std::vector<std::string> figure_net_valuation(const RunManifest& manifest, const fs::path& dir) {
  const auto runs = completed_runs(manifest);
  if (runs.empty()) missing_runs("12", "at least one completed heterogeneous run");
  const RunEntry* entry = runs.front();
  const json diag = read_json(diagnostics_file(manifest, *entry, "12"));
  const auto avg_a = diag.at("final_average_best_a").get<std::vector<double>>();
  const auto avg_b = diag.at("final_average_best_b").get<std::vector<double>>();
  const auto values_a = diag.at("valuations_a").get<std::vector<double>>();
  const auto values_b = diag.at("valuations_b").get<std::vector<double>>();
  if (avg_a.empty()) missing_runs("12", "runs with at least one iteration (T >= 1)");

  std::vector<std::string> written;
  const auto emit = [&](const char* tag, const std::vector<double>& alloc,
                        const std::vector<double>& own, const std::vector<double>& opp) {
    std::vector<double> net = net_valuations(own, opp);
    Series series;
    for (std::size_t h = 0; h < net.size(); ++h) series.emplace_back(net[h], alloc[h]);
    std::stable_sort(series.begin(), series.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    const QuadFit fit = fit_quadratic(series);
    std::string out = "# c0=" + format_double(fit.c0) + " c1=" + format_double(fit.c1) +
                      " c2=" + format_double(fit.c2) + "\n";
    out += "net_valuation,allocation,fit\n";
    for (const auto& [w, x] : series)
      out += format_double(w) + "," + format_double(x) + "," +
             format_double(fit.c0 + fit.c1 * w + fit.c2 * w * w) + "\n";
    const fs::path path =
        dir / ("fig12_net_valuation_" + std::string(tag) + "_" + entry->label + ".csv");
    write_file(path, out);
    written.push_back(path.string());
  };
  emit("a", avg_a, values_a, values_b);
  emit("b", avg_b, values_b, values_a);
  return written;
}

}  // namespace

std::vector<std::string> emit_figure_data(const RunManifest& manifest,
                                          const std::string& figure_id) {
  const fs::path dir = fs::path(manifest.output_dir) / "figures";
  fs::create_directories(dir);

  if (figure_id == "2") return figure_equilibrium_shares(manifest, dir);
  if (figure_id == "3") return figure_initial_histogram(manifest, dir);
  if (figure_id == "4" || figure_id == "7")
    return figure_average_best_checkpoints(manifest, dir, figure_id);
  if (figure_id == "5" || figure_id == "8")
    return figure_versus_series(manifest, dir, figure_id);
  if (figure_id == "9" || figure_id == "10")
    return figure_concentration_fit(manifest, dir, figure_id);
  if (figure_id == "11") return figure_correlation(manifest, dir);
  if (figure_id == "12") return figure_net_valuation(manifest, dir);
  throw std::invalid_argument("unsupported figure id '" + figure_id +
                              "' (supported: 2, 3, 4, 5, 7, 8, 9, 10, 11, 12)");
}

}  // namespace blotto
