#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedy_lab/instances.hpp"

namespace greedy_lab {

using ParamMap = std::map<std::string, std::string>;

// Families: gab (a, b; b may be "sqrt"), gab-bipartite (a), ga2-bipartite (a),
// er (n, m), random-regular (n, d), bounded (n, maxdeg, m), path (n),
// cycle (n), fig2, fig3, file (path). Numbers accept forms like "1e5".
// Throws Error(kInvalidArgument) for unknown families or missing params.
Instance make_instance(const std::string& family, const ParamMap& params,
                       std::uint64_t seed);
bool family_is_random(const std::string& family);

// Nonnegative integer from "400", "1e5" or "2.5e3".
std::size_t parse_count(const std::string& text);

struct ExperimentConfig {
  std::string id = "experiment";
  std::string family;
  // Parameter grid; cells are the cartesian product in key order.
  std::map<std::string, std::vector<std::string>> grid;
  std::vector<std::string> algorithms;
  std::string first_tie = "uniform";
  std::string second_tie = "uniform";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;
};

// JSON object with keys id, family, grid, algorithms, tie, mate_tie, trials,
// seed, output. Throws Error(kParse) or Error(kInvalidArgument).
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig read_experiment_config(const std::string& path);
void validate_config(const ExperimentConfig& config);

// Cartesian product of the grid.
std::vector<ParamMap> grid_cells(const ExperimentConfig& config);

struct ResultRow {
  std::string experiment;
  std::string family;
  std::string params;  // "k=v;k=v"
  std::size_t cell = 0;
  std::string algorithm;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t matching_size = 0;
  std::optional<std::size_t> optimum;
  std::string optimum_source = "unknown";
  std::string ratio = "NA";  // exact p/q when the optimum is known
  double ratio_value = 0.0;
  std::size_t unmatched = 0;  // nodes left uncovered by the matching
  double runtime_ms = 0.0;
};

// Worker count: requested (0 = hardware concurrency), capped by the
// GREEDY_LAB_THREADS environment variable.
std::size_t worker_count(std::size_t requested);

// Runs every (cell, trial, algorithm); instances are shared by the
// algorithms of one (cell, trial). Rows are in cell, trial, algorithm order
// regardless of thread count. Every matching is verified to be valid and
// maximal; Error(kInvalidMatching) otherwise.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      std::size_t threads = 0);

// Deterministic columns only.
void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
// experiment, cell, algorithm, trial, runtime_ms.
void write_runtime_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string rows_json(const std::vector<ResultRow>& rows, int indent = -1);

struct CellSummary {
  std::string params;
  std::string algorithm;
  std::size_t count = 0;
  std::size_t with_optimum = 0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_unmatched = 0.0;
};

std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summary);
// One whitespace-separated "x y" file per algorithm: x = cell index,
// y = mean ratio. Writes <base>.<algorithm>.dat and returns the paths.
std::vector<std::string> write_plot_data(const std::string& base,
                                         const std::vector<CellSummary>& summary);

// Writes <base>.csv, <base>.json, <base>.runtime.csv and <base>.summary.csv.
// Throws Error(kIo) when a file cannot be written.
void write_experiment_outputs(const std::string& base, const std::vector<ResultRow>& rows,
                              bool plot_data);

struct BenchPoint {
  std::size_t n = 0;
  std::size_t m = 0;
  double seconds = 0.0;
};

// Best-of-`repetitions` time to build the degree structure and delete every
// edge in a random order, on a random graph with m = edges_per_node * n.
// structure is "dynamic" or "naive".
std::vector<BenchPoint> bench_deletion(const std::string& structure,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t edges_per_node, std::uint64_t seed,
                                       std::size_t repetitions);
// Runtime ratio between consecutive points.
std::vector<double> doubling_factors(const std::vector<BenchPoint>& points);

}  // namespace greedy_lab
