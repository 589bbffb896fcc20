#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "greedy_lab/error.hpp"
#include "greedy_lab/harness.hpp"

using namespace greedy_lab;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(void (*f)()) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kIo;
}

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_rows_csv(out, rows);
  return out.str();
}

ExperimentConfig small_config() {
  return parse_experiment_config(R"({
    "id": "small",
    "family": "er",
    "grid": {"n": [20, 40], "m": "60"},
    "algorithms": ["greedy", "mingreedy", "karp-sipser"],
    "trials": 4,
    "seed": 11
  })");
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Runs the CLI with the given arguments and returns its exit status.
int cli(const std::string& args) {
  const char* exe = std::getenv("GREEDY_LAB_CLI");
  REQUIRE(exe != nullptr);
  std::string cmd = std::string(exe) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_count") {
  CHECK(parse_count("400") == 400);
  CHECK(parse_count("1e5") == 100000);
  CHECK(parse_count("2.5e3") == 2500);
  CHECK_THROWS_AS(parse_count("-3"), Error);
  CHECK_THROWS_AS(parse_count("1.5"), Error);
  CHECK_THROWS_AS(parse_count("ten"), Error);
}

TEST_CASE("make_instance families") {
  CHECK(make_instance("gab", {{"a", "16"}, {"b", "sqrt"}}, 0).graph.num_nodes() == 40);
  CHECK(make_instance("path", {{"n", "7"}}, 0).optimum->size == 3);
  CHECK(make_instance("cycle", {{"n", "8"}}, 0).optimum->size == 4);
  CHECK(make_instance("er", {{"n", "30"}, {"m", "50"}}, 1).graph.num_edges() == 50);
  CHECK(make_instance("random-regular", {{"n", "1e2"}, {"d", "3"}}, 1).graph.num_edges() == 150);
  CHECK(make_instance("bounded", {{"n", "40"}, {"maxdeg", "3"}, {"m", "50"}}, 1)
            .graph.max_degree() <= 3);
  CHECK(make_instance("fig2", {}, 0).optimum->size == 3);
  CHECK(family_is_random("er"));
  CHECK_FALSE(family_is_random("gab"));
  CHECK(kind_of([] { make_instance("petersen", {}, 0); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { make_instance("er", {{"n", "30"}}, 0); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("config parsing and validation") {
  ExperimentConfig c = small_config();
  CHECK(c.id == "small");
  CHECK(c.grid.at("n") == std::vector<std::string>{"20", "40"});
  CHECK(c.grid.at("m") == std::vector<std::string>{"60"});
  CHECK(c.trials == 4);
  CHECK(grid_cells(c).size() == 2);

  CHECK(kind_of([] { parse_experiment_config("{"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { parse_experiment_config("[]"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { parse_experiment_config(R"({"algorithms": ["greedy"]})"); }) ==
        ErrorKind::kParse);
  CHECK(kind_of([] {
          parse_experiment_config(R"({"family": "er", "algorithms": ["blossom"]})");
        }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] {
          parse_experiment_config(R"({"family": "er", "algorithms": ["greedy"], "trials": 0})");
        }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] {
          parse_experiment_config(
              R"({"family": "er", "algorithms": ["greedy"], "grid": {"n": []}})");
        }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { read_experiment_config("/nonexistent/config.json"); }) == ErrorKind::kIo);
}

TEST_CASE("grid cells are the cartesian product in key order") {
  ExperimentConfig c;
  c.family = "gab";
  c.algorithms = {"greedy"};
  c.grid = {{"a", {"4", "16"}}, {"b", {"2", "4", "sqrt"}}};
  std::vector<ParamMap> cells = grid_cells(c);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0] == ParamMap{{"a", "4"}, {"b", "2"}});
  CHECK(cells[1] == ParamMap{{"a", "4"}, {"b", "4"}});
  CHECK(cells[5] == ParamMap{{"a", "16"}, {"b", "sqrt"}});
}

TEST_CASE("results do not depend on the worker count") {
  ExperimentConfig c = small_config();
  std::vector<ResultRow> one = run_experiment(c, 1);
  std::vector<ResultRow> four = run_experiment(c, 4);
  CHECK(one.size() == 2 * 4 * 3);
  CHECK(csv(one) == csv(four));
  CHECK(csv(one) == csv(run_experiment(c, 1)));
}

TEST_CASE("rows carry exact ratios within [1/2, 1]") {
  ExperimentConfig c = parse_experiment_config(R"({
    "family": "gab", "grid": {"a": [16, 36], "b": "sqrt"},
    "algorithms": ["greedy", "mrg", "mingreedy", "karp-sipser", "edsm", "mds"],
    "trials": 3, "seed": 2
  })");
  for (const ResultRow& r : run_experiment(c, 2)) {
    REQUIRE(r.optimum);
    CHECK(r.ratio != "NA");
    CHECK(r.ratio_value >= 0.5);
    CHECK(r.ratio_value <= 1.0);
    CHECK(r.unmatched == r.nodes - 2 * r.matching_size);
  }
  std::vector<CellSummary> s = summarize(run_experiment(c, 1));
  CHECK(s.size() == 2 * 6);
  for (const CellSummary& x : s) {
    CHECK(x.count == 3);
    CHECK(x.min_ratio <= x.mean_ratio + 1e-12);
    CHECK(x.mean_ratio <= x.max_ratio + 1e-12);
  }
}

TEST_CASE("experiment outputs are written") {
  TempDir dir("greedy_lab_harness_out");
  ExperimentConfig c = small_config();
  std::vector<ResultRow> rows = run_experiment(c, 1);
  std::string base = (dir.path / "small").string();
  write_experiment_outputs(base, rows, true);
  for (const char* ext : {".csv", ".json", ".runtime.csv", ".summary.csv"}) {
    CHECK(fs::exists(base + ext));
  }
  CHECK(fs::exists(base + ".mingreedy.dat"));
  CHECK(read_file(base + ".csv") == csv(rows));
  CHECK(rows_json(rows).find("\"matching\"") != std::string::npos);
  CHECK_THROWS_AS(write_experiment_outputs("/nonexistent/dir/x", rows, false), Error);
}

TEST_CASE("deletion benchmark and doubling factors") {
  std::vector<BenchPoint> pts = bench_deletion("dynamic", {1000, 2000}, 3, 1, 1);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].m == 3000);
  CHECK(pts[1].n == 2000);
  CHECK(doubling_factors(pts).size() == 1);
  CHECK(doubling_factors({{1, 1, 1.0}, {2, 2, 2.0}, {4, 4, 3.0}}) ==
        std::vector<double>{2.0, 1.5});
  CHECK_THROWS_AS(bench_deletion("splay", {10}, 3, 1, 1), Error);
}

TEST_CASE("worker count honours the environment cap") {
  CHECK(worker_count(3) >= 1);
  setenv("GREEDY_LAB_THREADS", "2", 1);
  CHECK(worker_count(8) == 2);
  CHECK(worker_count(1) == 1);
  unsetenv("GREEDY_LAB_THREADS");
}

TEST_CASE("cli exit codes") {
  TempDir dir("greedy_lab_cli_test");
  std::string p6 = (dir.path / "p6").string();
  CHECK(cli("generate --family path --n 6 --out " + p6) == 0);
  CHECK(fs::exists(p6 + ".graph"));

  std::string trace = (dir.path / "t.jsonl").string();
  CHECK(cli("run --instance " + p6 + " --algo mingreedy --trials 1 --trace " + trace) == 0);
  CHECK(cli("certify --instance " + p6 + " --trace " + trace) == 0);

  // A trace that claims the wrong degree is rejected by the certifier.
  std::string text = read_file(trace);
  std::size_t at = text.find("\"degree\":1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 10, "\"degree\":2");
  std::string bad_trace = (dir.path / "bad.jsonl").string();
  write_file(bad_trace, text);
  CHECK(cli("certify --instance " + p6 + " --trace " + bad_trace) == 1);

  std::string bad_config = (dir.path / "bad.json").string();
  write_file(bad_config, R"({"family": "er", "algorithms": ["blossom"]})");
  CHECK(cli("sweep --config " + bad_config) == 2);
  CHECK(cli("run --family nope --algo greedy") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("sweep --config /nonexistent/config.json") == 3);
  CHECK(cli("run --family path --n 6 --algo greedy --out /nonexistent/dir/x") == 3);

  std::string good_config = (dir.path / "good.json").string();
  write_file(good_config, R"({"family": "path", "grid": {"n": [5, 6]},
                              "algorithms": ["mingreedy"], "trials": 2})");
  std::string out = (dir.path / "sweep").string();
  CHECK(cli("sweep --config " + good_config + " --out " + out + " --threads 2") == 0);
  CHECK(fs::exists(out + ".csv"));

  CHECK(cli("game --adversary thm6 --strategy all --delta 4") == 0);
  CHECK(cli("game --adversary hyper --strategy degree-2-first --k 3") == 0);
}
