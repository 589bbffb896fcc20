#include "greedy_lab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "greedy_lab/dynamic_graph.hpp"
#include "greedy_lab/error.hpp"
#include "greedy_lab/matchers.hpp"
#include "greedy_lab/naive_degree_oracle.hpp"
#include "greedy_lab/random_stream.hpp"
#include "greedy_lab/rational.hpp"
#include "json.hpp"

namespace greedy_lab {

using nlohmann::json;

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "not a number: '" + text + "'");
  }
  if (used != text.size() || value < 0 || value != std::floor(value) || value > 1e15) {
    throw Error(ErrorKind::kInvalidArgument, "not a nonnegative integer: '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

namespace {

std::size_t need(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorKind::kInvalidArgument, "missing parameter '" + key + "'");
  }
  return parse_count(it->second);
}

std::string param_string(const ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

bool family_is_random(const std::string& family) {
  return family == "er" || family == "random-regular" || family == "bounded";
}

Instance make_instance(const std::string& family, const ParamMap& params,
                       std::uint64_t seed) {
  if (family == "gab") {
    std::size_t a = need(params, "a");
    auto it = params.find("b");
    std::size_t b = (it != params.end() && it->second == "sqrt") ? ceil_sqrt(a)
                                                                  : need(params, "b");
    return gen_gab(a, b);
  }
  if (family == "gab-bipartite") return gen_gab_bipartite_double(need(params, "a"));
  if (family == "ga2-bipartite") return gen_ga2_bipartite(need(params, "a"));
  if (family == "er") return gen_erdos_renyi(need(params, "n"), need(params, "m"), seed);
  if (family == "random-regular") {
    return gen_random_regular(need(params, "n"), need(params, "d"), seed);
  }
  if (family == "bounded") {
    return gen_random_bounded_degree(need(params, "n"), need(params, "maxdeg"),
                                     need(params, "m"), seed);
  }
  if (family == "path") return gen_path(need(params, "n"));
  if (family == "cycle") return gen_cycle(need(params, "n"));
  if (family == "fig2") return gen_fig2_gadget();
  if (family == "fig3") return gen_fig3_gadget();
  if (family == "file") {
    auto it = params.find("path");
    if (it == params.end()) throw Error(ErrorKind::kInvalidArgument, "missing parameter 'path'");
    return read_instance(it->second);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family '" + family + "'");
}

void validate_config(const ExperimentConfig& c) {
  if (c.family.empty()) throw Error(ErrorKind::kInvalidArgument, "config needs a family");
  if (c.algorithms.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "config needs at least one algorithm");
  }
  if (c.trials == 0) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  for (const auto& [key, values] : c.grid) {
    if (values.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "grid entry '" + key + "' is empty");
    }
  }
  for (const std::string& a : c.algorithms) parse_algorithm(a);
  parse_tie_policy(c.first_tie);
  parse_tie_policy(c.second_tie);
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kParse, "config must be a JSON object");
  ExperimentConfig c;
  try {
    c.id = j.value("id", c.id);
    c.family = j.at("family").get<std::string>();
    if (j.contains("grid")) {
      for (const auto& [key, values] : j.at("grid").items()) {
        std::vector<std::string> list;
        json arr = values.is_array() ? values : json::array({values});
        for (const json& v : arr) {
          list.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        c.grid[key] = std::move(list);
      }
    }
    json algos = j.at("algorithms");
    if (algos.is_string()) algos = json::array({algos});
    for (const json& a : algos) c.algorithms.push_back(a.get<std::string>());
    c.first_tie = j.value("tie", c.first_tie);
    c.second_tie = j.value("mate_tie", c.second_tie);
    c.trials = j.value("trials", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{0});
    c.output = j.value("output", std::string());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("config: ") + e.what());
  }
  validate_config(c);
  return c;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::vector<ParamMap> grid_cells(const ExperimentConfig& config) {
  std::vector<ParamMap> cells{ParamMap{}};
  for (const auto& [key, values] : config.grid) {
    std::vector<ParamMap> next;
    for (const ParamMap& base : cells) {
      for (const std::string& v : values) {
        ParamMap p = base;
        p[key] = v;
        next.push_back(std::move(p));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested != 0 ? requested
                                 : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("GREEDY_LAB_THREADS")) {
    try {
      std::size_t c = parse_count(cap);
      if (c > 0) n = std::min(n, c);
    } catch (const Error&) {
    }
  }
  return std::max<std::size_t>(1, n);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::size_t threads) {
  validate_config(config);
  const std::vector<ParamMap> cells = grid_cells(config);
  std::vector<Algorithm> algorithms;
  for (const std::string& a : config.algorithms) algorithms.push_back(parse_algorithm(a));
  const TiePolicy first = parse_tie_policy(config.first_tie);
  const TiePolicy second = parse_tie_policy(config.second_tie);
  const std::size_t units = cells.size() * config.trials;
  const std::size_t per_unit = algorithms.size();
  std::vector<ResultRow> rows(units * per_unit);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(units);

  auto work = [&] {
    while (true) {
      std::size_t unit = next.fetch_add(1);
      if (unit >= units) return;
      const std::size_t cell = unit / config.trials;
      const std::size_t trial = unit % config.trials;
      try {
        std::uint64_t inst_seed = derive_seed(config.seed, {cell}, trial);
        Instance inst = make_instance(config.family, cells[cell], inst_seed);
        attach_optimum(inst);
        for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
          MatcherConfig mc;
          mc.algorithm = algorithms[ai];
          mc.first = first;
          mc.second = second;
          mc.seed = derive_seed(config.seed, {cell, ai + 1}, trial);
          auto t0 = std::chrono::steady_clock::now();
          MatchResult res = run_matcher(inst.graph, mc);
          auto t1 = std::chrono::steady_clock::now();
          MatchingReport check = verify_matching(inst.graph, res.matching);
          if (!check.valid || !check.maximal) {
            throw Error(ErrorKind::kInvalidMatching,
                        algorithm_name(mc.algorithm) + " produced a bad matching: " +
                            check.problems.front());
          }
          ResultRow& row = rows[unit * per_unit + ai];
          row.experiment = config.id;
          row.family = config.family;
          row.params = param_string(cells[cell]);
          row.cell = cell;
          row.algorithm = algorithm_name(mc.algorithm);
          row.trial = trial;
          row.seed = mc.seed;
          row.nodes = inst.graph.num_nodes();
          row.edges = inst.graph.num_edges();
          row.matching_size = res.matching.size();
          row.unmatched = inst.graph.num_nodes() - 2 * res.matching.size();
          row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          if (inst.optimum) {
            const std::size_t opt = inst.optimum->size;
            row.optimum = opt;
            row.optimum_source = optimum_source_name(inst.optimum->source);
            if (opt == 0) {
              row.ratio = "1/1";
              row.ratio_value = 1.0;
            } else {
              Rational r(static_cast<std::int64_t>(row.matching_size),
                         static_cast<std::int64_t>(opt));
              if (r > Rational(1) || r < Rational(1, 2)) {
                throw Error(ErrorKind::kInvalidMatching,
                            "ratio " + r.to_string() + " outside [1/2, 1]");
              }
              row.ratio = r.to_string();
              row.ratio_value = r.to_double();
            }
          }
        }
      } catch (...) {
        errors[unit] = std::current_exception();
      }
    }
  };

  const std::size_t n_workers = std::min(worker_count(threads), std::max<std::size_t>(1, units));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,family,params,cell,algorithm,trial,seed,nodes,edges,matching,"
         "optimum,optimum_source,ratio,ratio_value,unmatched\n";
  for (const ResultRow& r : rows) {
    out << csv_field(r.experiment) << ',' << csv_field(r.family) << ','
        << csv_field(r.params) << ',' << r.cell << ',' << r.algorithm << ',' << r.trial
        << ',' << r.seed << ',' << r.nodes << ',' << r.edges << ',' << r.matching_size
        << ',' << (r.optimum ? std::to_string(*r.optimum) : "NA") << ','
        << r.optimum_source << ',' << r.ratio << ','
        << (r.optimum ? fixed(r.ratio_value, 9) : "NA") << ',' << r.unmatched << '\n';
  }
}

void write_runtime_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,cell,algorithm,trial,runtime_ms\n";
  for (const ResultRow& r : rows) {
    out << csv_field(r.experiment) << ',' << r.cell << ',' << r.algorithm << ','
        << r.trial << ',' << fixed(r.runtime_ms, 3) << '\n';
  }
}

std::string rows_json(const std::vector<ResultRow>& rows, int indent) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    json j = {{"experiment", r.experiment},
              {"family", r.family},
              {"params", r.params},
              {"cell", r.cell},
              {"algorithm", r.algorithm},
              {"trial", r.trial},
              {"seed", r.seed},
              {"nodes", r.nodes},
              {"edges", r.edges},
              {"matching", r.matching_size},
              {"optimum_source", r.optimum_source},
              {"ratio", r.ratio},
              {"unmatched", r.unmatched}};
    j["optimum"] = r.optimum ? json(*r.optimum) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows) {
  std::vector<CellSummary> out;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  for (const ResultRow& r : rows) {
    auto key = std::make_pair(r.cell, r.algorithm);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      CellSummary s;
      s.params = r.params;
      s.algorithm = r.algorithm;
      s.min_ratio = 1.0;
      s.max_ratio = 0.0;
      out.push_back(s);
    }
    CellSummary& s = out[it->second];
    ++s.count;
    s.mean_unmatched += static_cast<double>(r.unmatched);
    if (r.optimum) {
      ++s.with_optimum;
      s.mean_ratio += r.ratio_value;
      s.min_ratio = std::min(s.min_ratio, r.ratio_value);
      s.max_ratio = std::max(s.max_ratio, r.ratio_value);
    }
  }
  for (CellSummary& s : out) {
    s.mean_unmatched /= static_cast<double>(s.count);
    if (s.with_optimum > 0) {
      s.mean_ratio /= static_cast<double>(s.with_optimum);
    } else {
      s.min_ratio = s.max_ratio = 0.0;
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summary) {
  out << "params,algorithm,trials,with_optimum,mean_ratio,min_ratio,max_ratio,"
         "mean_unmatched\n";
  for (const CellSummary& s : summary) {
    out << csv_field(s.params) << ',' << s.algorithm << ',' << s.count << ','
        << s.with_optimum << ',' << fixed(s.mean_ratio, 6) << ','
        << fixed(s.min_ratio, 6) << ',' << fixed(s.max_ratio, 6) << ','
        << fixed(s.mean_unmatched, 3) << '\n';
  }
}

std::vector<std::string> write_plot_data(const std::string& base,
                                         const std::vector<CellSummary>& summary) {
  std::map<std::string, std::vector<const CellSummary*>> by_algo;
  for (const CellSummary& s : summary) by_algo[s.algorithm].push_back(&s);
  std::vector<std::string> paths;
  for (const auto& [algo, list] : by_algo) {
    std::string path = base + "." + algo + ".dat";
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
    out << "# x=cell y=mean_ratio (" << algo << ")\n";
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << i << ' ' << fixed(list[i]->mean_ratio, 6) << '\n';
    }
    paths.push_back(path);
  }
  return paths;
}

void write_experiment_outputs(const std::string& base, const std::vector<ResultRow>& rows,
                              bool plot_data) {
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
    return out;
  };
  {
    auto out = open(base + ".csv");
    write_rows_csv(out, rows);
  }
  {
    auto out = open(base + ".json");
    out << rows_json(rows, 1) << '\n';
  }
  {
    auto out = open(base + ".runtime.csv");
    write_runtime_csv(out, rows);
  }
  std::vector<CellSummary> summary = summarize(rows);
  {
    auto out = open(base + ".summary.csv");
    write_summary_csv(out, summary);
  }
  if (plot_data) write_plot_data(base, summary);
}

std::vector<BenchPoint> bench_deletion(const std::string& structure,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t edges_per_node, std::uint64_t seed,
                                       std::size_t repetitions) {
  if (structure != "dynamic" && structure != "naive") {
    throw Error(ErrorKind::kInvalidArgument, "unknown structure '" + structure + "'");
  }
  std::vector<BenchPoint> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    Instance inst = gen_erdos_renyi(n, edges_per_node * n, derive_seed(seed, {n}, 0));
    const Graph& g = inst.graph;
    std::vector<std::uint32_t> order(g.num_edges());
    std::iota(order.begin(), order.end(), 0u);
    RandomStream rng(derive_seed(seed, {n}, 1));
    for (std::size_t j = order.size(); j > 1; --j) {
      std::swap(order[j - 1], order[rng.uniform(j)]);
    }
    double best = 1e300;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, repetitions); ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      std::size_t sink = 0;
      if (structure == "dynamic") {
        DynamicGraph dg(g);
        for (std::uint32_t e : order) {
          dg.delete_edge_id(e);
          sink += dg.min_degree();
        }
      } else {
        NaiveDegreeOracle oracle(g);
        for (std::uint32_t e : order) {
          const Edge& ed = g.edges()[e];
          oracle.delete_edge(ed.u, ed.v);
          sink += oracle.min_degree();
        }
      }
      auto t1 = std::chrono::steady_clock::now();
      if (sink == static_cast<std::size_t>(-1)) throw std::logic_error("unreachable");
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    out.push_back({n, g.num_edges(), best});
  }
  return out;
}

std::vector<double> doubling_factors(const std::vector<BenchPoint>& points) {
  std::vector<double> out;
  for (std::size_t i = 1; i < points.size(); ++i) {
    out.push_back(points[i - 1].seconds > 0 ? points[i].seconds / points[i - 1].seconds
                                            : 0.0);
  }
  return out;
}

}  // namespace greedy_lab
