// greedy-lab: instance generation, matcher runs, certification, priority
// games and benchmarks from the command line.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "greedy_lab/certifier.hpp"
#include "greedy_lab/error.hpp"
#include "greedy_lab/harness.hpp"
#include "greedy_lab/hypergraph.hpp"
#include "greedy_lab/matchers.hpp"
#include "greedy_lab/priority_game.hpp"
#include "greedy_lab/random_stream.hpp"
#include "CLI11.hpp"

using namespace greedy_lab;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kInvalidMatching:
    case ErrorKind::kNotMaximum:
    case ErrorKind::kNotMaximal:
    case ErrorKind::kNonCanonical:
    case ErrorKind::kTraceMismatch:
    case ErrorKind::kInconsistentTranscript:
    case ErrorKind::kIllegalDecision:
      return kExitViolation;
    default:
      return kExitUsage;
  }
}

struct InstanceOptions {
  std::string family;
  std::string instance;
  std::string a, b, n, m, d, maxdeg, path;
  std::uint64_t seed = 0;
};

void add_instance_options(CLI::App* app, InstanceOptions& o) {
  app->add_option("--family", o.family,
                  "gab, gab-bipartite, ga2-bipartite, er, random-regular, bounded, "
                  "path, cycle, fig2, fig3");
  app->add_option("--instance", o.instance, "Instance base path (<base>.graph)");
  app->add_option("--a", o.a, "Size of S1 (gab families)");
  app->add_option("--b", o.b, "Clique size for gab, or 'sqrt'");
  app->add_option("--n", o.n, "Node count");
  app->add_option("--m", o.m, "Edge count");
  app->add_option("--d", o.d, "Degree (random-regular)");
  app->add_option("--maxdeg", o.maxdeg, "Degree cap (bounded)");
  app->add_option("--seed", o.seed, "Master seed");
}

ParamMap instance_params(const InstanceOptions& o) {
  ParamMap p;
  const std::pair<const char*, const std::string*> fields[] = {
      {"a", &o.a}, {"b", &o.b}, {"n", &o.n}, {"m", &o.m}, {"d", &o.d}, {"maxdeg", &o.maxdeg}};
  for (const auto& [key, value] : fields) {
    if (!value->empty()) p[key] = *value;
  }
  if (!o.instance.empty()) p["path"] = o.instance;
  return p;
}

std::string family_of(const InstanceOptions& o) {
  if (!o.instance.empty()) return "file";
  if (o.family.empty()) throw Error(ErrorKind::kInvalidArgument, "need --family or --instance");
  return o.family;
}

Instance load_instance(const InstanceOptions& o) {
  return make_instance(family_of(o), instance_params(o), derive_seed(o.seed, {0}, 0));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  return out;
}

MatcherConfig matcher_config(const std::string& algo, const std::string& tie,
                             const std::string& mate_tie, std::uint64_t seed) {
  MatcherConfig mc;
  if (algo == "mingreedy-det") {
    mc.algorithm = Algorithm::kMinGreedy;
    mc.first = LowestIdTie{};
    mc.second = LowestIdTie{};
  } else {
    mc.algorithm = parse_algorithm(algo);
    mc.first = parse_tie_policy(tie);
    mc.second = parse_tie_policy(mate_tie);
  }
  mc.seed = seed;
  return mc;
}

// ---- generate ------------------------------------------------------------

struct GenerateOptions {
  InstanceOptions inst;
  std::string out;
  bool optimum = false;
};

int cmd_generate(const GenerateOptions& o) {
  Instance inst = load_instance(o.inst);
  if (o.optimum) attach_optimum(inst);
  write_instance(o.out, inst);
  std::cout << "wrote " << o.out << ".graph (n=" << inst.graph.num_nodes()
            << ", m=" << inst.graph.num_edges() << ")";
  if (inst.optimum) std::cout << " optimum=" << inst.optimum->size;
  std::cout << '\n';
  return 0;
}

// ---- run -----------------------------------------------------------------

struct RunOptions {
  InstanceOptions inst;
  std::vector<std::string> algos{"mingreedy"};
  std::size_t trials = 1;
  std::string tie = "uniform";
  std::string mate_tie = "uniform";
  std::string out;
  std::string trace;
  bool plot = false;
  std::size_t threads = 0;
};

int cmd_run(const RunOptions& o) {
  ExperimentConfig c;
  c.id = "run";
  c.family = family_of(o.inst);
  for (const auto& [k, v] : instance_params(o.inst)) c.grid[k] = {v};
  c.algorithms = o.algos;
  c.first_tie = o.tie;
  c.second_tie = o.mate_tie;
  c.trials = o.trials;
  c.seed = o.inst.seed;
  std::vector<ResultRow> rows = run_experiment(c, o.threads);
  if (o.out.empty()) {
    write_rows_csv(std::cout, rows);
  } else {
    write_experiment_outputs(o.out, rows, o.plot);
  }
  write_summary_csv(std::cerr, summarize(rows));
  if (!o.trace.empty()) {
    // Trace of the first row's execution.
    Instance inst = make_instance(c.family, grid_cells(c).front(), derive_seed(c.seed, {0}, 0));
    MatcherConfig mc = matcher_config(o.algos.front(), o.tie, o.mate_tie,
                                      derive_seed(c.seed, {0, 1}, 0));
    MatchResult res = run_matcher(inst.graph, mc);
    auto out = open_out(o.trace);
    write_trace_jsonl(out, res.trace);
  }
  return 0;
}

// ---- certify -------------------------------------------------------------

struct CertifyOptions {
  InstanceOptions inst;
  std::string algo = "mingreedy";
  std::string tie = "uniform";
  bool exhaustive = false;
  std::size_t trials = 1;
  std::size_t limit = 1000000;
  std::string trace;
  std::string mode = "auto";
  std::size_t delta = 0;
  std::string out;
};

bool is_regular(const Graph& g) {
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (g.degree(x) != g.max_degree()) return false;
  }
  return true;
}

int cmd_certify(const CertifyOptions& o) {
  Instance inst = load_instance(o.inst);
  attach_optimum(inst);
  if (!inst.optimum || !inst.optimum->witness) {
    throw Error(ErrorKind::kInvalidArgument, "certify needs an instance with a known optimum");
  }
  validate_certificate(inst.graph, *inst.optimum);
  const Graph& g = inst.graph;
  Matching opt = make_matching(g, *inst.optimum->witness);
  const std::size_t delta = o.delta != 0 ? o.delta : std::max<std::size_t>(3, g.max_degree());
  TransferMode mode;
  if (o.mode == "auto") {
    mode = (delta == 3 || (is_regular(g) && g.max_degree() == delta)) ? TransferMode::kRegular
                                                                      : TransferMode::kIndirect;
  } else {
    mode = parse_transfer_mode(o.mode);
  }

  std::vector<ExecutionTrace> traces;
  if (!o.trace.empty()) {
    std::ifstream in(o.trace);
    if (!in) throw Error(ErrorKind::kIo, "cannot read " + o.trace);
    traces.push_back(read_trace_jsonl(in));
  } else if (o.exhaustive) {
    for (MatchResult& r : enumerate_min_degree_executions(g, o.limit)) {
      traces.push_back(std::move(r.trace));
    }
  } else {
    for (std::size_t t = 0; t < o.trials; ++t) {
      MatcherConfig mc = matcher_config(o.algo, o.tie, o.tie, derive_seed(o.inst.seed, {1}, t));
      traces.push_back(run_matcher(g, mc).trace);
    }
  }

  std::ofstream report_out;
  if (!o.out.empty()) report_out = open_out(o.out);
  std::size_t failed = 0;
  Rational worst(1);
  for (const ExecutionTrace& trace : traces) {
    CertificationResult res = certify_execution(g, trace, opt, mode, delta);
    worst = std::min(worst, res.report.global_ratio);
    if (!res.passed()) {
      ++failed;
      if (failed <= 5) {
        for (const std::string& v : res.all_violations()) std::cerr << "violation: " << v << '\n';
      }
    }
    if (report_out.is_open()) report_out << cert_report_json(res) << '\n';
  }
  std::cout << "executions=" << traces.size() << " mode=" << transfer_mode_name(mode)
            << " delta=" << delta << " target=" << target_ratio(mode, delta).to_string()
            << " worst_ratio=" << worst.to_string() << " failed=" << failed << '\n';
  return failed == 0 ? 0 : kExitViolation;
}

// ---- game ----------------------------------------------------------------

struct GameOptions {
  std::string adversary = "thm4";
  std::string strategy = "all";
  std::size_t delta = 4;
  std::size_t k = 3;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string instance;
  std::string out;
};

int cmd_game(const GameOptions& o) {
  std::ofstream out;
  if (!o.out.empty()) out = open_out(o.out);
  bool ok = true;
  if (o.adversary == "hyper") {
    std::vector<std::string> names = o.strategy == "all" ? hyper_strategy_names()
                                                         : std::vector<std::string>{o.strategy};
    for (const std::string& name : names) {
      auto s = make_hyper_strategy(name);
      HyperGameResult r = hyper_greedy_priority_game(*s, o.k);
      std::cout << name << " k=" << o.k << " matching=" << r.matching_size
                << " optimum=" << r.optimum_size << " consistent=" << r.consistent
                << " maximal=" << r.maximal << '\n';
      ok = ok && r.consistent && r.maximal;
    }
    return ok ? 0 : kExitViolation;
  }
  std::vector<std::string> names;
  if (o.strategy != "all") {
    names = {o.strategy};
  } else if (o.adversary == "thm6") {
    names = greedy_strategy_names();
  } else {
    names = strategy_names();
  }
  for (const std::string& name : names) {
    auto s = make_strategy(name);
    if (o.adversary == "yao") {
      YaoStats st = yao_expected_ratio(*s, o.trials, o.seed);
      std::cout << name << " trials=" << st.trials << " mean_ratio=" << std::fixed
                << std::setprecision(5) << st.mean << " stderr=" << st.std_error << '\n';
      std::cout.unsetf(std::ios::floatfield);
      continue;
    }
    std::unique_ptr<Adversary> adv;
    if (o.adversary == "thm4") {
      adv = make_thm4_adversary();
    } else if (o.adversary == "thm6") {
      adv = make_thm6_adversary(o.delta);
    } else if (o.adversary == "static") {
      if (o.instance.empty()) throw Error(ErrorKind::kInvalidArgument, "static needs --instance");
      Instance inst = read_instance(o.instance);
      adv = make_static_adversary(inst.graph, inst.optimum);
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown adversary '" + o.adversary + "'");
    }
    GameTranscript t = play(*s, *adv);
    ConsistencyReport rep = check_consistency(t, s.get());
    std::cout << name << " matching=" << t.matching.size();
    if (t.optimum) std::cout << " optimum=" << t.optimum->size;
    std::cout << " max_degree=" << t.final_graph.max_degree()
              << " consistent=" << rep.passed() << '\n';
    for (const std::string& p : rep.problems) std::cerr << "  " << p << '\n';
    ok = ok && rep.passed();
    if (out.is_open()) out << transcript_json(t) << '\n';
  }
  return ok ? 0 : kExitViolation;
}

// ---- bench ---------------------------------------------------------------

struct BenchOptions {
  std::string structure = "dynamic";
  std::vector<std::string> sizes{"1e5", "2e5", "4e5"};
  std::size_t edges_per_node = 3;
  std::size_t reps = 3;
  std::uint64_t seed = 1;
  bool check = false;
};

int cmd_bench(const BenchOptions& o) {
  std::vector<std::size_t> sizes;
  for (const std::string& s : o.sizes) sizes.push_back(parse_count(s));
  std::vector<BenchPoint> pts = bench_deletion(o.structure, sizes, o.edges_per_node, o.seed,
                                               o.reps);
  std::vector<double> f = doubling_factors(pts);
  std::cout << "n,m,seconds,factor\n";
  bool ok = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::cout << pts[i].n << ',' << pts[i].m << ',' << std::setprecision(6) << pts[i].seconds
              << ',';
    if (i == 0) {
      std::cout << "NA\n";
    } else {
      std::cout << f[i - 1] << '\n';
      ok = ok && f[i - 1] >= 1.5 && f[i - 1] <= 2.5;
    }
  }
  return (!o.check || ok) ? 0 : kExitViolation;
}

// ---- sweep ---------------------------------------------------------------

struct SweepOptions {
  std::string config;
  std::string out;
  std::size_t threads = 0;
  bool plot = false;
};

int cmd_sweep(const SweepOptions& o) {
  ExperimentConfig c = read_experiment_config(o.config);
  std::string base = o.out.empty() ? c.output : o.out;
  if (base.empty()) throw Error(ErrorKind::kInvalidArgument, "no output path in config or --out");
  std::vector<ResultRow> rows = run_experiment(c, o.threads);
  write_experiment_outputs(base, rows, o.plot);
  write_summary_csv(std::cout, summarize(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy matching experiments: generators, matchers, certifier, priority games"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write an instance to <out>.graph and <out>.meta.json");
  add_instance_options(g, gen.inst);
  g->add_option("--out", gen.out, "Output base path")->required();
  g->add_flag("--with-optimum", gen.optimum, "Attach an exact optimum when cheap");

  RunOptions run;
  auto* r = app.add_subcommand("run", "Run matchers and emit result rows");
  add_instance_options(r, run.inst);
  r->add_option("--algo", run.algos, "greedy, mrg, mingreedy, karp-sipser, edsm, mds")
      ->delimiter(',');
  r->add_option("--trials", run.trials, "Trials per algorithm");
  r->add_option("--tie", run.tie, "First-endpoint tie policy: uniform, lowest-id, index:<i>");
  r->add_option("--mate-tie", run.mate_tie, "Mate tie policy");
  r->add_option("--out", run.out, "Output base path (default: CSV on stdout)");
  r->add_option("--trace", run.trace, "Write the first execution's trace (JSONL)");
  r->add_flag("--emit-plot-data", run.plot, "Write x/y files per algorithm");
  r->add_option("--threads", run.threads, "Worker threads (0 = all cores)");

  CertifyOptions cert;
  auto* c = app.add_subcommand("certify", "Check the charging argument on executions");
  add_instance_options(c, cert.inst);
  c->add_option("--algo", cert.algo, "Matcher, or mingreedy-det for lowest-id ties");
  c->add_option("--tie", cert.tie, "Tie policy for sampled executions");
  c->add_flag("--exhaustive", cert.exhaustive, "All min-degree executions");
  c->add_option("--trials", cert.trials, "Sampled executions");
  c->add_option("--limit", cert.limit, "Maximum number of enumerated executions");
  c->add_option("--trace", cert.trace, "Certify one trace file instead");
  c->add_option("--mode", cert.mode, "auto, regular or indirect");
  c->add_option("--delta", cert.delta, "Degree bound (default: max degree, at least 3)");
  c->add_option("--out", cert.out, "Write one JSON report per execution");

  GameOptions game;
  auto* gm = app.add_subcommand("game", "Play priority strategies against an adversary");
  gm->add_option("--adversary", game.adversary, "thm4, thm6, yao, static or hyper");
  gm->add_option("--strategy", game.strategy, "Strategy name or 'all'");
  gm->add_option("--delta", game.delta, "Degree bound for thm6");
  gm->add_option("--k", game.k, "Uniformity for hyper");
  gm->add_option("--trials", game.trials, "Relabelings for yao");
  gm->add_option("--seed", game.seed, "Seed for yao");
  gm->add_option("--instance", game.instance, "Instance for the static adversary");
  gm->add_option("--out", game.out, "Write transcripts (JSONL)");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Time build plus full edge deletion");
  b->add_option("--structure", bench.structure, "dynamic or naive");
  b->add_option("--n", bench.sizes, "Node counts, e.g. 1e5,2e5,4e5")->delimiter(',');
  b->add_option("--edges-per-node", bench.edges_per_node, "m = this * n");
  b->add_option("--reps", bench.reps, "Repetitions (best is kept)");
  b->add_option("--seed", bench.seed, "Seed");
  b->add_flag("--check", bench.check, "Exit 1 unless every doubling factor is in [1.5, 2.5]");

  SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "Run a JSON experiment config across workers");
  s->add_option("--config", sweep.config, "Config file")->required();
  s->add_option("--out", sweep.out, "Output base path (overrides the config)");
  s->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");
  s->add_flag("--emit-plot-data", sweep.plot, "Write x/y files per algorithm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_run(run);
    if (*c) return cmd_certify(cert);
    if (*gm) return cmd_game(game);
    if (*b) return cmd_bench(bench);
    if (*s) return cmd_sweep(sweep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
