#include "greedy_lab/matchers.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "greedy_lab/dynamic_graph.hpp"
#include "greedy_lab/error.hpp"

namespace greedy_lab {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "mrg") return Algorithm::kMrg;
  if (name == "mingreedy") return Algorithm::kMinGreedy;
  if (name == "karp-sipser") return Algorithm::kKarpSipser;
  if (name == "edsm") return Algorithm::kEdsm;
  if (name == "mds") return Algorithm::kMds;
  throw Error(ErrorKind::kInvalidArgument, "unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kMrg: return "mrg";
    case Algorithm::kMinGreedy: return "mingreedy";
    case Algorithm::kKarpSipser: return "karp-sipser";
    case Algorithm::kEdsm: return "edsm";
    case Algorithm::kMds: return "mds";
  }
  return "unknown";
}

bool is_min_degree_algorithm(Algorithm algorithm) {
  return algorithm == Algorithm::kMinGreedy || algorithm == Algorithm::kEdsm;
}

namespace {

class Run {
 public:
  Run(const Graph& g, Algorithm algorithm)
      : dg_(g), result_{Matching(g.num_nodes()), {}} {
    result_.trace.algorithm = algorithm_name(algorithm);
    result_.trace.min_degree_policy = is_min_degree_algorithm(algorithm);
  }

  DynamicGraph& graph() { return dg_; }

  // Returns the edges removed by this step.
  std::span<const RemovedEdge> step(Node u, Node v) {
    ExecutionTrace& t = result_.trace;
    TraceStep st;
    st.first = u;
    st.first_degree = dg_.degree(u);
    st.mate = v;
    st.removed_begin = t.removed.size();
    dg_.remove_matched_pair(u, v, t.removed);
    st.removed_end = t.removed.size();
    t.steps.push_back(st);
    result_.matching.add(u, v);
    return {t.removed.data() + st.removed_begin,
            st.removed_end - st.removed_begin};
  }

  MatchResult take() { return std::move(result_); }

 private:
  DynamicGraph dg_;
  MatchResult result_;
};

// Live edge ids with O(1) uniform pick and swap-delete.
class LiveEdges {
 public:
  explicit LiveEdges(std::size_t m) : ids_(m), pos_(m) {
    for (std::uint32_t e = 0; e < m; ++e) ids_[e] = pos_[e] = e;
  }
  bool empty() const { return ids_.empty(); }
  std::span<const std::uint32_t> ids() const { return ids_; }
  void erase(std::uint32_t e) {
    std::uint32_t p = pos_[e];
    std::uint32_t last = ids_.back();
    ids_[p] = last;
    pos_[last] = p;
    ids_.pop_back();
  }
  void erase_all(std::span<const RemovedEdge> removed) {
    for (const RemovedEdge& r : removed) erase(r.edge_id);
  }

 private:
  std::vector<std::uint32_t> ids_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace

MatchResult run_greedy(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kGreedy);
  RandomStream rng(cfg.seed);
  LiveEdges live(g.num_edges());
  while (!live.empty()) {
    std::uint32_t e = live.ids()[choose_index(cfg.first, live.ids(), rng)];
    live.erase_all(run.step(g.edge(e).u, g.edge(e).v));
  }
  return run.take();
}

MatchResult run_mrg(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kMrg);
  RandomStream rng(cfg.seed);
  DynamicGraph& dg = run.graph();
  while (dg.has_edges()) {
    Node u = dg.random_node(cfg.first, rng);
    Node v = dg.random_neighbor(u, cfg.second, rng);
    run.step(u, v);
  }
  return run.take();
}

MatchResult run_mingreedy(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kMinGreedy);
  RandomStream rng(cfg.seed);
  DynamicGraph& dg = run.graph();
  while (dg.has_edges()) {
    Node u = dg.min_degree_node(cfg.first, rng);
    Node v = dg.random_neighbor(u, cfg.second, rng);
    run.step(u, v);
  }
  return run.take();
}

MatchResult run_karp_sipser(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kKarpSipser);
  RandomStream rng(cfg.seed);
  DynamicGraph& dg = run.graph();
  LiveEdges live(g.num_edges());
  while (dg.has_edges()) {
    Node u, v;
    if (dg.min_degree() == 1) {
      u = dg.min_degree_node(cfg.first, rng);
      v = dg.live_neighbors(u)[0];
    } else {
      std::uint32_t e = live.ids()[choose_index(cfg.first, live.ids(), rng)];
      u = g.edge(e).u;
      v = g.edge(e).v;
    }
    live.erase_all(run.step(u, v));
  }
  return run.take();
}

MatchResult run_edsm(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kEdsm);
  RandomStream rng(cfg.seed);
  DynamicGraph& dg = run.graph();
  std::vector<Node> ties;
  while (dg.has_edges()) {
    Node u = dg.min_degree_node(cfg.first, rng);
    ties.clear();
    std::size_t best = static_cast<std::size_t>(-1);
    for (Node y : dg.live_neighbors(u)) {
      std::size_t d = dg.degree(y);
      if (d < best) {
        best = d;
        ties.clear();
      }
      if (d == best) ties.push_back(y);
    }
    run.step(u, ties[choose_index(cfg.second, ties, rng)]);
  }
  return run.take();
}

MatchResult run_mds(const Graph& g, const MatcherConfig& cfg) {
  Run run(g, Algorithm::kMds);
  RandomStream rng(cfg.seed);
  DynamicGraph& dg = run.graph();
  const bool uniform = std::holds_alternative<UniformTie>(cfg.first);

  // (degree sum, tie key, edge id); stale entries are skipped on pop.
  using Entry = std::tuple<std::size_t, std::uint64_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto sum = [&](std::uint32_t e) {
    return dg.degree(g.edge(e).u) + dg.degree(g.edge(e).v);
  };
  auto push = [&](std::uint32_t e) {
    heap.emplace(sum(e), uniform ? rng() : e, e);
  };
  auto valid = [&](const Entry& en) {
    std::uint32_t e = std::get<2>(en);
    return dg.edge_alive(e) && std::get<0>(en) == sum(e);
  };
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) push(e);

  std::vector<std::uint32_t> touched_stamp(g.num_nodes(), 0);
  std::uint32_t stamp = 0;
  std::vector<Node> touched;
  std::vector<Entry> ties;
  std::vector<std::uint32_t> tie_ids;
  while (dg.has_edges()) {
    while (!valid(heap.top())) heap.pop();
    std::uint32_t chosen;
    if (uniform) {
      chosen = std::get<2>(heap.top());
      heap.pop();
    } else {
      std::size_t best = std::get<0>(heap.top());
      ties.clear();
      while (!heap.empty() && std::get<0>(heap.top()) == best) {
        if (valid(heap.top())) ties.push_back(heap.top());
        heap.pop();
      }
      tie_ids.clear();
      for (const Entry& en : ties) tie_ids.push_back(std::get<2>(en));
      std::size_t pick = choose_index(cfg.first, tie_ids, rng);
      chosen = tie_ids[pick];
      for (std::size_t i = 0; i < ties.size(); ++i) {
        if (i != pick) heap.push(ties[i]);
      }
    }
    Node u = g.edge(chosen).u;
    Node v = g.edge(chosen).v;
    if (dg.degree(v) < dg.degree(u)) std::swap(u, v);

    ++stamp;
    touched.clear();
    for (const RemovedEdge& r : run.step(u, v)) {
      for (Node x : {r.u, r.v}) {
        if (dg.degree(x) > 0 && touched_stamp[x] != stamp) {
          touched_stamp[x] = stamp;
          touched.push_back(x);
        }
      }
    }
    for (Node x : touched) {
      for (std::size_t i = 0; i < dg.degree(x); ++i) push(dg.live_edge_id(x, i));
    }
  }
  return run.take();
}

MatchResult run_matcher(const Graph& g, const MatcherConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kGreedy: return run_greedy(g, cfg);
    case Algorithm::kMrg: return run_mrg(g, cfg);
    case Algorithm::kMinGreedy: return run_mingreedy(g, cfg);
    case Algorithm::kKarpSipser: return run_karp_sipser(g, cfg);
    case Algorithm::kEdsm: return run_edsm(g, cfg);
    case Algorithm::kMds: return run_mds(g, cfg);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown algorithm");
}

namespace {

struct Enumerator {
  const Graph& g;
  std::size_t limit;
  std::vector<MatchResult> out;
  ExecutionTrace trace;

  void visit(const DynamicGraph& dg) {
    if (!dg.has_edges()) {
      if (out.size() == limit) {
        throw Error(ErrorKind::kExplosion,
                    "more than " + std::to_string(limit) + " executions");
      }
      out.push_back({matching_from_trace(g, trace), trace});
      return;
    }
    // One branch per distinct edge at a minimum-degree node.
    std::vector<std::pair<std::uint32_t, Edge>> choices;
    for (Node u : dg.min_degree_nodes()) {
      auto nb = dg.live_neighbors(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        choices.push_back({dg.live_edge_id(u, i), {u, nb[i]}});
      }
    }
    std::sort(choices.begin(), choices.end(),
              [](const auto& a, const auto& b) {
                return std::tie(a.first, a.second.u) <
                       std::tie(b.first, b.second.u);
              });
    std::uint32_t last = static_cast<std::uint32_t>(-1);
    for (const auto& [id, e] : choices) {
      if (id == last) continue;
      last = id;
      DynamicGraph next = dg;
      TraceStep st;
      st.first = e.u;
      st.first_degree = next.degree(e.u);
      st.mate = e.v;
      st.removed_begin = trace.removed.size();
      next.remove_matched_pair(e.u, e.v, trace.removed);
      st.removed_end = trace.removed.size();
      trace.steps.push_back(st);
      visit(next);
      trace.steps.pop_back();
      trace.removed.resize(st.removed_begin);
    }
  }
};

}  // namespace

std::vector<MatchResult> enumerate_min_degree_executions(const Graph& g,
                                                         std::size_t limit) {
  Enumerator en{g, limit, {}, {}};
  en.trace.algorithm = "mingreedy";
  en.trace.min_degree_policy = true;
  en.visit(DynamicGraph(g));
  return std::move(en.out);
}

}  // namespace greedy_lab
