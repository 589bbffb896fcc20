#include "greedy_lab/priority_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "greedy_lab/error.hpp"
#include "greedy_lab/exact.hpp"
#include "greedy_lab/random_stream.hpp"
#include "json.hpp"

namespace greedy_lab {

std::size_t GameHistory::live_degree(const DataItem& item) const {
  std::size_t d = 0;
  for (Node y : item.neighbors) d += matchable(y) ? 1 : 0;
  return d;
}

std::size_t GameHistory::known_neighbors(const DataItem& item) const {
  std::size_t d = 0;
  for (Node y : item.neighbors) d += known.count(y) ? 1 : 0;
  return d;
}

bool prefers(const PriorityStrategy& strategy, const DataItem& a, const DataItem& b,
             const GameHistory& history) {
  std::vector<std::int64_t> ka = strategy.priority(a, history);
  std::vector<std::int64_t> kb = strategy.priority(b, history);
  if (ka != kb) return ka < kb;
  if (a.node != b.node) return a.node < b.node;
  return a.neighbors < b.neighbors;
}

namespace {

void apply_decision(GameHistory& history, const DataItem& item,
                    std::optional<Node> mate) {
  history.known.insert(item.node);
  history.known.insert(item.neighbors.begin(), item.neighbors.end());
  if (mate) {
    history.matched.insert(item.node);
    history.matched.insert(*mate);
  } else {
    history.isolated.insert(item.node);
  }
  ++history.round;
}

}  // namespace

GameTranscript play(const PriorityStrategy& strategy, Adversary& adversary) {
  if (adversary.requires_greedy() && !strategy.greedy()) {
    throw Error(ErrorKind::kNonGreedyStrategy,
                "adversary " + adversary.name() + " needs a greedy strategy, got " +
                    strategy.name());
  }
  GameTranscript transcript;
  transcript.strategy = strategy.name();
  transcript.adversary = adversary.name();
  GameHistory history;
  while (true) {
    std::vector<DataItem> candidates = adversary.candidates(history);
    if (candidates.empty()) break;
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (prefers(strategy, candidates[i], candidates[best], history)) best = i;
    }
    const DataItem& item = candidates[best];
    if (!history.matchable(item.node)) {
      throw Error(ErrorKind::kInconsistentTranscript,
                  "adversary served unmatchable node " + std::to_string(item.node));
    }
    std::optional<Node> mate = strategy.decide(item, history);
    if (!mate && strategy.greedy()) {
      throw Error(ErrorKind::kIllegalDecision,
                  "greedy strategy " + strategy.name() + " isolated a node");
    }
    if (mate && (!std::binary_search(item.neighbors.begin(), item.neighbors.end(), *mate) ||
                 !history.matchable(*mate))) {
      throw Error(ErrorKind::kIllegalDecision,
                  "mate " + std::to_string(*mate) + " is not a matchable neighbor of " +
                      std::to_string(item.node));
    }
    GameRound round;
    round.item = item;
    round.mate = mate;
    round.key = strategy.priority(item, history);
    round.isolated_after = adversary.commit(item, mate, history);
    apply_decision(history, item, mate);
    history.isolated.insert(round.isolated_after.begin(), round.isolated_after.end());
    if (mate) transcript.matching.push_back({item.node, *mate});
    transcript.rounds.push_back(std::move(round));
  }
  transcript.final_graph = adversary.final_graph();
  transcript.optimum = adversary.optimum();
  return transcript;
}

ConsistencyReport check_consistency(const GameTranscript& transcript,
                                    const PriorityStrategy* strategy) {
  ConsistencyReport report;
  const Graph& g = transcript.final_graph;
  auto fail = [&](std::size_t round, const std::string& what) {
    if (!report.first_bad_round) report.first_bad_round = round;
    report.problems.push_back("round " + std::to_string(round) + ": " + what);
  };
  auto true_item = [&](Node x) {
    DataItem item{x, {g.neighbors(x).begin(), g.neighbors(x).end()}};
    std::sort(item.neighbors.begin(), item.neighbors.end());
    return item;
  };
  GameHistory history;
  // Nodes with no neighbors can never be matched.
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (g.degree(x) == 0) history.isolated.insert(x);
  }
  auto isolate_stranded = [&](const std::vector<Node>& touched) {
    std::vector<Node> out;
    for (Node t : touched) {
      if (t >= g.num_nodes()) continue;
      for (Node y : g.neighbors(t)) {
        if (!history.matchable(y)) continue;
        bool stranded = true;
        for (Node z : g.neighbors(y)) {
          if (history.matchable(z)) {
            stranded = false;
            break;
          }
        }
        if (stranded) {
          history.isolated.insert(y);
          out.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (std::size_t r = 0; r < transcript.rounds.size(); ++r) {
    const GameRound& round = transcript.rounds[r];
    const DataItem& item = round.item;
    if (item.node >= g.num_nodes()) {
      fail(r, "node " + std::to_string(item.node) + " is not in the final graph");
      return report;
    }
    if (!history.matchable(item.node)) {
      fail(r, "node " + std::to_string(item.node) + " was not matchable");
    }
    DataItem truth = true_item(item.node);
    if (truth.neighbors != item.neighbors) {
      fail(r, "item of node " + std::to_string(item.node) +
                  " differs from its neighborhood in the final graph");
    }
    if (strategy != nullptr) {
      for (Node y = 0; y < g.num_nodes(); ++y) {
        if (y == item.node || !history.matchable(y)) continue;
        DataItem other = true_item(y);
        if (prefers(*strategy, other, truth, history)) {
          fail(r, "item of node " + std::to_string(y) + " ranks before the served item");
          break;
        }
      }
    }
    std::vector<Node> touched{item.node};
    if (round.mate) {
      Node mate = *round.mate;
      if (mate >= g.num_nodes() || !g.has_edge(item.node, mate) ||
          !history.matchable(mate)) {
        fail(r, "mate " + std::to_string(mate) + " is not a matchable neighbor");
        return report;
      }
      touched.push_back(mate);
    }
    apply_decision(history, item, round.mate);
    std::vector<Node> stranded = isolate_stranded(touched);
    std::vector<Node> claimed = round.isolated_after;
    std::sort(claimed.begin(), claimed.end());
    if (stranded != claimed) fail(r, "isolated nodes differ from the final graph");
  }
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (history.matchable(x)) {
      fail(transcript.rounds.size(),
           "node " + std::to_string(x) + " is still matchable after the game");
      break;
    }
  }
  MatchingReport m = verify_matching(g, transcript.matching);
  if (!m.valid) fail(transcript.rounds.size(), "matching invalid: " + m.problems.front());
  if (transcript.optimum) {
    try {
      validate_certificate(g, *transcript.optimum);
    } catch (const Error& e) {
      fail(transcript.rounds.size(), std::string("optimum certificate: ") + e.what());
    }
  }
  return report;
}

std::string transcript_json(const GameTranscript& t, int indent) {
  using nlohmann::json;
  json rounds = json::array();
  for (const GameRound& r : t.rounds) {
    json item = {{"node", r.item.node}, {"neighbors", r.item.neighbors}};
    rounds.push_back({{"item", item},
                      {"decision", r.mate ? json(*r.mate) : json("isolate")},
                      {"key", r.key},
                      {"isolated_after", r.isolated_after}});
  }
  json edges = json::array();
  for (const Edge& e : t.final_graph.edges()) edges.push_back({e.u, e.v});
  json matching = json::array();
  for (const Edge& e : t.matching) matching.push_back({e.u, e.v});
  json out = {{"strategy", t.strategy},
              {"adversary", t.adversary},
              {"rounds", rounds},
              {"final_graph", {{"n", t.final_graph.num_nodes()}, {"edges", edges}}},
              {"matching", matching},
              {"matching_size", t.matching.size()}};
  if (t.optimum) out["optimum_size"] = t.optimum->size;
  return out.dump(indent);
}

Instance gen_thm6_graph(std::size_t delta, const PriorityStrategy& strategy) {
  auto adversary = make_thm6_adversary(delta);
  GameTranscript t = play(strategy, *adversary);
  ConsistencyReport rep = check_consistency(t, &strategy);
  if (!rep.passed()) throw Error(ErrorKind::kInconsistentTranscript, rep.problems.front());
  if (t.final_graph.max_degree() > delta) {
    throw Error(ErrorKind::kInconsistentTranscript,
                "adversary graph exceeds degree " + std::to_string(delta));
  }
  if (!t.optimum) throw Error(ErrorKind::kInconsistentTranscript, "no optimum certificate");
  validate_certificate(t.final_graph, *t.optimum);
  Instance inst;
  inst.family = "thm6";
  inst.params = {{"delta", std::to_string(delta)}, {"strategy", strategy.name()}};
  inst.graph = t.final_graph;
  inst.optimum = t.optimum;
  return inst;
}

YaoStats yao_expected_ratio(const PriorityStrategy& strategy, std::size_t trials,
                            std::uint64_t seed) {
  YaoStats stats;
  stats.trials = trials;
  if (trials == 0) return stats;
  RandomStream rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::array<Node, 6> labeling{};
  for (std::size_t t = 0; t < trials; ++t) {
    std::iota(labeling.begin(), labeling.end(), Node{0});
    for (std::size_t i = labeling.size() - 1; i > 0; --i) {
      std::swap(labeling[i], labeling[rng.uniform(i + 1)]);
    }
    Instance inst = gen_fig2_gadget(labeling);
    const Graph& g = inst.graph;
    // Only the first decision is the strategy's; the rest of the game is
    // completed optimally.
    auto adversary = make_static_adversary(g, inst.optimum);
    GameHistory history;
    std::vector<DataItem> items = adversary->candidates(history);
    const DataItem* first = &items.front();
    for (const DataItem& item : items) {
      if (prefers(strategy, item, *first, history)) first = &item;
    }
    std::optional<Node> mate = strategy.decide(*first, history);
    if (mate && !g.has_edge(first->node, *mate)) {
      throw Error(ErrorKind::kIllegalDecision, "mate is not a neighbor");
    }
    std::vector<Edge> rest;
    for (const Edge& e : g.edges()) {
      auto gone = [&](Node x) { return x == first->node || (mate && x == *mate); };
      if (!gone(e.u) && !gone(e.v)) rest.push_back(e);
    }
    std::size_t got = max_matching_bruteforce(Graph(g.num_nodes(), rest)).size + (mate ? 1 : 0);
    double ratio = static_cast<double>(got) / static_cast<double>(inst.optimum->size);
    sum += ratio;
    sum_sq += ratio * ratio;
  }
  const double n = static_cast<double>(trials);
  stats.mean = sum / n;
  if (trials > 1) {
    double var = std::max(0.0, (sum_sq - n * stats.mean * stats.mean) / (n - 1.0));
    stats.std_error = std::sqrt(var / n);
  }
  return stats;
}

}  // namespace greedy_lab
