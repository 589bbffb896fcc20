#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "greedy_lab/exact.hpp"
#include "greedy_lab/graph.hpp"
#include "greedy_lab/instances.hpp"

namespace greedy_lab {

// A node together with its full neighbor list, neighbors sorted ascending.
struct DataItem {
  Node node = 0;
  std::vector<Node> neighbors;

  friend bool operator==(const DataItem&, const DataItem&) = default;
};

// What the algorithm has seen so far.
struct GameHistory {
  std::size_t round = 0;
  std::unordered_set<Node> known;
  std::unordered_set<Node> matched;
  std::unordered_set<Node> isolated;

  bool matchable(Node x) const { return !matched.count(x) && !isolated.count(x); }
  // Neighbors that can still be matched.
  std::size_t live_degree(const DataItem& item) const;
  std::size_t known_neighbors(const DataItem& item) const;
};

// Deterministic adaptive priority algorithm. The ordering over data items is
// given by `priority` (smaller keys first); ties go to the smaller node id,
// then to the lexicographically smaller neighbor list.
class PriorityStrategy {
 public:
  virtual ~PriorityStrategy() = default;
  virtual std::string name() const = 0;
  // Greedy strategies must match every node they receive.
  virtual bool greedy() const = 0;
  virtual std::vector<std::int64_t> priority(const DataItem& item,
                                             const GameHistory& history) const = 0;
  // Mate for item.node, or nullopt to isolate it.
  virtual std::optional<Node> decide(const DataItem& item,
                                     const GameHistory& history) const = 0;
};

// True if the strategy ranks a strictly before b.
bool prefers(const PriorityStrategy& strategy, const DataItem& a, const DataItem& b,
             const GameHistory& history);

// Bundled strategies: "min-degree-first", "max-degree-first", "lexicographic",
// "random-order[:seed]", "degree-3-first" (greedy) and "isolate-first",
// "isolate-everything" (non-greedy).
std::unique_ptr<PriorityStrategy> make_strategy(const std::string& name);
std::vector<std::string> strategy_names();
std::vector<std::string> greedy_strategy_names();

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual bool requires_greedy() const { return false; }
  // Items the adversary is willing to serve next; empty ends the game.
  virtual std::vector<DataItem> candidates(const GameHistory& history) = 0;
  // Records the decision on the served item (one of the last candidates).
  // Returns the nodes that lost their last matchable neighbor.
  virtual std::vector<Node> commit(const DataItem& served, std::optional<Node> mate,
                                   const GameHistory& history) = 0;
  // Valid once candidates() came back empty.
  virtual Graph final_graph() const = 0;
  virtual std::optional<OptimumCertificate> optimum() const { return std::nullopt; }
};

// Serves the items of a fixed graph.
std::unique_ptr<Adversary> make_static_adversary(
    Graph g, std::optional<OptimumCertificate> optimum = std::nullopt);
// Offers a degree-2 and a degree-3 item and commits to the six-node gadget
// whose first node has the degree of the served item.
std::unique_ptr<Adversary> make_thm4_adversary();
// Builds a graph of maximum degree delta on which any greedy strategy matches
// delta-1 edges while 2*delta-3 are possible. Needs delta >= 3.
std::unique_ptr<Adversary> make_thm6_adversary(std::size_t delta);

struct GameRound {
  DataItem item;
  std::optional<Node> mate;
  std::vector<std::int64_t> key;  // strategy's key for the served item
  std::vector<Node> isolated_after;
};

struct GameTranscript {
  std::string strategy;
  std::string adversary;
  std::vector<GameRound> rounds;
  Graph final_graph;
  std::vector<Edge> matching;
  std::optional<OptimumCertificate> optimum;
};

// Throws Error(kNonGreedyStrategy) if the adversary needs a greedy strategy,
// Error(kIllegalDecision) for a mate that is not a matchable neighbor or a
// greedy strategy isolating, Error(kInconsistentTranscript) if the adversary
// contradicts itself.
GameTranscript play(const PriorityStrategy& strategy, Adversary& adversary);

struct ConsistencyReport {
  std::vector<std::string> problems;
  std::optional<std::size_t> first_bad_round;
  bool passed() const { return problems.empty(); }
};

// Replays the transcript against its final graph: items match true
// neighborhoods, served nodes were matchable, the matching is valid and no
// matchable node is left. With a strategy, also checks each served item was
// the strategy's favorite among all matchable nodes' items.
ConsistencyReport check_consistency(const GameTranscript& transcript,
                                    const PriorityStrategy* strategy = nullptr);

std::string transcript_json(const GameTranscript& transcript, int indent = -1);

// Plays the strategy against the delta adversary and returns the final graph
// with its optimum certificate. Throws Error(kInconsistentTranscript) if the
// transcript, the degree cap or the certificate fails.
Instance gen_thm6_graph(std::size_t delta, const PriorityStrategy& strategy);

struct YaoStats {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean ratio |M|/3 over uniformly random relabelings of the degree-2 gadget.
// The strategy makes the first decision; the game is then completed
// optimally.
YaoStats yao_expected_ratio(const PriorityStrategy& strategy, std::size_t trials,
                            std::uint64_t seed);

}  // namespace greedy_lab
