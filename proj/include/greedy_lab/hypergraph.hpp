#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "greedy_lab/graph.hpp"

namespace greedy_lab {

// k-uniform hypergraph; each edge is stored sorted.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Throws Error(kInvalidGraph) for wrong edge sizes, repeated or
  // out-of-range nodes and duplicate edges.
  Hypergraph(std::size_t n, std::size_t k, std::vector<std::vector<Node>> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t uniformity() const { return k_; }
  const std::vector<std::vector<Node>>& edges() const { return edges_; }
  const std::vector<Node>& edge(std::size_t i) const { return edges_[i]; }
  const std::vector<std::size_t>& incident(Node x) const { return incident_[x]; }
  std::size_t degree(Node x) const { return incident_[x].size(); }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::vector<Node>> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

// `p <n> <m> <k>` followed by m lines of k node ids; `c` lines are comments.
Hypergraph parse_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

// The hard instance for greedy priority algorithms. Column i (0 <= i < k)
// holds nodes i*k .. i*k+k-1 forming the white edge e_i, node i*k being its
// e-node; the K = (k-1)(k-2)/2 extra nodes follow from k*k on.
struct HyperGadget {
  std::size_t k = 0;
  Hypergraph graph;
  std::size_t top_edge = 0;                // e = all e-nodes
  std::vector<std::size_t> white_edges;    // e_0 .. e_{k-1}
  std::vector<std::size_t> gray_edges;     // g_0 .. g_{k-2}
  std::vector<std::size_t> black_edges;    // b_0 .. b_{k-2}
  std::vector<Node> e_nodes;               // e-node of e_i
  std::vector<Node> v_nodes;               // v_0 .. v_{k-2}
  std::vector<std::vector<Node>> s_sets;   // S_0 .. S_{k-2}
  std::size_t optimum_size = 0;
};

// Throws Error(kInvalidArgument) for k < 3.
HyperGadget gen_hyper_hard(std::size_t k);

// Violations of: e-nodes of e_0..e_{k-2} have degree 4, all other nodes
// degree 2, edges pairwise share at most one node, e meets every other edge
// in exactly one node, and the S family is a pairwise-intersecting
// 2-cover with |S_i| = k-2.
std::vector<std::string> check_gadget_properties(const HyperGadget& gadget);

// Random-order greedy: edge indices of a maximal disjoint set.
std::vector<std::size_t> hyper_greedy(const Hypergraph& h, std::uint64_t seed);
bool is_hyper_matching(const Hypergraph& h, const std::vector<std::size_t>& picked);
bool is_maximal_hyper_matching(const Hypergraph& h, const std::vector<std::size_t>& picked);

// Exact maximum matching size; throws Error(kTooLarge) above 24 edges.
std::size_t hyper_bruteforce_optimum(const Hypergraph& h);

// A node with its incident edges, each given by its other k-1 nodes.
struct HyperDataItem {
  Node node = 0;
  std::vector<std::vector<Node>> edges;

  friend bool operator==(const HyperDataItem&, const HyperDataItem&) = default;
};

class HyperStrategy {
 public:
  virtual ~HyperStrategy() = default;
  virtual std::string name() const = 0;
  virtual bool greedy() const = 0;
  // Smaller keys first; ties go to the smaller node id.
  virtual std::vector<std::int64_t> priority(const HyperDataItem& item) const = 0;
  // Index into item.edges, or nullopt to isolate.
  virtual std::optional<std::size_t> decide(const HyperDataItem& item) const = 0;
};

// "degree-2-first", "degree-4-first", "lowest-id" (greedy), "isolate" (not).
std::unique_ptr<HyperStrategy> make_hyper_strategy(const std::string& name);
std::vector<std::string> hyper_strategy_names();

struct HyperGameResult {
  Hypergraph graph;                  // final, relabeled instance
  HyperDataItem served;
  std::vector<std::size_t> matching; // edge indices in graph
  std::size_t matching_size = 0;
  std::size_t optimum_size = 0;
  bool consistent = false;           // served item is the true item and was ranked first
  bool maximal = false;
};

// Throws Error(kNonGreedyStrategy) for non-greedy strategies.
HyperGameResult hyper_greedy_priority_game(const HyperStrategy& strategy, std::size_t k);

}  // namespace greedy_lab
