#pragma once

#include <set>
#include <vector>

#include "greedy_lab/dynamic_graph.hpp"
#include "greedy_lab/graph.hpp"

namespace greedy_lab {

// Reference implementation of the DynamicGraph queries by recomputation.
// Only meant for differential tests on small graphs.
class NaiveDegreeOracle {
 public:
  explicit NaiveDegreeOracle(const Graph& g);

  std::size_t degree(Node x) const { return adj_[x].size(); }
  std::size_t min_degree() const;
  // Sorted.
  std::vector<Node> min_degree_nodes() const;
  std::vector<Node> live_neighbors(Node x) const;
  bool has_edges() const { return live_edges_ > 0; }

  // Candidates are presented in increasing id order.
  Node min_degree_node(const TiePolicy& policy, RandomStream& rng) const;

  void delete_edge(Node u, Node v);
  std::vector<RemovedEdge> remove_matched_pair(Node u, Node v);

 private:
  std::vector<std::set<Node>> adj_;
  std::size_t live_edges_ = 0;
};

}  // namespace greedy_lab
