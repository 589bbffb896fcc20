#include "greedy_lab/naive_degree_oracle.hpp"

#include <string>

#include "greedy_lab/error.hpp"

namespace greedy_lab {

NaiveDegreeOracle::NaiveDegreeOracle(const Graph& g)
    : adj_(g.num_nodes()), live_edges_(g.num_edges()) {
  for (const Edge& e : g.edges()) {
    adj_[e.u].insert(e.v);
    adj_[e.v].insert(e.u);
  }
}

std::size_t NaiveDegreeOracle::min_degree() const {
  std::size_t best = 0;
  for (const auto& nb : adj_) {
    if (!nb.empty() && (best == 0 || nb.size() < best)) best = nb.size();
  }
  return best;
}

std::vector<Node> NaiveDegreeOracle::min_degree_nodes() const {
  std::vector<Node> out;
  std::size_t d = min_degree();
  if (d == 0) return out;
  for (Node x = 0; x < adj_.size(); ++x) {
    if (adj_[x].size() == d) out.push_back(x);
  }
  return out;
}

std::vector<Node> NaiveDegreeOracle::live_neighbors(Node x) const {
  return {adj_[x].begin(), adj_[x].end()};
}

Node NaiveDegreeOracle::min_degree_node(const TiePolicy& policy,
                                        RandomStream& rng) const {
  auto nodes = min_degree_nodes();
  if (nodes.empty()) throw Error(ErrorKind::kEmptyGraph, "no edge left");
  return nodes[choose_index(policy, nodes, rng)];
}

void NaiveDegreeOracle::delete_edge(Node u, Node v) {
  if (u >= adj_.size() || v >= adj_.size() || adj_[u].erase(v) == 0) {
    throw Error(ErrorKind::kMissingEdge, "edge " + std::to_string(u) + " " +
                                             std::to_string(v) +
                                             " is not live");
  }
  adj_[v].erase(u);
  --live_edges_;
}

std::vector<RemovedEdge> NaiveDegreeOracle::remove_matched_pair(Node u,
                                                                Node v) {
  if (u >= adj_.size() || !adj_[u].count(v)) {
    throw Error(ErrorKind::kMissingEdge, "edge " + std::to_string(u) + " " +
                                             std::to_string(v) +
                                             " is not live");
  }
  std::vector<RemovedEdge> out;
  for (Node x : {u, v}) {
    std::vector<Node> nb(adj_[x].begin(), adj_[x].end());
    for (Node y : nb) {
      out.push_back({x, y, 0, x == u && y == v});
      delete_edge(x, y);
    }
  }
  return out;
}

}  // namespace greedy_lab
