#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace greedy_lab {

using Node = std::uint32_t;
inline constexpr Node kNoNode = static_cast<Node>(-1);

struct Edge {
  Node u = 0;
  Node v = 0;

  Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
  bool same_pair(const Edge& o) const {
    return (u == o.u && v == o.v) || (u == o.v && v == o.u);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph on nodes 0..n-1. Edges keep the
// orientation and order they were given in; adjacency lists follow edge
// order.
class Graph {
 public:
  Graph() = default;
  // Throws Error(kInvalidGraph) on self-loops, duplicates or bad endpoints.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_[id]; }

  std::span<const Node> neighbors(Node x) const {
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }
  // Edge id of each adjacency cell, parallel to neighbors(x).
  std::span<const std::uint32_t> incident_edges(Node x) const {
    return {adj_edge_.data() + offsets_[x], adj_edge_.data() + offsets_[x + 1]};
  }
  std::size_t degree(Node x) const { return offsets_[x + 1] - offsets_[x]; }
  std::size_t max_degree() const;
  std::size_t offset(Node x) const { return offsets_[x]; }

  bool has_edge(Node u, Node v) const;
  // Edge id of {u,v}, or -1.
  std::int64_t find_edge(Node u, Node v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Node> adj_;
  std::vector<std::uint32_t> adj_edge_;
};

// Text format: `p <n> <m>`, then m lines `e <u> <v>` (0-based); lines
// starting with `c` are comments.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
void write_graph(std::ostream& out, const Graph& g);
std::string graph_to_string(const Graph& g);
Graph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g);

// Two-coloring; empty result when the graph is not bipartite.
std::vector<std::uint8_t> two_coloring(const Graph& g);
bool is_connected(const Graph& g);

}  // namespace greedy_lab
