#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "greedy_lab/graph.hpp"
#include "greedy_lab/random_stream.hpp"
#include "greedy_lab/tie_policy.hpp"

namespace greedy_lab {

struct RemovedEdge {
  Node u = 0;
  Node v = 0;
  std::uint32_t edge_id = 0;
  bool matched = false;
};

// Deletion structure with O(1) edge deletion and O(1) selection of a random
// node of minimum nonzero degree.
//
// Adjacency cells carry a cross-handle to their mirror cell. Nodes live in
// one array S, partitioned into contiguous buckets of equal degree; a doubly
// linked list D holds the nonempty buckets in increasing degree order. The
// degree-0 part of S is a prefix that is not linked into D.
class DynamicGraph {
 public:
  explicit DynamicGraph(const Graph& g);

  std::size_t num_nodes() const { return rec_.size(); }
  std::size_t num_live_edges() const { return live_edges_; }
  bool has_edges() const { return live_edges_ > 0; }

  std::size_t degree(Node x) const { return rec_[x].deg; }
  std::span<const Node> live_neighbors(Node x) const {
    return {nbr_.data() + rec_[x].off, rec_[x].deg};
  }
  // Id of the edge behind live_neighbors(x)[i].
  std::uint32_t live_edge_id(Node x, std::size_t i) const {
    return link_[rec_[x].off + i].eid;
  }
  bool edge_alive(std::uint32_t edge_id) const {
    return slot_[edge_id].cell != kDead;
  }
  const Edge& edge(std::uint32_t edge_id) const { return edges_[edge_id]; }
  bool has_live_edge(Node u, Node v) const;

  // 0 when no edge is left.
  std::size_t min_degree() const;
  // Nodes of the lowest nonzero bucket, in stored order.
  std::span<const Node> min_degree_nodes() const;
  // All nodes with nonzero degree, in stored order.
  std::span<const Node> non_isolated_nodes() const {
    return {s_.data() + zero_end_, s_.size() - zero_end_};
  }
  // (degree, nodes) for every nonempty nonzero bucket, increasing degree.
  std::vector<std::pair<std::size_t, std::vector<Node>>> buckets() const;

  // Throw Error(kEmptyGraph) when no edge is left.
  Node min_degree_node(const TiePolicy& policy, RandomStream& rng) const;
  Node random_node(const TiePolicy& policy, RandomStream& rng) const;
  // Throws Error(kEmptyGraph) when u is isolated.
  Node random_neighbor(Node u, const TiePolicy& policy,
                       RandomStream& rng) const;

  void delete_edge_id(std::uint32_t edge_id);
  // Looks the cell up by scanning the smaller endpoint list, then deletes in
  // O(1). Throws Error(kMissingEdge).
  void delete_edge(Node u, Node v);
  // Deletes every edge at u and v; appends them to out with {u,v} flagged.
  void remove_matched_pair(Node u, Node v, std::vector<RemovedEdge>& out);
  std::vector<RemovedEdge> remove_matched_pair(Node u, Node v);

  // Full structural check; throws std::logic_error describing the first
  // broken invariant.
  void check_invariants() const;

 private:
  static constexpr std::uint32_t kDead = static_cast<std::uint32_t>(-1);
  static constexpr std::uint32_t kNoBucket = static_cast<std::uint32_t>(-1);
  // Set in mirror_ entries of cells on the edge's v side.
  static constexpr std::uint32_t kVSide = std::uint32_t{1} << 31;

  struct Bucket {
    std::uint32_t degree = 0;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t prev = 0;
    std::uint32_t next = 0;
  };

  struct Link {
    std::uint32_t eid = 0;
    std::uint32_t mirror = 0;  // mirror cell, kVSide on the v side
  };

  struct EdgeSlot {
    Node u = 0;
    std::uint32_t cell = kDead;  // cell on the edge's u side
  };

  // Per-node fields kept together so one update touches one cache line.
  struct NodeRecord {
    std::uint32_t off = 0;
    std::uint32_t deg = 0;
    std::uint32_t pos = 0;                // P_S
    std::uint32_t bucket = kNoBucket;     // P_D
  };

  void delete_cell(Node x, std::uint32_t cell);
  void drop_cell(Node x, std::uint32_t cell);
  void move_down(Node x);
  std::uint32_t new_bucket(std::uint32_t degree, std::uint32_t begin,
                           std::uint32_t end);
  std::uint32_t mirror_of(std::uint32_t cell) const { return link_[cell].mirror & ~kVSide; }

  std::vector<Edge> edges_;
  std::vector<NodeRecord> rec_;
  std::vector<Node> nbr_;
  std::vector<Link> link_;
  std::vector<EdgeSlot> slot_;
  std::size_t live_edges_ = 0;

  std::vector<Node> s_;
  std::size_t zero_end_ = 0;
  std::vector<Bucket> buckets_;  // index 0 is the list head sentinel
  std::vector<std::uint32_t> free_buckets_;
};

}  // namespace greedy_lab
