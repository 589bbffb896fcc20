#include "greedy_lab/dynamic_graph.hpp"

#include <stdexcept>
#include <string>

#include "greedy_lab/error.hpp"

namespace greedy_lab {

DynamicGraph::DynamicGraph(const Graph& g) : edges_(g.edges()) {
  const std::size_t n = g.num_nodes();
  const std::size_t m = g.num_edges();
  if (n >= kDead || 2 * m >= kVSide) {
    throw Error(ErrorKind::kTooLarge, "graph too large for 32-bit cell indices");
  }
  rec_.resize(n);
  for (Node x = 0; x < n; ++x) {
    rec_[x].off = static_cast<std::uint32_t>(g.offset(x));
    rec_[x].deg = static_cast<std::uint32_t>(g.degree(x));
  }

  nbr_.resize(2 * m);
  link_.resize(2 * m);
  slot_.resize(m);
  for (Node x = 0; x < n; ++x) {
    auto nb = g.neighbors(x);
    auto ids = g.incident_edges(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      std::uint32_t cell = rec_[x].off + static_cast<std::uint32_t>(i);
      nbr_[cell] = nb[i];
      link_[cell].eid = ids[i];
      // The u side is filled first; the v side links both handles.
      if (edges_[ids[i]].u == x) {
        slot_[ids[i]] = {x, cell};
      }
    }
  }
  for (Node x = 0; x < n; ++x) {
    for (std::uint32_t cell = rec_[x].off; cell < rec_[x].off + rec_[x].deg; ++cell) {
      std::uint32_t e = link_[cell].eid;
      if (edges_[e].v == x) {
        std::uint32_t other = slot_[e].cell;
        link_[cell].mirror = other | kVSide;
        link_[other].mirror = cell;
      }
    }
  }
  live_edges_ = m;

  // Counting sort of nodes by degree into S.
  std::uint32_t max_deg = 0;
  for (Node x = 0; x < n; ++x) max_deg = std::max(max_deg, rec_[x].deg);
  std::vector<std::uint32_t> start(max_deg + 2, 0);
  for (Node x = 0; x < n; ++x) ++start[rec_[x].deg + 1];
  for (std::size_t d = 0; d <= max_deg; ++d) start[d + 1] += start[d];
  s_.resize(n);
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (Node x = 0; x < n; ++x) {
    rec_[x].pos = fill[rec_[x].deg];
    s_[fill[rec_[x].deg]++] = x;
  }
  zero_end_ = start[1];

  buckets_.assign(1, Bucket{});  // sentinel
  std::uint32_t tail = 0;
  for (std::uint32_t d = 1; d <= max_deg; ++d) {
    if (start[d] == start[d + 1]) continue;
    std::uint32_t b = new_bucket(d, start[d], start[d + 1]);
    buckets_[b].prev = tail;
    buckets_[tail].next = b;
    tail = b;
    for (std::uint32_t i = start[d]; i < start[d + 1]; ++i) rec_[s_[i]].bucket = b;
  }
  buckets_[tail].next = 0;
  buckets_[0].prev = tail;
}

std::uint32_t DynamicGraph::new_bucket(std::uint32_t degree, std::uint32_t begin,
                                       std::uint32_t end) {
  std::uint32_t b;
  if (!free_buckets_.empty()) {
    b = free_buckets_.back();
    free_buckets_.pop_back();
  } else {
    b = static_cast<std::uint32_t>(buckets_.size());
    buckets_.emplace_back();
  }
  buckets_[b].degree = degree;
  buckets_[b].begin = begin;
  buckets_[b].end = end;
  return b;
}

bool DynamicGraph::has_live_edge(Node u, Node v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  if (rec_[u].deg > rec_[v].deg) std::swap(u, v);
  for (Node y : live_neighbors(u)) {
    if (y == v) return true;
  }
  return false;
}

std::size_t DynamicGraph::min_degree() const {
  std::uint32_t first = buckets_[0].next;
  return first == 0 ? 0 : buckets_[first].degree;
}

std::span<const Node> DynamicGraph::min_degree_nodes() const {
  std::uint32_t first = buckets_[0].next;
  if (first == 0) return {};
  const Bucket& b = buckets_[first];
  return {s_.data() + b.begin, b.end - b.begin};
}

std::vector<std::pair<std::size_t, std::vector<Node>>> DynamicGraph::buckets()
    const {
  std::vector<std::pair<std::size_t, std::vector<Node>>> out;
  for (std::uint32_t b = buckets_[0].next; b != 0; b = buckets_[b].next) {
    out.emplace_back(buckets_[b].degree,
                     std::vector<Node>(s_.begin() + buckets_[b].begin,
                                       s_.begin() + buckets_[b].end));
  }
  return out;
}

Node DynamicGraph::min_degree_node(const TiePolicy& policy,
                                   RandomStream& rng) const {
  auto nodes = min_degree_nodes();
  if (nodes.empty()) throw Error(ErrorKind::kEmptyGraph, "no edge left");
  return nodes[choose_index(policy, nodes, rng)];
}

Node DynamicGraph::random_node(const TiePolicy& policy,
                               RandomStream& rng) const {
  auto nodes = non_isolated_nodes();
  if (nodes.empty()) throw Error(ErrorKind::kEmptyGraph, "no edge left");
  return nodes[choose_index(policy, nodes, rng)];
}

Node DynamicGraph::random_neighbor(Node u, const TiePolicy& policy,
                                   RandomStream& rng) const {
  auto nodes = live_neighbors(u);
  if (nodes.empty()) {
    throw Error(ErrorKind::kEmptyGraph,
                "node " + std::to_string(u) + " is isolated");
  }
  return nodes[choose_index(policy, nodes, rng)];
}

void DynamicGraph::drop_cell(Node x, std::uint32_t cell) {
  NodeRecord& r = rec_[x];
  std::uint32_t last = r.off + r.deg - 1;
  if (cell != last) {
    nbr_[cell] = nbr_[last];
    const Link moved = link_[last];
    link_[cell] = moved;
    std::uint32_t& back = link_[moved.mirror & ~kVSide].mirror;
    // The mirror keeps its own side flag.
    back = cell | (back & kVSide);
    if (!(moved.mirror & kVSide)) slot_[moved.eid].cell = cell;
  }
  --r.deg;
}

void DynamicGraph::move_down(Node x) {
  // rec_[x].deg already holds the new degree.
  NodeRecord& rx = rec_[x];
  const std::uint32_t b = rx.bucket;
  Bucket& bk = buckets_[b];
  const std::uint32_t first = bk.begin;
  const Node w = s_[first];
  const std::uint32_t pos = rx.pos;
  s_[pos] = w;
  rec_[w].pos = pos;
  s_[first] = x;
  rx.pos = first;
  ++bk.begin;

  const std::uint32_t prev = bk.prev;
  if (rx.deg == 0) {
    ++zero_end_;
    rx.bucket = kNoBucket;
  } else if (prev != 0 && buckets_[prev].degree == rx.deg) {
    ++buckets_[prev].end;
    rx.bucket = prev;
  } else {
    std::uint32_t nb = new_bucket(rx.deg, first, first + 1);
    buckets_[nb].prev = prev;
    buckets_[nb].next = b;
    buckets_[prev].next = nb;
    buckets_[b].prev = nb;
    rx.bucket = nb;
  }

  // new_bucket may have reallocated buckets_.
  if (buckets_[b].begin == buckets_[b].end) {
    std::uint32_t p = buckets_[b].prev;
    std::uint32_t q = buckets_[b].next;
    buckets_[p].next = q;
    buckets_[q].prev = p;
    free_buckets_.push_back(b);
  }
}

void DynamicGraph::delete_cell(Node x, std::uint32_t cell) {
  std::uint32_t other = mirror_of(cell);
  Node y = nbr_[cell];
  std::uint32_t e = link_[cell].eid;
  drop_cell(x, cell);
  drop_cell(y, other);
  slot_[e].cell = kDead;
  --live_edges_;
  move_down(x);
  move_down(y);
}

void DynamicGraph::delete_edge_id(std::uint32_t edge_id) {
  if (edge_id >= slot_.size() || slot_[edge_id].cell == kDead) {
    throw Error(ErrorKind::kMissingEdge,
                "edge id " + std::to_string(edge_id) + " is not live");
  }
  const EdgeSlot s = slot_[edge_id];
  delete_cell(s.u, s.cell);
}

void DynamicGraph::delete_edge(Node u, Node v) {
  if (u < num_nodes() && v < num_nodes()) {
    Node x = rec_[u].deg <= rec_[v].deg ? u : v;
    Node y = x == u ? v : u;
    for (std::uint32_t cell = rec_[x].off; cell < rec_[x].off + rec_[x].deg; ++cell) {
      if (nbr_[cell] == y) {
        delete_cell(x, cell);
        return;
      }
    }
  }
  throw Error(ErrorKind::kMissingEdge, "edge " + std::to_string(u) + " " +
                                           std::to_string(v) + " is not live");
}

void DynamicGraph::remove_matched_pair(Node u, Node v,
                                       std::vector<RemovedEdge>& out) {
  if (!has_live_edge(u, v)) {
    throw Error(ErrorKind::kMissingEdge, "edge " + std::to_string(u) + " " +
                                             std::to_string(v) +
                                             " is not live");
  }
  for (Node x : {u, v}) {
    while (rec_[x].deg > 0) {
      std::uint32_t cell = rec_[x].off + rec_[x].deg - 1;
      Node y = nbr_[cell];
      out.push_back({x, y, link_[cell].eid, x == u && y == v});
      delete_cell(x, cell);
    }
  }
}

std::vector<RemovedEdge> DynamicGraph::remove_matched_pair(Node u, Node v) {
  std::vector<RemovedEdge> out;
  remove_matched_pair(u, v, out);
  return out;
}

void DynamicGraph::check_invariants() const {
  auto fail = [](const std::string& what) { throw std::logic_error(what); };
  const std::size_t n = num_nodes();
  std::size_t live_cells = 0;
  for (Node x = 0; x < n; ++x) {
    const NodeRecord& r = rec_[x];
    for (std::uint32_t cell = r.off; cell < r.off + r.deg; ++cell) {
      std::uint32_t other = mirror_of(cell);
      Node y = nbr_[cell];
      if (other < rec_[y].off || other >= rec_[y].off + rec_[y].deg) {
        fail("mirror handle leaves the live part of the neighbor's array");
      }
      if (mirror_of(other) != cell || nbr_[other] != x || link_[other].eid != link_[cell].eid) {
        fail("mirror handle round trip broken at node " + std::to_string(x));
      }
      const std::uint32_t id = link_[cell].eid;
      const Edge& e = edges_[id];
      if (!e.same_pair(Edge{x, y})) fail("cell edge id mismatch");
      const bool v_side = link_[cell].mirror & kVSide;
      if (v_side == (e.u == x)) fail("side flag wrong at node " + std::to_string(x));
      if (slot_[id].u != e.u) fail("edge slot endpoint wrong");
      if (e.u == x && slot_[id].cell != cell) {
        fail("edge-to-cell index stale");
      }
    }
    live_cells += r.deg;
  }
  if (live_cells != 2 * live_edges_) fail("live edge count mismatch");

  for (std::size_t i = 0; i < n; ++i) {
    if (rec_[s_[i]].pos != i) fail("P_S inconsistent");
  }
  for (std::size_t i = 0; i < zero_end_; ++i) {
    if (rec_[s_[i]].deg != 0) fail("nonzero-degree node in the degree-0 prefix");
    if (rec_[s_[i]].bucket != kNoBucket) fail("isolated node has a bucket");
  }
  std::size_t expected_begin = zero_end_;
  std::size_t prev_degree = 0;
  std::uint32_t prev = 0;
  for (std::uint32_t b = buckets_[0].next; b != 0; b = buckets_[b].next) {
    const Bucket& bk = buckets_[b];
    if (bk.prev != prev) fail("bucket list back link broken");
    if (bk.begin != expected_begin) fail("buckets not contiguous");
    if (bk.end <= bk.begin) fail("empty bucket linked");
    if (bk.degree <= prev_degree) fail("bucket degrees not increasing");
    for (std::size_t i = bk.begin; i < bk.end; ++i) {
      if (rec_[s_[i]].deg != bk.degree) fail("node in wrong bucket");
      if (rec_[s_[i]].bucket != b) fail("P_D inconsistent");
    }
    expected_begin = bk.end;
    prev_degree = bk.degree;
    prev = b;
  }
  if (buckets_[0].prev != prev) fail("bucket list tail link broken");
  if (expected_begin != n) fail("buckets do not cover S");
}

}  // namespace greedy_lab
