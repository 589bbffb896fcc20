#include "greedy_lab/exact.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "greedy_lab/error.hpp"

namespace greedy_lab {

std::string optimum_source_name(OptimumSource source) {
  switch (source) {
    case OptimumSource::kBipartiteSolver: return "bipartite-solver";
    case OptimumSource::kBruteForce: return "brute-force";
    case OptimumSource::kGeneratorCertified: return "generator-certified";
  }
  return "unknown";
}

OptimumSource parse_optimum_source(const std::string& name) {
  if (name == "bipartite-solver") return OptimumSource::kBipartiteSolver;
  if (name == "brute-force") return OptimumSource::kBruteForce;
  if (name == "generator-certified") return OptimumSource::kGeneratorCertified;
  throw Error(ErrorKind::kParse, "unknown optimum source '" + name + "'");
}

namespace {

constexpr std::uint32_t kInf = static_cast<std::uint32_t>(-1);

class HopcroftKarp {
 public:
  HopcroftKarp(const Graph& g, const std::vector<std::uint8_t>& sides)
      : g_(g), sides_(sides), mate_(g.num_nodes(), kNoNode),
        dist_(g.num_nodes()) {
    for (Node x = 0; x < g.num_nodes(); ++x) {
      if (sides_[x] == 0) left_.push_back(x);
    }
  }

  std::vector<Node> solve() {
    while (bfs()) {
      for (Node x : left_) {
        if (mate_[x] == kNoNode) dfs(x);
      }
    }
    return mate_;
  }

 private:
  bool bfs() {
    std::vector<Node> queue;
    for (Node x : left_) {
      if (mate_[x] == kNoNode) {
        dist_[x] = 0;
        queue.push_back(x);
      } else {
        dist_[x] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Node x = queue[head];
      for (Node y : g_.neighbors(x)) {
        Node z = mate_[y];
        if (z == kNoNode) {
          found = true;
        } else if (dist_[z] == kInf) {
          dist_[z] = dist_[x] + 1;
          queue.push_back(z);
        }
      }
    }
    return found;
  }

  bool dfs(Node x) {
    for (Node y : g_.neighbors(x)) {
      Node z = mate_[y];
      if (z == kNoNode || (dist_[z] == dist_[x] + 1 && dfs(z))) {
        mate_[x] = y;
        mate_[y] = x;
        return true;
      }
    }
    dist_[x] = kInf;
    return false;
  }

  const Graph& g_;
  const std::vector<std::uint8_t>& sides_;
  std::vector<Node> left_;
  std::vector<Node> mate_;
  std::vector<std::uint32_t> dist_;
};

// True if some alternating path joins two free nodes.
bool has_augmenting_path(const Graph& g, const std::vector<std::uint8_t>& sides,
                         const std::vector<Node>& mate) {
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<Node> queue;
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (sides[x] == 0 && mate[x] == kNoNode) {
      seen[x] = true;
      queue.push_back(x);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node x = queue[head];
    for (Node y : g.neighbors(x)) {
      if (mate[y] == kNoNode) return true;
      Node z = mate[y];
      if (!seen[z]) {
        seen[z] = true;
        queue.push_back(z);
      }
    }
  }
  return false;
}

class SubsetSearch {
 public:
  // nodes: one connected component in search order (at most 64 nodes).
  SubsetSearch(const Graph& g, const std::vector<Node>& nodes) : nodes_(nodes) {
    std::vector<int> local(g.num_nodes(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
    adj_.assign(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (Node y : g.neighbors(nodes[i])) {
        adj_[i] |= std::uint64_t{1} << local[y];
      }
    }
  }

  std::vector<Edge> solve() {
    std::uint64_t all = nodes_.size() == 64 ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << nodes_.size()) - 1;
    best(all);
    std::vector<Edge> out;
    std::uint64_t mask = all;
    while (mask != 0) {
      int x = std::countr_zero(mask);
      std::uint64_t rest = mask & (mask - 1);
      int target = best(mask);
      if (best(rest) == target) {
        mask = rest;
        continue;
      }
      for (std::uint64_t cand = adj_[x] & rest; cand != 0; cand &= cand - 1) {
        int y = std::countr_zero(cand);
        std::uint64_t next = rest & ~(std::uint64_t{1} << y);
        if (1 + best(next) == target) {
          out.push_back({nodes_[x], nodes_[y]});
          mask = next;
          break;
        }
      }
    }
    return out;
  }

 private:
  int best(std::uint64_t mask) {
    if (mask == 0) return 0;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    int x = std::countr_zero(mask);
    std::uint64_t rest = mask & (mask - 1);
    int value = best(rest);
    int cap = std::popcount(mask) / 2;
    for (std::uint64_t cand = adj_[x] & rest; cand != 0 && value < cap;
         cand &= cand - 1) {
      int y = std::countr_zero(cand);
      value = std::max(value, 1 + best(rest & ~(std::uint64_t{1} << y)));
    }
    memo_.emplace(mask, value);
    return value;
  }

  std::vector<Node> nodes_;
  std::vector<std::uint64_t> adj_;
  std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace

OptimumCertificate max_matching_bipartite(
    const Graph& g, const std::vector<std::uint8_t>& sides) {
  if (sides.size() != g.num_nodes()) {
    throw Error(ErrorKind::kInvalidBipartition, "side vector has wrong length");
  }
  for (const Edge& e : g.edges()) {
    if (sides[e.u] > 1 || sides[e.v] > 1 || sides[e.u] == sides[e.v]) {
      throw Error(ErrorKind::kInvalidBipartition,
                  "edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                      " lies inside one side");
    }
  }
  std::vector<Node> mate = HopcroftKarp(g, sides).solve();
  if (has_augmenting_path(g, sides, mate)) {
    throw std::logic_error("bipartite solver left an augmenting path");
  }
  OptimumCertificate cert;
  cert.source = OptimumSource::kBipartiteSolver;
  cert.witness.emplace();
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (sides[x] == 0 && mate[x] != kNoNode) cert.witness->push_back({x, mate[x]});
  }
  cert.size = cert.witness->size();
  // Konig cover: left nodes not reached by alternating paths from free left
  // nodes, plus right nodes that are reached.
  std::vector<bool> reached(g.num_nodes(), false);
  std::vector<Node> queue;
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if (sides[x] == 0 && mate[x] == kNoNode) {
      reached[x] = true;
      queue.push_back(x);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Node y : g.neighbors(queue[head])) {
      if (reached[y]) continue;
      reached[y] = true;
      Node back = mate[y];
      if (back != kNoNode && !reached[back]) {
        reached[back] = true;
        queue.push_back(back);
      }
    }
  }
  cert.cover.emplace();
  for (Node x = 0; x < g.num_nodes(); ++x) {
    if ((sides[x] == 0) != reached[x]) cert.cover->push_back(x);
  }
  return cert;
}

OptimumCertificate max_matching_bruteforce(const Graph& g) {
  if (g.num_nodes() > kBruteForceMaxNodes && g.num_edges() > kBruteForceMaxEdges) {
    throw Error(ErrorKind::kTooLarge,
                "brute force needs n <= 18 or m <= 24 (n=" +
                    std::to_string(g.num_nodes()) +
                    ", m=" + std::to_string(g.num_edges()) + ")");
  }
  OptimumCertificate cert;
  cert.source = OptimumSource::kBruteForce;
  cert.witness.emplace();
  std::vector<bool> seen(g.num_nodes(), false);
  for (Node s = 0; s < g.num_nodes(); ++s) {
    if (seen[s] || g.degree(s) == 0) continue;
    std::vector<Node> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Node y : g.neighbors(comp[head])) {
        if (!seen[y]) {
          seen[y] = true;
          comp.push_back(y);
        }
      }
    }
    if (comp.size() > 64) {
      throw Error(ErrorKind::kTooLarge, "component with more than 64 nodes");
    }
    for (const Edge& e : SubsetSearch(g, comp).solve()) cert.witness->push_back(e);
  }
  cert.size = cert.witness->size();
  return cert;
}

MatchingReport verify_matching(const Graph& g, const std::vector<Edge>& pairs) {
  MatchingReport report;
  report.size = pairs.size();
  std::vector<bool> covered(g.num_nodes(), false);
  for (const Edge& e : pairs) {
    std::string name = std::to_string(e.u) + " " + std::to_string(e.v);
    if (!g.has_edge(e.u, e.v)) {
      report.problems.push_back("pair " + name + " is not an edge");
      continue;
    }
    if (covered[e.u] || covered[e.v]) {
      report.problems.push_back("pair " + name + " shares a node");
    }
    covered[e.u] = covered[e.v] = true;
  }
  report.valid = report.problems.empty();
  report.maximal = true;
  for (const Edge& e : g.edges()) {
    if (!covered[e.u] && !covered[e.v]) {
      report.maximal = false;
      report.problems.push_back("edge " + std::to_string(e.u) + " " +
                                std::to_string(e.v) + " could be added");
      break;
    }
  }
  return report;
}

void validate_certificate(const Graph& g, const OptimumCertificate& cert) {
  if (cert.witness) {
    MatchingReport r = verify_matching(g, *cert.witness);
    if (!r.valid || r.size != cert.size) {
      throw Error(ErrorKind::kInvalidMatching,
                  "optimum witness invalid or of wrong size");
    }
  }
  if (cert.cover) {
    std::vector<bool> in(g.num_nodes(), false);
    for (Node x : *cert.cover) {
      if (x >= g.num_nodes()) throw Error(ErrorKind::kInvalidMatching, "cover node out of range");
      in[x] = true;
    }
    for (const Edge& e : g.edges()) {
      if (!in[e.u] && !in[e.v]) {
        throw Error(ErrorKind::kInvalidMatching, "cover misses an edge");
      }
    }
    if (cert.cover->size() != cert.size) {
      throw Error(ErrorKind::kInvalidMatching, "cover size differs from optimum");
    }
  }
}

}  // namespace greedy_lab
