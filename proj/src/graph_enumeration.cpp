#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "greedy_lab/error.hpp"
#include "greedy_lab/instances.hpp"

namespace greedy_lab {

namespace {

constexpr std::size_t kMaxCanonNodes = 11;

// Canonical form by individualization-refinement without automorphism
// pruning; fine for the small graphs enumerated here.
class Canonizer {
 public:
  Canonizer(std::size_t n, const std::vector<std::uint16_t>& adj)
      : n_(n), adj_(adj) {}

  std::uint64_t run() {
    std::vector<int> color(n_, 0);
    refine(color);
    search(color);
    return best_;
  }

 private:
  int refine(std::vector<int>& color) const {
    int cells = 1 + *std::max_element(color.begin(), color.end());
    while (true) {
      std::vector<std::vector<int>> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        sig[v].assign(cells + 1, 0);
        sig[v][0] = color[v];
        for (std::size_t w = 0; w < n_; ++w) {
          if (adj_[v] >> w & 1) ++sig[v][1 + color[w]];
        }
      }
      std::vector<std::vector<int>> distinct = sig;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (std::size_t v = 0; v < n_; ++v) {
        color[v] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
            distinct.begin());
      }
      int next = static_cast<int>(distinct.size());
      if (next == cells) return cells;
      cells = next;
    }
  }

  void search(std::vector<int> color) {
    int cells = refine(color);
    if (static_cast<std::size_t>(cells) == n_) {
      std::vector<std::size_t> at(n_);
      for (std::size_t v = 0; v < n_; ++v) at[color[v]] = v;
      std::uint64_t code = 0;
      int bit = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j, ++bit) {
          if (adj_[at[i]] >> at[j] & 1) code |= std::uint64_t{1} << bit;
        }
      }
      if (!have_ || code < best_) {
        best_ = code;
        have_ = true;
      }
      return;
    }
    std::vector<int> size(cells, 0);
    for (int c : color) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color[v] != target) continue;
      std::vector<int> next(n_);
      for (std::size_t w = 0; w < n_; ++w) {
        next[w] = 2 * color[w] + (color[w] == target && w != v ? 1 : 0);
      }
      search(next);
    }
  }

  std::size_t n_;
  const std::vector<std::uint16_t>& adj_;
  std::uint64_t best_ = 0;
  bool have_ = false;
};

std::vector<std::uint16_t> decode(std::size_t n, std::uint64_t code) {
  std::vector<std::uint16_t> adj(n, 0);
  int bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (code >> bit & 1) {
        adj[i] |= static_cast<std::uint16_t>(1u << j);
        adj[j] |= static_cast<std::uint16_t>(1u << i);
      }
    }
  }
  return adj;
}

Graph to_graph(std::size_t n, const std::vector<std::uint16_t>& adj) {
  std::vector<Edge> edges;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (adj[i] >> j & 1) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxCanonNodes) throw Error(ErrorKind::kTooLarge, "canonical form needs n <= 11");
  if (n == 0) return 0;
  std::vector<std::uint16_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= static_cast<std::uint16_t>(1u << e.v);
    adj[e.v] |= static_cast<std::uint16_t>(1u << e.u);
  }
  return Canonizer(n, adj).run();
}

std::vector<Graph> enumerate_connected_graphs(std::size_t n,
                                              std::size_t max_degree) {
  if (n > kMaxCanonNodes) throw Error(ErrorKind::kTooLarge, "enumeration needs n <= 11");
  std::vector<Graph> out;
  if (n == 0) return out;
  // Level k holds one canonical code per class of graphs with k edges.
  std::vector<std::uint64_t> level{0};
  while (!level.empty()) {
    std::vector<std::uint64_t> next;
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t code : level) {
      std::vector<std::uint16_t> adj = decode(n, code);
      Graph g = to_graph(n, adj);
      if (is_connected(g)) out.push_back(g);
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(__builtin_popcount(adj[i])) >= max_degree) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if ((adj[i] >> j & 1) ||
              static_cast<std::size_t>(__builtin_popcount(adj[j])) >= max_degree) {
            continue;
          }
          std::vector<std::uint16_t> grown = adj;
          grown[i] |= static_cast<std::uint16_t>(1u << j);
          grown[j] |= static_cast<std::uint16_t>(1u << i);
          std::uint64_t c = Canonizer(n, grown).run();
          if (seen.insert(c).second) next.push_back(c);
        }
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace greedy_lab
