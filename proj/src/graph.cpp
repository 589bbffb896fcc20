#include "greedy_lab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "greedy_lab/error.hpp"

namespace greedy_lab {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ >= kNoNode) throw Error(ErrorKind::kInvalidGraph, "too many nodes");
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(ErrorKind::kInvalidGraph,
                  "endpoint out of range in edge " + std::to_string(e.u) +
                      " " + std::to_string(e.v));
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::kInvalidGraph,
                  "self-loop at node " + std::to_string(e.u));
    }
    Edge k = e.normalized();
    keys.push_back((static_cast<std::uint64_t>(k.u) << 32) | k.v);
  }
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    throw Error(ErrorKind::kInvalidGraph,
                "duplicate edge " + std::to_string(*dup >> 32) + " " +
                    std::to_string(*dup & 0xffffffffULL));
  }

  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adj_.resize(2 * edges_.size());
  adj_edge_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adj_[fill[e.u]] = e.v;
    adj_edge_[fill[e.u]++] = static_cast<std::uint32_t>(id);
    adj_[fill[e.v]] = e.u;
    adj_edge_[fill[e.v]++] = static_cast<std::uint32_t>(id);
  }
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t x = 0; x < n_; ++x) best = std::max(best, degree(x));
  return best;
}

std::int64_t Graph::find_edge(Node u, Node v) const {
  if (u >= n_ || v >= n_) return -1;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto ids = incident_edges(u);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (nb[i] == v) return ids[i];
  }
  return -1;
}

bool Graph::has_edge(Node u, Node v) const { return find_edge(u, v) >= 0; }

Graph parse_graph(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line_no) + ": " + why);
    };
    if (tag == "p") {
      if (have_header) fail("second header");
      long long nn = -1, mm = -1;
      if (!(ls >> nn >> mm) || nn < 0 || mm < 0) fail("bad header");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
      edges.reserve(m);
    } else if (tag == "e") {
      if (!have_header) fail("edge before header");
      long long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("bad edge line");
      edges.push_back({static_cast<Node>(u), static_cast<Node>(v)});
    } else {
      fail("unknown line tag '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing tokens");
  }
  if (!have_header) throw Error(ErrorKind::kParse, "missing header");
  if (edges.size() != m) {
    throw Error(ErrorKind::kParse, "header announces " + std::to_string(m) +
                                       " edges, found " +
                                       std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges));
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return parse_graph(in);
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  write_graph(out, g);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

std::vector<std::uint8_t> two_coloring(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint8_t> color(n, 2);
  std::vector<Node> queue;
  for (Node s = 0; s < n; ++s) {
    if (color[s] != 2) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Node x = queue[head];
      for (Node y : g.neighbors(x)) {
        if (color[y] == 2) {
          color[y] = color[x] ^ 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          return {};
        }
      }
    }
  }
  return color;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<Node> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (Node y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

}  // namespace greedy_lab
