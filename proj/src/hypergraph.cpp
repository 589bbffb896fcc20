#include "greedy_lab/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "greedy_lab/error.hpp"
#include "greedy_lab/random_stream.hpp"

namespace greedy_lab {

Hypergraph::Hypergraph(std::size_t n, std::size_t k, std::vector<std::vector<Node>> edges)
    : n_(n), k_(k), edges_(std::move(edges)), incident_(n) {
  if (k == 0) throw Error(ErrorKind::kInvalidGraph, "uniformity must be positive");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.size() != k) {
      throw Error(ErrorKind::kInvalidGraph, "edge " + std::to_string(i) + " has " +
                                                std::to_string(e.size()) + " nodes, not " +
                                                std::to_string(k));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw Error(ErrorKind::kInvalidGraph, "edge " + std::to_string(i) + " repeats a node");
    }
    if (e.back() >= n) {
      throw Error(ErrorKind::kInvalidGraph, "edge " + std::to_string(i) + " has node " +
                                                std::to_string(e.back()) + " out of range");
    }
    for (Node x : e) incident_[x].push_back(i);
  }
  std::vector<std::vector<Node>> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::kInvalidGraph, "duplicate edge");
  }
}

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0, k = 0;
  std::vector<std::vector<Node>> edges;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (have_header) fail("second header");
      long long nn = -1, mm = -1, kk = -1;
      if (!(ls >> nn >> mm >> kk) || nn < 0 || mm < 0 || kk <= 0) fail("bad header");
      std::string extra;
      if (ls >> extra) fail("trailing tokens in header");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      k = static_cast<std::size_t>(kk);
      have_header = true;
      continue;
    }
    if (!have_header) fail("edge before header");
    std::vector<Node> e;
    std::istringstream es(line);
    long long x;
    while (es >> x) {
      if (x < 0 || static_cast<std::size_t>(x) >= n) fail("node id out of range");
      e.push_back(static_cast<Node>(x));
    }
    if (!es.eof()) fail("non-numeric token");
    if (e.size() != k) fail("edge needs " + std::to_string(k) + " nodes");
    edges.push_back(std::move(e));
  }
  if (!have_header) throw Error(ErrorKind::kParse, "missing header");
  if (edges.size() != m) {
    throw Error(ErrorKind::kParse, "header announces " + std::to_string(m) +
                                       " edges, found " + std::to_string(edges.size()));
  }
  return Hypergraph(n, k, std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "p " << h.num_nodes() << ' ' << h.num_edges() << ' ' << h.uniformity() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

HyperGadget gen_hyper_hard(std::size_t k) {
  if (k < 3) throw Error(ErrorKind::kInvalidArgument, "gadget needs k >= 3");
  HyperGadget g;
  g.k = k;
  const std::size_t big_k = (k - 1) * (k - 2) / 2;
  const std::size_t n = k * k + big_k;
  auto node = [k](std::size_t col, std::size_t row) { return static_cast<Node>(col * k + row); };
  std::vector<std::vector<Node>> edges;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Node> e;
    for (std::size_t r = 0; r < k; ++r) e.push_back(node(i, r));
    g.white_edges.push_back(edges.size());
    edges.push_back(e);
    g.e_nodes.push_back(node(i, 0));
  }
  g.top_edge = edges.size();
  edges.push_back(g.e_nodes);
  // Gray edges take the lowest uncovered non-e-node of every other column.
  std::vector<std::size_t> next_row(k, 1);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::vector<Node> e{node(i, 0)};
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) e.push_back(node(j, next_row[j]++));
    }
    g.gray_edges.push_back(edges.size());
    edges.push_back(e);
  }
  for (std::size_t j = 0; j + 1 < k; ++j) g.v_nodes.push_back(node(j, next_row[j]));
  // S_i holds the new node of every pair {i, j}; pairs numbered in
  // lexicographic order.
  g.s_sets.assign(k - 1, {});
  Node fresh = static_cast<Node>(k * k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = i + 1; j + 1 < k; ++j) {
      g.s_sets[i].push_back(fresh);
      g.s_sets[j].push_back(fresh);
      ++fresh;
    }
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::vector<Node> e{g.v_nodes[i], g.e_nodes[(i + 1) % (k - 1)]};
    e.insert(e.end(), g.s_sets[i].begin(), g.s_sets[i].end());
    g.black_edges.push_back(edges.size());
    edges.push_back(e);
  }
  g.graph = Hypergraph(n, k, std::move(edges));
  g.optimum_size = k;
  return g;
}

namespace {

std::size_t common_nodes(const std::vector<Node>& a, const std::vector<Node>& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

}  // namespace

std::vector<std::string> check_gadget_properties(const HyperGadget& g) {
  std::vector<std::string> out;
  const Hypergraph& h = g.graph;
  const std::size_t k = g.k;
  std::vector<bool> high(h.num_nodes(), false);
  for (std::size_t i = 0; i + 1 < k; ++i) high[g.e_nodes[i]] = true;
  for (Node x = 0; x < h.num_nodes(); ++x) {
    std::size_t want = high[x] ? 4 : 2;
    if (h.degree(x) != want) {
      out.push_back("node " + std::to_string(x) + " has degree " +
                    std::to_string(h.degree(x)) + ", expected " + std::to_string(want));
    }
  }
  for (std::size_t a = 0; a < h.num_edges(); ++a) {
    for (std::size_t b = a + 1; b < h.num_edges(); ++b) {
      std::size_t c = common_nodes(h.edge(a), h.edge(b));
      if (c > 1) {
        out.push_back("edges " + std::to_string(a) + " and " + std::to_string(b) +
                      " share " + std::to_string(c) + " nodes");
      }
    }
    if (a != g.top_edge && common_nodes(h.edge(a), h.edge(g.top_edge)) != 1) {
      out.push_back("edge " + std::to_string(a) + " does not meet e in exactly one node");
    }
  }
  const std::size_t big_k = (k - 1) * (k - 2) / 2;
  std::vector<std::size_t> occurrences(h.num_nodes(), 0);
  for (std::size_t i = 0; i < g.s_sets.size(); ++i) {
    if (g.s_sets[i].size() != k - 2) out.push_back("S_" + std::to_string(i) + " has wrong size");
    for (Node x : g.s_sets[i]) ++occurrences[x];
    for (std::size_t j = i + 1; j < g.s_sets.size(); ++j) {
      if (common_nodes(g.s_sets[i], g.s_sets[j]) != 1) {
        out.push_back("S_" + std::to_string(i) + " and S_" + std::to_string(j) +
                      " do not share exactly one node");
      }
    }
  }
  for (std::size_t p = 0; p < big_k; ++p) {
    if (occurrences[k * k + p] != 2) {
      out.push_back("new node " + std::to_string(k * k + p) + " is in " +
                    std::to_string(occurrences[k * k + p]) + " sets");
    }
  }
  return out;
}

bool is_hyper_matching(const Hypergraph& h, const std::vector<std::size_t>& picked) {
  std::vector<bool> used(h.num_nodes(), false);
  for (std::size_t i : picked) {
    if (i >= h.num_edges()) return false;
    for (Node x : h.edge(i)) {
      if (used[x]) return false;
      used[x] = true;
    }
  }
  return true;
}

bool is_maximal_hyper_matching(const Hypergraph& h, const std::vector<std::size_t>& picked) {
  if (!is_hyper_matching(h, picked)) return false;
  std::vector<bool> used(h.num_nodes(), false);
  for (std::size_t i : picked) {
    for (Node x : h.edge(i)) used[x] = true;
  }
  for (const auto& e : h.edges()) {
    if (std::none_of(e.begin(), e.end(), [&](Node x) { return used[x]; })) return false;
  }
  return true;
}

std::vector<std::size_t> hyper_greedy(const Hypergraph& h, std::uint64_t seed) {
  std::vector<std::size_t> order(h.num_edges());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  RandomStream rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform(i)]);
  }
  std::vector<bool> used(h.num_nodes(), false);
  std::vector<std::size_t> picked;
  for (std::size_t i : order) {
    const auto& e = h.edge(i);
    if (std::any_of(e.begin(), e.end(), [&](Node x) { return used[x]; })) continue;
    for (Node x : e) used[x] = true;
    picked.push_back(i);
  }
  return picked;
}

namespace {

class HyperSearch {
 public:
  explicit HyperSearch(const Hypergraph& h) : h_(h), used_(h.num_nodes(), false) {}

  std::size_t run() {
    go(0, 0);
    return best_;
  }

 private:
  void go(std::size_t i, std::size_t size) {
    best_ = std::max(best_, size);
    if (i == h_.num_edges() || size + (h_.num_edges() - i) <= best_) return;
    const auto& e = h_.edge(i);
    if (std::none_of(e.begin(), e.end(), [&](Node x) { return used_[x]; })) {
      for (Node x : e) used_[x] = true;
      go(i + 1, size + 1);
      for (Node x : e) used_[x] = false;
    }
    go(i + 1, size);
  }

  const Hypergraph& h_;
  std::vector<bool> used_;
  std::size_t best_ = 0;
};

}  // namespace

std::size_t hyper_bruteforce_optimum(const Hypergraph& h) {
  if (h.num_edges() > 24) {
    throw Error(ErrorKind::kTooLarge, "hypergraph brute force needs at most 24 edges");
  }
  return HyperSearch(h).run();
}

namespace {

class DegreeFirst : public HyperStrategy {
 public:
  explicit DegreeFirst(std::size_t degree) : degree_(degree) {}
  std::string name() const override { return "degree-" + std::to_string(degree_) + "-first"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const HyperDataItem& item) const override {
    return {item.edges.size() == degree_ ? 0 : 1,
            static_cast<std::int64_t>(item.edges.size())};
  }
  std::optional<std::size_t> decide(const HyperDataItem&) const override { return 0; }

 private:
  std::size_t degree_;
};

class LowestId : public HyperStrategy {
 public:
  std::string name() const override { return "lowest-id"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const HyperDataItem&) const override { return {}; }
  // Last listed edge, to vary the choice.
  std::optional<std::size_t> decide(const HyperDataItem& item) const override {
    return item.edges.size() - 1;
  }
};

class Isolate : public LowestId {
 public:
  std::string name() const override { return "isolate"; }
  bool greedy() const override { return false; }
  std::optional<std::size_t> decide(const HyperDataItem&) const override {
    return std::nullopt;
  }
};

bool hyper_prefers(const HyperStrategy& s, const HyperDataItem& a, const HyperDataItem& b) {
  auto ka = s.priority(a);
  auto kb = s.priority(b);
  if (ka != kb) return ka < kb;
  if (a.node != b.node) return a.node < b.node;
  return a.edges < b.edges;
}

HyperDataItem true_item(const Hypergraph& h, Node x) {
  HyperDataItem item{x, {}};
  for (std::size_t i : h.incident(x)) {
    std::vector<Node> rest;
    for (Node y : h.edge(i)) {
      if (y != x) rest.push_back(y);
    }
    item.edges.push_back(std::move(rest));
  }
  std::sort(item.edges.begin(), item.edges.end());
  return item;
}

}  // namespace

std::unique_ptr<HyperStrategy> make_hyper_strategy(const std::string& name) {
  if (name == "degree-2-first") return std::make_unique<DegreeFirst>(2);
  if (name == "degree-4-first") return std::make_unique<DegreeFirst>(4);
  if (name == "lowest-id") return std::make_unique<LowestId>();
  if (name == "isolate") return std::make_unique<Isolate>();
  throw Error(ErrorKind::kInvalidArgument, "unknown hypergraph strategy '" + name + "'");
}

std::vector<std::string> hyper_strategy_names() {
  return {"degree-2-first", "degree-4-first", "lowest-id"};
}

HyperGameResult hyper_greedy_priority_game(const HyperStrategy& strategy, std::size_t k) {
  if (!strategy.greedy()) {
    throw Error(ErrorKind::kNonGreedyStrategy,
                "hypergraph adversary needs a greedy strategy, got " + strategy.name());
  }
  HyperGadget gadget = gen_hyper_hard(k);
  // Offer one degree-4 and one degree-2 item over fresh nodes.
  std::vector<HyperDataItem> offers;
  for (std::size_t d : {4u, 2u}) {
    HyperDataItem item{0, {}};
    Node next = 1;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Node> v;
      for (std::size_t t = 0; t + 1 < k; ++t) v.push_back(next++);
      item.edges.push_back(std::move(v));
    }
    offers.push_back(std::move(item));
  }
  const HyperDataItem& served =
      hyper_prefers(strategy, offers[1], offers[0]) ? offers[1] : offers[0];
  std::optional<std::size_t> choice = strategy.decide(served);
  if (!choice || *choice >= served.edges.size()) {
    throw Error(ErrorKind::kIllegalDecision, "strategy must pick one of the listed edges");
  }
  // Relabel: the served node becomes an e-node of matching degree and the
  // chosen edge becomes e.
  const Hypergraph& h = gadget.graph;
  const Node u = served.edges.size() == 4 ? gadget.e_nodes[0] : gadget.e_nodes[k - 1];
  std::vector<std::size_t> incident = h.incident(u);
  std::stable_partition(incident.begin(), incident.end(),
                        [&](std::size_t i) { return i == gadget.top_edge; });
  std::vector<std::size_t> slot(served.edges.size());
  slot[*choice] = 0;
  for (std::size_t j = 0, next = 1; j < served.edges.size(); ++j) {
    if (j != *choice) slot[j] = next++;
  }
  std::vector<Node> label(h.num_nodes(), kNoNode);
  label[u] = served.node;
  for (std::size_t j = 0; j < served.edges.size(); ++j) {
    std::vector<Node> others;
    for (Node y : h.edge(incident[slot[j]])) {
      if (y != u) others.push_back(y);
    }
    for (std::size_t t = 0; t < others.size(); ++t) label[others[t]] = served.edges[j][t];
  }
  Node next = static_cast<Node>(1 + served.edges.size() * (k - 1));
  for (Node& l : label) {
    if (l == kNoNode) l = next++;
  }
  std::vector<std::vector<Node>> edges;
  for (const auto& e : h.edges()) {
    std::vector<Node> r;
    for (Node y : e) r.push_back(label[y]);
    edges.push_back(std::move(r));
  }
  HyperGameResult result;
  result.graph = Hypergraph(h.num_nodes(), k, std::move(edges));
  result.served = served;
  result.matching = {gadget.top_edge};
  result.matching_size = 1;
  result.optimum_size = gadget.optimum_size;
  const Hypergraph& fg = result.graph;
  HyperDataItem truth = true_item(fg, served.node);
  bool ranked_first = true;
  for (Node x = 0; x < fg.num_nodes(); ++x) {
    if (x != served.node && hyper_prefers(strategy, true_item(fg, x), truth)) {
      ranked_first = false;
      break;
    }
  }
  const auto& top = fg.edge(gadget.top_edge);
  result.consistent = truth == served && ranked_first &&
                      std::binary_search(top.begin(), top.end(), served.node);
  result.maximal = is_maximal_hyper_matching(fg, result.matching);
  return result;
}

}  // namespace greedy_lab
