#include <algorithm>
#include <unordered_map>

#include "greedy_lab/error.hpp"
#include "greedy_lab/priority_game.hpp"

namespace greedy_lab {

namespace {

enum : std::uint8_t { kLive = 0, kMatched = 1, kIsolated = 2 };

// Plays out a fixed graph, starting from the state recorded in a history.
class StaticPhase {
 public:
  StaticPhase(Graph g, const GameHistory& history)
      : g_(std::move(g)), sorted_(g_.num_nodes()), state_(g_.num_nodes(), kLive) {
    for (Node x = 0; x < g_.num_nodes(); ++x) {
      sorted_[x].assign(g_.neighbors(x).begin(), g_.neighbors(x).end());
      std::sort(sorted_[x].begin(), sorted_[x].end());
      if (history.matched.count(x)) state_[x] = kMatched;
      if (history.isolated.count(x)) state_[x] = kIsolated;
    }
    for (Node x = 0; x < g_.num_nodes(); ++x) {
      if (state_[x] == kLive && !has_live_neighbor(x)) {
        state_[x] = kIsolated;
        stranded_.push_back(x);
      }
    }
  }

  const Graph& graph() const { return g_; }
  // Nodes that had no matchable neighbor when the phase started.
  const std::vector<Node>& stranded() const { return stranded_; }

  std::vector<DataItem> candidates() const {
    std::vector<DataItem> out;
    for (Node x = 0; x < g_.num_nodes(); ++x) {
      if (state_[x] == kLive) out.push_back({x, sorted_[x]});
    }
    return out;
  }

  std::vector<Node> commit(const DataItem& served, std::optional<Node> mate) {
    std::vector<Node> touched{served.node};
    state_[served.node] = mate ? kMatched : kIsolated;
    if (mate) {
      state_[*mate] = kMatched;
      touched.push_back(*mate);
    }
    std::vector<Node> out;
    for (Node t : touched) {
      for (Node y : g_.neighbors(t)) {
        if (state_[y] == kLive && !has_live_neighbor(y)) {
          state_[y] = kIsolated;
          out.push_back(y);
        }
      }
    }
    return out;
  }

 private:
  bool has_live_neighbor(Node x) const {
    for (Node y : g_.neighbors(x)) {
      if (state_[y] == kLive) return true;
    }
    return false;
  }

  Graph g_;
  std::vector<std::vector<Node>> sorted_;
  std::vector<std::uint8_t> state_;
  std::vector<Node> stranded_;
};

GameHistory after(const GameHistory& history, const DataItem& served,
                  std::optional<Node> mate) {
  GameHistory h = history;
  h.known.insert(served.node);
  h.known.insert(served.neighbors.begin(), served.neighbors.end());
  if (mate) {
    h.matched.insert(served.node);
    h.matched.insert(*mate);
  } else {
    h.isolated.insert(served.node);
  }
  return h;
}

// Fresh neighbor ids of an item, the chosen mate first.
std::vector<Node> fresh_roles(const DataItem& item, Node base, std::optional<Node> mate) {
  std::vector<Node> out;
  if (mate && *mate >= base) out.push_back(*mate);
  for (Node y : item.neighbors) {
    if (y >= base && (!mate || y != *mate)) out.push_back(y);
  }
  return out;
}

class StaticAdversary : public Adversary {
 public:
  StaticAdversary(Graph g, std::optional<OptimumCertificate> optimum)
      : phase_(std::move(g), GameHistory{}), optimum_(std::move(optimum)) {}

  std::string name() const override { return "static"; }
  std::vector<DataItem> candidates(const GameHistory&) override {
    return phase_.candidates();
  }
  std::vector<Node> commit(const DataItem& served, std::optional<Node> mate,
                           const GameHistory&) override {
    return phase_.commit(served, mate);
  }
  Graph final_graph() const override { return phase_.graph(); }
  std::optional<OptimumCertificate> optimum() const override { return optimum_; }

 private:
  StaticPhase phase_;
  std::optional<OptimumCertificate> optimum_;
};

class Thm4Adversary : public Adversary {
 public:
  std::string name() const override { return "thm4"; }

  std::vector<DataItem> candidates(const GameHistory&) override {
    if (phase_) return phase_->candidates();
    return {DataItem{0, {1, 2}}, DataItem{0, {1, 2, 3}}};
  }

  std::vector<Node> commit(const DataItem& served, std::optional<Node> mate,
                           const GameHistory& history) override {
    if (phase_) return phase_->commit(served, mate);
    std::vector<Node> roles = fresh_roles(served, 1, mate);
    Node next = static_cast<Node>(served.neighbors.size() + 1);
    // Roles u, v, w, z, b, c.
    std::array<Node, 6> labeling{};
    labeling[0] = served.node;
    for (std::size_t i = 0; i < roles.size(); ++i) labeling[1 + i] = roles[i];
    for (std::size_t r = 1 + roles.size(); r < 6; ++r) labeling[r] = next++;
    Instance inst = served.neighbors.size() == 2 ? gen_fig2_gadget(labeling)
                                                 : gen_fig3_gadget(labeling);
    optimum_ = inst.optimum;
    phase_.emplace(inst.graph, after(history, served, mate));
    return phase_->stranded();
  }

  Graph final_graph() const override {
    return phase_ ? phase_->graph() : Graph();
  }
  std::optional<OptimumCertificate> optimum() const override { return optimum_; }

 private:
  std::optional<StaticPhase> phase_;
  std::optional<OptimumCertificate> optimum_;
};

// Item shapes the delta adversary serves before the graph is fixed:
// type 1 = all-unknown node of degree d in 3..delta, type 2 = all-unknown
// degree-2 node, type 3 = degree-3 node whose one known neighbor is an
// earlier r node.
class Thm6Adversary : public Adversary {
 public:
  explicit Thm6Adversary(std::size_t delta) : delta_(delta), regular_rounds_(delta - 3) {
    if (delta < 3) throw Error(ErrorKind::kInvalidArgument, "delta must be >= 3");
  }

  std::string name() const override { return "thm6:" + std::to_string(delta_); }
  bool requires_greedy() const override { return true; }

  std::vector<DataItem> candidates(const GameHistory&) override {
    if (phase_) return phase_->candidates();
    last_.clear();
    const Node base = next_id_;
    for (std::size_t d = 3; d <= delta_; ++d) {
      DataItem item{base, {}};
      for (Node j = 1; j <= d; ++j) item.neighbors.push_back(base + j);
      last_.push_back({1, d, -1, std::move(item)});
    }
    last_.push_back({2, 2, -1, DataItem{base, {base + 1, base + 2}}});
    for (int r : r_nodes_) {
      if (adj_[r].size() >= delta_) continue;
      last_.push_back({3, 3, r, DataItem{base, {id_[r], base + 1, base + 2}}});
    }
    std::vector<DataItem> out;
    for (const Candidate& c : last_) out.push_back(c.item);
    return out;
  }

  std::vector<Node> commit(const DataItem& served, std::optional<Node> mate,
                           const GameHistory& history) override {
    if (phase_) return phase_->commit(served, mate);
    if (!mate) {
      throw Error(ErrorKind::kNonGreedyStrategy, "isolation against the delta adversary");
    }
    auto it = std::find_if(last_.begin(), last_.end(),
                           [&](const Candidate& c) { return c.item == served; });
    if (it == last_.end()) {
      throw Error(ErrorKind::kInconsistentTranscript, "served item was not offered");
    }
    const Candidate cand = *it;
    const Node base = next_id_;
    std::vector<Node> fresh = fresh_roles(served, base, mate);
    next_id_ = base + 1 + static_cast<Node>(fresh.size());
    if (round_ < regular_rounds_) {
      ++round_;
      return regular_round(cand, base, fresh);
    }
    endgame(cand, base, fresh);
    finalize();
    phase_.emplace(build_graph(), after(history, served, mate));
    return phase_->stranded();
  }

  Graph final_graph() const override { return phase_ ? phase_->graph() : Graph(); }

  std::optional<OptimumCertificate> optimum() const override {
    if (!phase_) return std::nullopt;
    OptimumCertificate cert;
    cert.source = OptimumSource::kGeneratorCertified;
    cert.witness.emplace();
    for (auto [x, y] : opt_) cert.witness->push_back({id_[x], id_[y]});
    cert.cover.emplace();
    for (int x : cover_) cert.cover->push_back(id_[x]);
    cert.size = opt_.size();
    return cert;
  }

 private:
  struct Candidate {
    int type;
    std::size_t degree;
    int r_handle;
    DataItem item;
  };

  int add_node(Node id = kNoNode) {
    adj_.emplace_back();
    id_.push_back(id);
    return static_cast<int>(adj_.size()) - 1;
  }
  void add_edge(int a, int b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  std::vector<Node> regular_round(const Candidate& cand, Node base,
                                  const std::vector<Node>& fresh) {
    std::vector<Node> isolated;
    if (cand.type == 1) {
      // Separate component: v joined to all v_j, v1 joined to v2..vd.
      int v = add_node(base);
      std::vector<int> vs;
      for (Node id : fresh) vs.push_back(add_node(id));
      for (int x : vs) add_edge(v, x);
      for (std::size_t j = 1; j < vs.size(); ++j) add_edge(vs[0], vs[j]);
      opt_.push_back({v, vs[1]});
      opt_.push_back({vs[0], vs[2]});
      cover_.insert(cover_.end(), {v, vs[0]});
      for (std::size_t j = 1; j < vs.size(); ++j) isolated.push_back(id_[vs[j]]);
      return isolated;
    }
    // Triangle l, m, r with a pendant u that later joins the center.
    int m = add_node(base);
    int r = add_node(fresh[0]);
    int l = add_node(fresh[1]);
    int u = add_node();
    add_edge(m, r);
    add_edge(m, l);
    add_edge(l, r);
    add_edge(r, u);
    if (cand.type == 3) add_edge(m, cand.r_handle);
    opt_.push_back({l, m});
    opt_.push_back({r, u});
    cover_.insert(cover_.end(), {m, r});
    r_nodes_.push_back(r);
    u_nodes_.push_back(u);
    isolated.push_back(id_[l]);
    return isolated;
  }

  void endgame(const Candidate& cand, Node base, const std::vector<Node>& fresh) {
    const std::size_t t = u_nodes_.size();
    int a, b, d;
    int e, f;
    int c = add_node();
    std::size_t on_a = t;
    std::vector<int> pads;
    if (cand.type == 1) {
      // a is served with degree cand.degree; padding nodes fill a's list.
      a = add_node(base);
      b = add_node(fresh[0]);
      d = add_node();
      e = add_node(fresh[1]);
      f = add_node(fresh[2]);
      on_a = std::min(t, cand.degree - 3);
      std::size_t k = 3;
      for (std::size_t i = 0; i < on_a; ++i) id_[u_nodes_[i]] = fresh[k++];
      for (std::size_t i = on_a; i < cand.degree - 3; ++i) pads.push_back(add_node(fresh[k++]));
    } else {
      b = add_node(base);
      a = add_node(fresh[0]);
      d = add_node(fresh[1]);
      e = add_node();
      f = add_node();
      if (cand.type == 3) add_edge(b, cand.r_handle);
    }
    add_edge(a, b);
    add_edge(a, e);
    add_edge(e, c);
    add_edge(c, d);
    add_edge(b, d);
    add_edge(a, f);
    add_edge(c, f);
    for (std::size_t i = 0; i < t; ++i) {
      add_edge(u_nodes_[i], c);
      add_edge(u_nodes_[i], i < on_a ? a : b);
    }
    for (int p : pads) {
      add_edge(p, a);
      add_edge(p, c);
    }
    opt_.push_back({a, e});
    opt_.push_back({b, d});
    opt_.push_back({c, f});
    cover_.insert(cover_.end(), {a, b, c});
  }

  void finalize() {
    for (Node& id : id_) {
      if (id == kNoNode) id = next_id_++;
    }
  }

  Graph build_graph() const {
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < adj_.size(); ++x) {
      for (int y : adj_[x]) {
        if (static_cast<std::size_t>(y) > x) edges.push_back({id_[x], id_[y]});
      }
    }
    return Graph(adj_.size(), std::move(edges));
  }

  std::size_t delta_;
  std::size_t regular_rounds_;
  std::size_t round_ = 0;
  Node next_id_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Node> id_;
  std::vector<std::pair<int, int>> opt_;
  std::vector<int> cover_;
  std::vector<int> r_nodes_;
  std::vector<int> u_nodes_;
  std::vector<Candidate> last_;
  std::optional<StaticPhase> phase_;
};

}  // namespace

std::unique_ptr<Adversary> make_static_adversary(Graph g,
                                                 std::optional<OptimumCertificate> optimum) {
  return std::make_unique<StaticAdversary>(std::move(g), std::move(optimum));
}

std::unique_ptr<Adversary> make_thm4_adversary() {
  return std::make_unique<Thm4Adversary>();
}

std::unique_ptr<Adversary> make_thm6_adversary(std::size_t delta) {
  if (delta < 3) throw Error(ErrorKind::kInvalidArgument, "delta must be >= 3");
  return std::make_unique<Thm6Adversary>(delta);
}

}  // namespace greedy_lab
