#include <algorithm>
#include <limits>

#include "greedy_lab/error.hpp"
#include "greedy_lab/priority_game.hpp"
#include "greedy_lab/random_stream.hpp"

namespace greedy_lab {

namespace {

std::optional<Node> lowest_live_neighbor(const DataItem& item, const GameHistory& h) {
  for (Node y : item.neighbors) {
    if (h.matchable(y)) return y;
  }
  return std::nullopt;
}

std::int64_t as_key(std::size_t x) { return static_cast<std::int64_t>(x); }

class MinDegreeFirst : public PriorityStrategy {
 public:
  std::string name() const override { return "min-degree-first"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const DataItem& item,
                                     const GameHistory& h) const override {
    return {as_key(h.live_degree(item))};
  }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    return lowest_live_neighbor(item, h);
  }
};

class MaxDegreeFirst : public PriorityStrategy {
 public:
  std::string name() const override { return "max-degree-first"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const DataItem& item,
                                     const GameHistory& h) const override {
    return {-as_key(h.live_degree(item))};
  }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    return lowest_live_neighbor(item, h);
  }
};

// Plain node-id order.
class Lexicographic : public PriorityStrategy {
 public:
  std::string name() const override { return "lexicographic"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const DataItem&, const GameHistory&) const override {
    return {};
  }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    return lowest_live_neighbor(item, h);
  }
};

// A fixed pseudo-random ranking of (degree, known-neighbor count) classes;
// the mate is a hashed choice among live neighbors.
class RandomOrder : public PriorityStrategy {
 public:
  explicit RandomOrder(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random-order:" + std::to_string(seed_); }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const DataItem& item,
                                     const GameHistory& h) const override {
    std::uint64_t x = RandomStream::mix(seed_ ^ RandomStream::mix(item.neighbors.size()));
    x = RandomStream::mix(x + h.known_neighbors(item));
    return {static_cast<std::int64_t>(x >> 1)};
  }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    std::vector<Node> live;
    for (Node y : item.neighbors) {
      if (h.matchable(y)) live.push_back(y);
    }
    if (live.empty()) return std::nullopt;
    // Pseudo-random mate: smallest hash of (seed, node, neighbor).
    auto key = [&](Node y) {
      return RandomStream::mix(seed_ ^ RandomStream::mix((std::uint64_t{item.node} << 32) | y));
    };
    return *std::min_element(live.begin(), live.end(),
                             [&](Node a, Node b) { return key(a) < key(b); });
  }

 private:
  std::uint64_t seed_;
};

class Degree3First : public PriorityStrategy {
 public:
  std::string name() const override { return "degree-3-first"; }
  bool greedy() const override { return true; }
  std::vector<std::int64_t> priority(const DataItem& item,
                                     const GameHistory& h) const override {
    std::size_t d = h.live_degree(item);
    return {d == 3 ? 0 : 1, as_key(d)};
  }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    return lowest_live_neighbor(item, h);
  }
};

// Isolates the first node it receives, then plays min-degree-first.
class IsolateFirst : public MinDegreeFirst {
 public:
  std::string name() const override { return "isolate-first"; }
  bool greedy() const override { return false; }
  std::optional<Node> decide(const DataItem& item, const GameHistory& h) const override {
    if (h.round == 0) return std::nullopt;
    return lowest_live_neighbor(item, h);
  }
};

class IsolateEverything : public MinDegreeFirst {
 public:
  std::string name() const override { return "isolate-everything"; }
  bool greedy() const override { return false; }
  std::optional<Node> decide(const DataItem&, const GameHistory&) const override {
    return std::nullopt;
  }
};

}  // namespace

std::unique_ptr<PriorityStrategy> make_strategy(const std::string& name) {
  if (name == "min-degree-first") return std::make_unique<MinDegreeFirst>();
  if (name == "max-degree-first") return std::make_unique<MaxDegreeFirst>();
  if (name == "lexicographic") return std::make_unique<Lexicographic>();
  if (name == "degree-3-first") return std::make_unique<Degree3First>();
  if (name == "isolate-first") return std::make_unique<IsolateFirst>();
  if (name == "isolate-everything") return std::make_unique<IsolateEverything>();
  if (name == "random-order") return std::make_unique<RandomOrder>(0);
  const std::string prefix = "random-order:";
  if (name.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      std::uint64_t seed = std::stoull(name.substr(prefix.size()), &used);
      if (used == name.size() - prefix.size()) return std::make_unique<RandomOrder>(seed);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown strategy '" + name + "'");
}

std::vector<std::string> greedy_strategy_names() {
  return {"min-degree-first", "max-degree-first", "lexicographic",
          "random-order:1",   "random-order:2",   "random-order:3",
          "degree-3-first"};
}

std::vector<std::string> strategy_names() {
  std::vector<std::string> out = greedy_strategy_names();
  out.push_back("isolate-first");
  out.push_back("isolate-everything");
  return out;
}

}  // namespace greedy_lab
