#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "greedy_lab/dynamic_graph.hpp"
#include "greedy_lab/graph.hpp"

namespace greedy_lab {

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n) : mate_(n, kNoNode) {}

  // Throws Error(kInvalidMatching) if u or v is already covered.
  void add(Node u, Node v);

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::size_t num_nodes() const { return mate_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  Node mate(Node x) const { return mate_[x]; }
  bool covered(Node x) const { return mate_[x] != kNoNode; }
  bool contains(Node u, Node v) const {
    return u < mate_.size() && mate_[u] == v;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<Node> mate_;
};

// Checks that every pair is an edge of g and pairs are disjoint.
Matching make_matching(const Graph& g, const std::vector<Edge>& pairs);

struct TraceStep {
  Node first = 0;
  std::size_t first_degree = 0;
  Node mate = 0;
  std::size_t removed_begin = 0;
  std::size_t removed_end = 0;
};

// Removed edges of all steps are stored back to back; step s owns
// removed[removed_begin, removed_end).
struct ExecutionTrace {
  std::string algorithm;
  bool min_degree_policy = false;
  std::vector<TraceStep> steps;
  std::vector<RemovedEdge> removed;

  std::span<const RemovedEdge> removed_in(std::size_t step) const {
    const TraceStep& s = steps[step];
    return {removed.data() + s.removed_begin, s.removed_end - s.removed_begin};
  }
};

// One JSON object per line: a header line, then one line per step.
void write_trace_jsonl(std::ostream& out, const ExecutionTrace& trace);
ExecutionTrace read_trace_jsonl(std::istream& in);

// Replays the trace on g. Throws Error(kTraceMismatch) if a removed edge is
// not live, an edge is never removed, a step's matched edge is missing or
// misflagged, or (for min-degree traces) a recorded degree is not the
// minimum nonzero degree.
void validate_trace(const Graph& g, const ExecutionTrace& trace);

Matching matching_from_trace(const Graph& g, const ExecutionTrace& trace);

}  // namespace greedy_lab
