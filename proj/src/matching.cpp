#include "greedy_lab/matching.hpp"

#include <istream>
#include <ostream>

#include "greedy_lab/error.hpp"
#include "json.hpp"

namespace greedy_lab {

using nlohmann::json;

void Matching::add(Node u, Node v) {
  if (u >= mate_.size() || v >= mate_.size() || u == v) {
    throw Error(ErrorKind::kInvalidMatching, "bad pair " + std::to_string(u) +
                                                 " " + std::to_string(v));
  }
  if (mate_[u] != kNoNode || mate_[v] != kNoNode) {
    throw Error(ErrorKind::kInvalidMatching,
                "pair " + std::to_string(u) + " " + std::to_string(v) +
                    " overlaps an earlier pair");
  }
  mate_[u] = v;
  mate_[v] = u;
  edges_.push_back({u, v});
}

Matching make_matching(const Graph& g, const std::vector<Edge>& pairs) {
  Matching m(g.num_nodes());
  for (const Edge& e : pairs) {
    if (!g.has_edge(e.u, e.v)) {
      throw Error(ErrorKind::kInvalidMatching,
                  "pair " + std::to_string(e.u) + " " + std::to_string(e.v) +
                      " is not an edge");
    }
    m.add(e.u, e.v);
  }
  return m;
}

void write_trace_jsonl(std::ostream& out, const ExecutionTrace& trace) {
  json header = {{"algorithm", trace.algorithm},
                 {"min_degree_policy", trace.min_degree_policy},
                 {"steps", trace.steps.size()}};
  out << header.dump() << '\n';
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& st = trace.steps[s];
    json removed = json::array();
    for (const RemovedEdge& r : trace.removed_in(s)) {
      removed.push_back({r.u, r.v, r.edge_id, r.matched ? 1 : 0});
    }
    json line = {{"step", s},
                 {"first", st.first},
                 {"degree", st.first_degree},
                 {"mate", st.mate},
                 {"removed", removed}};
    out << line.dump() << '\n';
  }
}

ExecutionTrace read_trace_jsonl(std::istream& in) {
  ExecutionTrace trace;
  std::string line;
  bool have_header = false;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      if (!have_header) {
        trace.algorithm = j.at("algorithm").get<std::string>();
        trace.min_degree_policy = j.at("min_degree_policy").get<bool>();
        have_header = true;
        continue;
      }
      TraceStep st;
      st.first = j.at("first").get<Node>();
      st.first_degree = j.at("degree").get<std::size_t>();
      st.mate = j.at("mate").get<Node>();
      st.removed_begin = trace.removed.size();
      for (const json& r : j.at("removed")) {
        trace.removed.push_back({r.at(0).get<Node>(), r.at(1).get<Node>(),
                                 r.at(2).get<std::uint32_t>(),
                                 r.at(3).get<int>() != 0});
      }
      st.removed_end = trace.removed.size();
      trace.steps.push_back(st);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("trace: ") + e.what());
  }
  if (!have_header) throw Error(ErrorKind::kParse, "trace: missing header");
  return trace;
}

void validate_trace(const Graph& g, const ExecutionTrace& trace) {
  auto fail = [](std::size_t step, const std::string& why) {
    throw Error(ErrorKind::kTraceMismatch,
                "step " + std::to_string(step) + ": " + why);
  };
  DynamicGraph dg(g);
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& st = trace.steps[s];
    if (st.first >= g.num_nodes() || st.mate >= g.num_nodes()) {
      fail(s, "node out of range");
    }
    if (!dg.has_live_edge(st.first, st.mate)) fail(s, "matched edge not live");
    if (dg.degree(st.first) != st.first_degree) fail(s, "recorded degree wrong");
    if (trace.min_degree_policy && st.first_degree != dg.min_degree()) {
      fail(s, "first endpoint does not have minimum degree");
    }
    std::size_t matched = 0;
    for (const RemovedEdge& r : trace.removed_in(s)) {
      bool is_pair = Edge{r.u, r.v}.same_pair(Edge{st.first, st.mate});
      if (r.matched != is_pair) fail(s, "matched flag wrong");
      matched += r.matched;
      bool touches = r.u == st.first || r.u == st.mate || r.v == st.first ||
                     r.v == st.mate;
      if (!touches) fail(s, "removed edge not incident to the matched pair");
      if (r.edge_id >= g.num_edges() ||
          !g.edge(r.edge_id).same_pair(Edge{r.u, r.v}) ||
          !dg.edge_alive(r.edge_id)) {
        fail(s, "removed edge not live");
      }
      dg.delete_edge_id(r.edge_id);
    }
    if (matched != 1) fail(s, "matched edge not removed exactly once");
    if (dg.degree(st.first) != 0 || dg.degree(st.mate) != 0) {
      fail(s, "matched pair keeps live edges");
    }
  }
  if (dg.has_edges()) fail(trace.steps.size(), "edges left after last step");
}

Matching matching_from_trace(const Graph& g, const ExecutionTrace& trace) {
  Matching m(g.num_nodes());
  for (const TraceStep& st : trace.steps) m.add(st.first, st.mate);
  return m;
}

}  // namespace greedy_lab
