#include "greedy_lab/certifier.hpp"

#include <algorithm>
#include <limits>

#include "greedy_lab/error.hpp"
#include "greedy_lab/exact.hpp"
#include "json.hpp"

namespace greedy_lab {

std::string component_kind_name(ComponentKind kind) {
  return kind == ComponentKind::kOneOnePath ? "one-one-path" : "augmenting-path";
}

std::string transfer_mode_name(TransferMode mode) {
  return mode == TransferMode::kRegular ? "regular" : "indirect";
}

TransferMode parse_transfer_mode(const std::string& name) {
  if (name == "regular") return TransferMode::kRegular;
  if (name == "indirect") return TransferMode::kIndirect;
  throw Error(ErrorKind::kParse, "unknown transfer mode '" + name + "'");
}

namespace {

struct Walk {
  std::vector<Node> nodes;
  bool cycle = false;
  std::size_t m = 0;
  std::size_t w = 0;
};

std::vector<Node> mates_of(const Graph& g, const Matching& matching,
                           const char* name) {
  if (matching.num_nodes() != g.num_nodes()) {
    throw Error(ErrorKind::kInvalidMatching,
                std::string(name) + " has the wrong node count");
  }
  MatchingReport report = verify_matching(g, matching.edges());
  if (!report.valid) {
    throw Error(ErrorKind::kInvalidMatching,
                std::string(name) + ": " + report.problems.front());
  }
  std::vector<Node> mate(g.num_nodes(), kNoNode);
  for (Node x = 0; x < g.num_nodes(); ++x) mate[x] = matching.mate(x);
  return mate;
}

// Components of M u M_opt; nodes covered by neither are skipped.
std::vector<Walk> walk_components(const std::vector<Node>& m_mate,
                                  const std::vector<Node>& opt_mate) {
  const std::size_t n = m_mate.size();
  std::vector<bool> seen(n, false);
  std::vector<Walk> walks;
  auto step = [&](Node cur, bool use_m) { return use_m ? m_mate[cur] : opt_mate[cur]; };
  for (Node x = 0; x < n; ++x) {
    if (seen[x] || (m_mate[x] == kNoNode && opt_mate[x] == kNoNode)) continue;
    Walk walk;
    if (m_mate[x] != kNoNode && m_mate[x] == opt_mate[x]) {
      walk.nodes = {x, m_mate[x]};
      walk.m = walk.w = 1;
    } else {
      // Find an end, or detect a cycle.
      Node start = x;
      bool use_m = true;
      Node cur = x;
      while (true) {
        Node next = step(cur, use_m);
        if (next == kNoNode) {
          start = cur;
          break;
        }
        cur = next;
        use_m = !use_m;
        if (cur == x) {
          walk.cycle = true;
          break;
        }
      }
      use_m = m_mate[start] != kNoNode;
      if (walk.cycle) use_m = true;
      cur = start;
      walk.nodes.push_back(cur);
      while (true) {
        Node next = step(cur, use_m);
        if (next == kNoNode || next == start) {
          if (next == start) ++(use_m ? walk.m : walk.w);
          break;
        }
        ++(use_m ? walk.m : walk.w);
        cur = next;
        walk.nodes.push_back(cur);
        use_m = !use_m;
      }
    }
    for (Node y : walk.nodes) seen[y] = true;
    walks.push_back(std::move(walk));
  }
  return walks;
}

std::string describe(const Walk& walk) {
  std::string s = walk.cycle ? "cycle" : "path";
  s += " through node " + std::to_string(walk.nodes.front()) + " (m=" +
       std::to_string(walk.m) + ", w=" + std::to_string(walk.w) + ")";
  return s;
}

}  // namespace

Matching canonicalize_opt(const Graph& g, const Matching& m, const Matching& m_opt) {
  std::vector<Node> m_mate = mates_of(g, m, "M");
  std::vector<Node> opt_mate = mates_of(g, m_opt, "M_opt");
  std::vector<Walk> walks = walk_components(m_mate, opt_mate);
  std::vector<bool> swap(g.num_nodes(), false);
  for (const Walk& walk : walks) {
    if (walk.m > walk.w) {
      throw Error(ErrorKind::kNotMaximum,
                  "M_opt is not maximum: augmenting " + describe(walk));
    }
    if (walk.m == walk.w && !(walk.nodes.size() == 2 && !walk.cycle)) {
      for (Node y : walk.nodes) swap[y] = true;
    }
  }
  Matching out(g.num_nodes());
  for (const Edge& e : m_opt.edges()) {
    if (!swap[e.u]) out.add(e.u, e.v);
  }
  for (const Edge& e : m.edges()) {
    if (swap[e.u]) out.add(e.u, e.v);
  }
  return out;
}

ComponentDecomposition decompose(const Graph& g, const Matching& m,
                                 const Matching& m_opt) {
  ComponentDecomposition d;
  d.m_mate = mates_of(g, m, "M");
  d.opt_mate = mates_of(g, m_opt, "M_opt");
  d.component_of.assign(g.num_nodes(), -1);
  for (Walk& walk : walk_components(d.m_mate, d.opt_mate)) {
    Component c;
    c.m = walk.m;
    c.w = walk.w;
    if (walk.cycle) {
      throw Error(ErrorKind::kNonCanonical, "even " + describe(walk));
    }
    if (walk.m == walk.w) {
      if (walk.nodes.size() != 2) {
        throw Error(ErrorKind::kNonCanonical, "even " + describe(walk));
      }
      c.kind = ComponentKind::kOneOnePath;
    } else if (walk.m > walk.w) {
      throw Error(ErrorKind::kNotMaximum,
                  "M_opt is not maximum: augmenting " + describe(walk));
    } else if (walk.m == 0) {
      throw Error(ErrorKind::kNotMaximal,
                  "M is not maximal: edge " + std::to_string(walk.nodes[0]) + " " +
                      std::to_string(walk.nodes[1]) + " is free");
    } else {
      c.kind = ComponentKind::kAugmentingPath;
      c.endpoints = {walk.nodes.front(), walk.nodes.back()};
    }
    c.nodes = std::move(walk.nodes);
    for (Node y : c.nodes) d.component_of[y] = static_cast<int>(d.components.size());
    d.total_m += c.m;
    d.total_w += c.w;
    d.components.push_back(std::move(c));
  }
  return d;
}

Rational transfer_amount(TransferMode mode, std::size_t delta) {
  const auto D = static_cast<std::int64_t>(delta);
  return mode == TransferMode::kRegular ? Rational(1, 2 * (2 * D - 3))
                                        : Rational(1, 2 * (2 * D - 2));
}

Rational target_ratio(TransferMode mode, std::size_t delta) {
  const auto D = static_cast<std::int64_t>(delta);
  return mode == TransferMode::kRegular ? Rational(D - 1, 2 * D - 3)
                                        : Rational(2 * D - 1, 4 * D - 4);
}

namespace {

void check_trace_matches(const ExecutionTrace& trace,
                         const ComponentDecomposition& d) {
  if (trace.steps.size() != d.total_m) {
    throw Error(ErrorKind::kTraceMismatch,
                "trace has " + std::to_string(trace.steps.size()) +
                    " steps but M has " + std::to_string(d.total_m) + " edges");
  }
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& st = trace.steps[s];
    if (st.first >= d.m_mate.size() || d.m_mate[st.first] != st.mate) {
      throw Error(ErrorKind::kTraceMismatch,
                  "step " + std::to_string(s) + " matches an edge outside M");
    }
  }
}

// Step in which each M-covered node was matched.
std::vector<std::size_t> matched_step(const Graph& g, const ExecutionTrace& trace) {
  std::vector<std::size_t> step(g.num_nodes(), std::numeric_limits<std::size_t>::max());
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    step[trace.steps[s].first] = s;
    step[trace.steps[s].mate] = s;
  }
  return step;
}

// Step whose pick creates each augmenting path (max() for one-one paths).
std::vector<std::size_t> creation_steps(const ComponentDecomposition& d,
                                        const std::vector<std::size_t>& step_of) {
  std::vector<std::size_t> created(d.components.size(),
                                   std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    if (d.components[i].kind != ComponentKind::kAugmentingPath) continue;
    for (Node y : d.components[i].nodes) {
      if (d.m_mate[y] != kNoNode) created[i] = std::min(created[i], step_of[y]);
    }
  }
  return created;
}

}  // namespace

TransferLedger compute_transfers(const Graph& g, const ExecutionTrace& trace,
                                 const ComponentDecomposition& d, TransferMode mode,
                                 std::size_t delta) {
  if (delta < 3) throw Error(ErrorKind::kInvalidArgument, "transfers need delta >= 3");
  if (g.max_degree() > delta) {
    throw Error(ErrorKind::kInvalidArgument,
                "graph has degree " + std::to_string(g.max_degree()) +
                    " above delta " + std::to_string(delta));
  }
  if (d.component_of.size() != g.num_nodes()) {
    throw Error(ErrorKind::kTraceMismatch, "decomposition is for another graph");
  }
  validate_trace(g, trace);
  check_trace_matches(trace, d);

  TransferLedger ledger;
  ledger.mode = mode;
  ledger.delta = delta;
  ledger.theta = transfer_amount(mode, delta);
  ledger.debits.assign(d.components.size(), 0);
  ledger.credits.assign(d.components.size(), 0);
  ledger.node_credits.assign(g.num_nodes(), 0);

  std::vector<bool> endpoint(g.num_nodes(), false);
  for (const Component& c : d.components) {
    for (Node y : c.endpoints) endpoint[y] = true;
  }
  std::vector<std::size_t> step_of = matched_step(g, trace);
  std::vector<bool> creator(g.num_nodes(), false);
  if (mode == TransferMode::kIndirect) {
    std::vector<std::size_t> created = creation_steps(d, step_of);
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      if (d.components[i].kind != ComponentKind::kAugmentingPath) continue;
      const TraceStep& st = trace.steps[created[i]];
      creator[st.first] = creator[st.mate] = true;
    }
  }

  std::vector<std::size_t> deg(g.num_nodes());
  for (Node x = 0; x < g.num_nodes(); ++x) deg[x] = g.degree(x);
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& st = trace.steps[s];
    auto removed = trace.removed_in(s);
    for (const RemovedEdge& r : removed) {
      --deg[r.u];
      --deg[r.v];
    }
    for (const RemovedEdge& r : removed) {
      if (r.matched || d.opt_mate[r.u] == r.v) continue;
      bool u_picked = r.u == st.first || r.u == st.mate;
      Node x = u_picked ? r.u : r.v;
      Node y = u_picked ? r.v : r.u;
      if (!endpoint[y] || deg[y] > delta - 2 || creator[x]) continue;
      ledger.transfers.push_back({x, y, s, true});
    }
  }

  if (mode == TransferMode::kIndirect) {
    std::vector<std::vector<std::size_t>> direct_in(d.components.size());
    for (std::size_t t = 0; t < ledger.transfers.size(); ++t) {
      direct_in[d.component_of[ledger.transfers[t].to]].push_back(t);
    }
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      const Component& c = d.components[i];
      if (c.kind != ComponentKind::kAugmentingPath || c.m != 1) continue;
      if (direct_in[i].size() != 1) continue;
      Transfer vw = ledger.transfers[direct_in[i].front()];
      Node u = d.m_mate[vw.from];
      ledger.transfers.push_back({u, vw.to, step_of[u], false});
    }
  }

  for (const Transfer& t : ledger.transfers) {
    ++ledger.debits[d.component_of[t.from]];
    ++ledger.credits[d.component_of[t.to]];
    ++ledger.node_credits[t.to];
  }
  return ledger;
}

namespace {

std::int64_t balance_bound(TransferMode mode, std::int64_t D, const Component& c) {
  const auto m = static_cast<std::int64_t>(c.m);
  if (mode == TransferMode::kRegular) {
    if (c.kind == ComponentKind::kOneOnePath) return 2 * (D - 1) - 2;
    return 2 * m * (D - 2) - 2 * (D - 2) - 2;
  }
  if (c.kind == ComponentKind::kOneOnePath) return 2 * (D - 1) - 1;
  if (m == 1) return -2;
  return 2 * m * (D - 2) - 2 * (D - 2) - 1;
}

}  // namespace

CertReport check_balances(const ComponentDecomposition& d, const TransferLedger& ledger,
                          TransferMode mode, std::size_t delta) {
  CertReport report;
  report.mode = mode;
  report.delta = delta;
  report.theta = transfer_amount(mode, delta);
  report.target = target_ratio(mode, delta);
  report.matching_size = d.total_m;
  report.optimum_size = d.total_w;
  if (ledger.debits.size() != d.components.size() ||
      ledger.credits.size() != d.components.size()) {
    report.violations.push_back("ledger does not match the decomposition");
    report.conservation_ok = report.balances_ok = report.local_ratios_ok =
        report.global_ok = false;
    return report;
  }
  const auto D = static_cast<std::int64_t>(delta);
  std::int64_t total_balance = 0;
  Rational funds;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const Component& c = d.components[i];
    ComponentRow row;
    row.kind = c.kind;
    row.m = c.m;
    row.w = c.w;
    row.d = ledger.debits[i];
    row.c = ledger.credits[i];
    row.bound = balance_bound(mode, D, c);
    const std::int64_t balance =
        static_cast<std::int64_t>(row.d) - static_cast<std::int64_t>(row.c);
    total_balance += balance;
    Rational fund = Rational(static_cast<std::int64_t>(c.m)) - report.theta * balance;
    funds += fund;
    row.alpha = fund / Rational(static_cast<std::int64_t>(c.w));
    std::string where = component_kind_name(c.kind) + " at node " +
                        std::to_string(c.nodes.front());
    if (balance > row.bound) {
      row.balance_ok = false;
      report.balances_ok = false;
      report.violations.push_back("balance " + std::to_string(balance) +
                                  " exceeds bound " + std::to_string(row.bound) +
                                  " for " + where);
    }
    if (row.alpha < report.target) {
      row.ratio_ok = false;
      report.local_ratios_ok = false;
      report.violations.push_back("local ratio " + row.alpha.to_string() +
                                  " below target for " + where);
    }
    report.rows.push_back(row);
  }
  if (total_balance != 0) {
    report.conservation_ok = false;
    report.violations.push_back("transfers are not conserved");
  }
  if (d.total_w == 0) {
    report.global_ratio = report.funded_ratio = Rational(1);
  } else {
    const auto w = static_cast<std::int64_t>(d.total_w);
    report.global_ratio = Rational(static_cast<std::int64_t>(d.total_m), w);
    report.funded_ratio = funds / Rational(w);
  }
  if (report.funded_ratio != report.global_ratio) {
    report.conservation_ok = false;
    report.violations.push_back("funded ratio differs from |M|/|M_opt|");
  }
  if (report.global_ratio < report.target) {
    report.global_ok = false;
    report.violations.push_back("global ratio " + report.global_ratio.to_string() +
                                " below target " + report.target.to_string());
  }
  return report;
}

CheckReport endpoint_degree_check(const Graph& g, const ComponentDecomposition& d) {
  CheckReport report;
  for (const Component& c : d.components) {
    for (Node y : c.endpoints) {
      if (g.degree(y) < 2) {
        report.violations.push_back("endpoint " + std::to_string(y) + " has degree " +
                                    std::to_string(g.degree(y)));
      }
    }
  }
  return report;
}

CheckReport credit_lower_bound_check(const Graph& g, const ComponentDecomposition& d,
                                     const TransferLedger& ledger) {
  CheckReport report;
  for (const Component& c : d.components) {
    for (Node y : c.endpoints) {
      const std::int64_t need =
          std::min<std::int64_t>(static_cast<std::int64_t>(g.degree(y)) - 1,
                                 static_cast<std::int64_t>(ledger.delta) - 2);
      const auto got = static_cast<std::int64_t>(ledger.node_credits[y]);
      if (got < need) {
        report.violations.push_back("endpoint " + std::to_string(y) + " has " +
                                    std::to_string(got) + " credits, needs " +
                                    std::to_string(need));
      }
    }
  }
  return report;
}

CheckReport creation_step_check(const Graph& g, const ExecutionTrace& trace,
                                const ComponentDecomposition& d) {
  CheckReport report;
  std::vector<std::size_t> created = creation_steps(d, matched_step(g, trace));
  std::vector<std::vector<std::size_t>> at_step(trace.steps.size());
  for (std::size_t i = 0; i < created.size(); ++i) {
    if (d.components[i].kind == ComponentKind::kAugmentingPath) {
      at_step[created[i]].push_back(i);
    }
  }
  std::vector<std::size_t> deg(g.num_nodes());
  for (Node x = 0; x < g.num_nodes(); ++x) deg[x] = g.degree(x);
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    for (const RemovedEdge& r : trace.removed_in(s)) {
      --deg[r.u];
      --deg[r.v];
    }
    for (std::size_t i : at_step[s]) {
      const Component& c = d.components[i];
      if (deg[c.endpoints[0]] == 0 && deg[c.endpoints[1]] == 0) {
        report.violations.push_back("both endpoints of the path at node " +
                                    std::to_string(c.nodes.front()) +
                                    " isolated in step " + std::to_string(s));
      }
    }
  }
  return report;
}

std::vector<std::string> CertificationResult::all_violations() const {
  std::vector<std::string> out = report.violations;
  for (const CheckReport* r : {&endpoints, &credits, &creation}) {
    out.insert(out.end(), r->violations.begin(), r->violations.end());
  }
  return out;
}

CertificationResult certify_execution(const Graph& g, const ExecutionTrace& trace,
                                      const Matching& m_opt, TransferMode mode,
                                      std::size_t delta) {
  Matching m = matching_from_trace(g, trace);
  Matching canonical = canonicalize_opt(g, m, m_opt);
  CertificationResult result;
  result.decomposition = decompose(g, m, canonical);
  result.ledger = compute_transfers(g, trace, result.decomposition, mode, delta);
  result.report = check_balances(result.decomposition, result.ledger, mode, delta);
  result.endpoints = endpoint_degree_check(g, result.decomposition);
  if (mode == TransferMode::kRegular) {
    result.credits = credit_lower_bound_check(g, result.decomposition, result.ledger);
  }
  result.creation = creation_step_check(g, trace, result.decomposition);
  return result;
}

std::string cert_report_json(const CertificationResult& result, int indent) {
  using nlohmann::json;
  const CertReport& r = result.report;
  json rows = json::array();
  for (const ComponentRow& row : r.rows) {
    rows.push_back({{"kind", component_kind_name(row.kind)},
                    {"m", row.m},
                    {"w", row.w},
                    {"d", row.d},
                    {"c", row.c},
                    {"bound", row.bound},
                    {"alpha", row.alpha.to_string()},
                    {"balance_ok", row.balance_ok},
                    {"ratio_ok", row.ratio_ok}});
  }
  std::size_t indirect = 0;
  for (const Transfer& t : result.ledger.transfers) indirect += t.direct ? 0 : 1;
  json out = {{"mode", transfer_mode_name(r.mode)},
              {"delta", r.delta},
              {"theta", r.theta.to_string()},
              {"target", r.target.to_string()},
              {"matching_size", r.matching_size},
              {"optimum_size", r.optimum_size},
              {"global_ratio", r.global_ratio.to_string()},
              {"funded_ratio", r.funded_ratio.to_string()},
              {"transfers", result.ledger.transfers.size()},
              {"indirect_transfers", indirect},
              {"conservation_ok", r.conservation_ok},
              {"balances_ok", r.balances_ok},
              {"local_ratios_ok", r.local_ratios_ok},
              {"global_ok", r.global_ok},
              {"components", rows},
              {"violations", result.all_violations()},
              {"passed", result.passed()}};
  return out.dump(indent);
}

}  // namespace greedy_lab
