#include <algorithm>
#include <set>

#include "doctest.h"
#include "greedy_lab/certifier.hpp"
#include "greedy_lab/error.hpp"
#include "greedy_lab/exact.hpp"
#include "greedy_lab/instances.hpp"
#include "greedy_lab/matchers.hpp"
#include "greedy_lab/random_stream.hpp"

using namespace greedy_lab;

namespace {

Matching opt_of(const Graph& g) {
  return make_matching(g, *max_matching_bruteforce(g).witness);
}

// Execution whose steps are forced by lowest-id tie breaking.
MatchResult det_mingreedy(const Graph& g) {
  MatcherConfig c;
  c.first = LowestIdTie{};
  c.second = LowestIdTie{};
  return run_matcher(g, c);
}

MatchResult mingreedy(const Graph& g, std::uint64_t seed) {
  MatcherConfig c;
  c.seed = seed;
  return run_matcher(g, c);
}

std::size_t indirect_count(const TransferLedger& l) {
  std::size_t n = 0;
  for (const Transfer& t : l.transfers) n += t.direct ? 0 : 1;
  return n;
}

}  // namespace

TEST_CASE("exact rationals") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, 3) > Rational(3, 5));
  CHECK(Rational(6, 4).to_string() == "3/2");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("transfer amounts and targets") {
  CHECK(transfer_amount(TransferMode::kRegular, 3) == Rational(1, 6));
  CHECK(target_ratio(TransferMode::kRegular, 3) == Rational(2, 3));
  CHECK(target_ratio(TransferMode::kRegular, 4) == Rational(3, 5));
  CHECK(transfer_amount(TransferMode::kIndirect, 4) == Rational(1, 12));
  CHECK(target_ratio(TransferMode::kIndirect, 4) == Rational(7, 12));
  CHECK(target_ratio(TransferMode::kIndirect, 5) == Rational(9, 16));
  CHECK(parse_transfer_mode("indirect") == TransferMode::kIndirect);
  CHECK_THROWS_AS(parse_transfer_mode("both"), Error);
}

TEST_CASE("canonicalize: equal matchings stay put") {
  Graph g(2, {{0, 1}});
  Matching m = make_matching(g, {{0, 1}});
  Matching c = canonicalize_opt(g, m, m);
  CHECK(c.edges().size() == 1);
  ComponentDecomposition d = decompose(g, m, c);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].kind == ComponentKind::kOneOnePath);
}

TEST_CASE("canonicalize: a square with an augmenting path is unchanged") {
  // a-b-c-d-a with M = {ab}, M_opt = {ad, bc}.
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Matching m = make_matching(g, {{0, 1}});
  Matching opt = make_matching(g, {{0, 3}, {1, 2}});
  Matching c = canonicalize_opt(g, m, opt);
  CHECK(c.contains(0, 3));
  CHECK(c.contains(1, 2));
}

TEST_CASE("canonicalize: an alternating 4-cycle becomes two one-one paths") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Matching m = make_matching(g, {{0, 1}, {2, 3}});
  Matching opt = make_matching(g, {{1, 2}, {3, 0}});
  Matching c = canonicalize_opt(g, m, opt);
  CHECK(c.contains(0, 1));
  CHECK(c.contains(2, 3));
  ComponentDecomposition d = decompose(g, m, c);
  REQUIRE(d.components.size() == 2);
  for (const Component& x : d.components) CHECK(x.kind == ComponentKind::kOneOnePath);
  CHECK_THROWS_AS(decompose(g, m, opt), Error);
}

TEST_CASE("canonicalize: even path swapped, non-maximum optimum rejected") {
  // Path 0-1-2-3-4 with M = {12, 34} and M_opt = {01, 23}: even path.
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  Matching m = make_matching(g, {{1, 2}, {3, 4}});
  Matching opt = make_matching(g, {{0, 1}, {2, 3}});
  Matching c = canonicalize_opt(g, m, opt);
  ComponentDecomposition d = decompose(g, m, c);
  CHECK(d.total_w == 2);
  for (const Component& x : d.components) CHECK(x.kind == ComponentKind::kOneOnePath);

  Matching small = make_matching(g, {{1, 2}});
  CHECK_THROWS_AS(canonicalize_opt(g, m, small), Error);
}

TEST_CASE("decompose: perfect versus perfect") {
  Graph g = gen_cycle(8).graph;
  Matching m = make_matching(g, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  ComponentDecomposition d = decompose(g, m, m);
  CHECK(d.components.size() == 4);
  for (const Component& x : d.components) CHECK(x.kind == ComponentKind::kOneOnePath);
}

TEST_CASE("decompose: a 1:2-path") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  Matching m = make_matching(g, {{1, 2}});
  Matching opt = make_matching(g, {{0, 1}, {2, 3}});
  ComponentDecomposition d = decompose(g, m, opt);
  REQUIRE(d.components.size() == 1);
  const Component& x = d.components[0];
  CHECK(x.kind == ComponentKind::kAugmentingPath);
  CHECK(x.m == 1);
  CHECK(x.w == 2);
  CHECK(std::set<Node>(x.endpoints.begin(), x.endpoints.end()) == std::set<Node>{0, 3});
}

TEST_CASE("decompose: MinGreedy on G_{4,2} adds up") {
  Instance inst = gen_gab(4, 2);
  Matching opt = make_matching(inst.graph, *inst.optimum->witness);
  for (int t = 0; t < 50; ++t) {
    MatchResult r = mingreedy(inst.graph, t);
    ComponentDecomposition d =
        decompose(inst.graph, r.matching, canonicalize_opt(inst.graph, r.matching, opt));
    CHECK(d.total_m == r.matching.size());
    CHECK(d.total_w == 6);
    std::size_t m = 0, w = 0;
    for (const Component& x : d.components) {
      m += x.m;
      w += x.w;
      CHECK((x.w == x.m || x.w == x.m + 1));
    }
    CHECK(m == r.matching.size());
    CHECK(w == 6);
  }
}

TEST_CASE("no augmenting paths means no transfers") {
  Graph g = gen_cycle(6).graph;
  MatchResult r = det_mingreedy(g);
  REQUIRE(r.matching.size() == 3);
  CertificationResult res = certify_execution(g, r.trace, r.matching, TransferMode::kRegular, 3);
  CHECK(res.ledger.transfers.empty());
  CHECK(res.passed());
}

TEST_CASE("one-one path bound for delta 3 is 2") {
  Graph g(2, {{0, 1}});
  MatchResult r = det_mingreedy(g);
  CertificationResult res = certify_execution(g, r.trace, r.matching, TransferMode::kRegular, 3);
  REQUIRE(res.report.rows.size() == 1);
  CHECK(res.report.rows[0].bound == 2);
  CHECK(res.report.rows[0].alpha == Rational(1));
}

TEST_CASE("compute_transfers rejects traces of another matching or graph") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  MatchResult r = det_mingreedy(g);
  Matching other = make_matching(g, {{1, 2}});
  Matching opt = make_matching(g, {{0, 1}, {2, 3}});
  ComponentDecomposition d = decompose(g, other, opt);
  CHECK_THROWS_AS(compute_transfers(g, r.trace, d, TransferMode::kRegular, 3), Error);
  ComponentDecomposition ok = decompose(g, r.matching, canonicalize_opt(g, r.matching, opt));
  CHECK_THROWS_AS(compute_transfers(g, r.trace, ok, TransferMode::kRegular, 2), Error);
}

TEST_CASE("every transfer runs over an F-edge into an augmenting-path endpoint") {
  RandomStream rng(41);
  for (int t = 0; t < 200; ++t) {
    Graph g = gen_random_bounded_degree(8 + rng.uniform(9), 3, 20, rng()).graph;
    if (g.num_edges() == 0) continue;
    MatchResult r = mingreedy(g, rng());
    CertificationResult res = certify_execution(g, r.trace, opt_of(g), TransferMode::kRegular, 3);
    const ComponentDecomposition& d = res.decomposition;
    for (const Transfer& x : res.ledger.transfers) {
      CHECK(x.direct);
      CHECK(g.has_edge(x.from, x.to));
      CHECK(d.m_mate[x.from] != kNoNode);
      CHECK(d.m_mate[x.from] != x.to);
      CHECK(d.opt_mate[x.from] != x.to);
      const Component& target = d.components[d.component_of[x.to]];
      CHECK(target.kind == ComponentKind::kAugmentingPath);
      CHECK(std::count(target.endpoints.begin(), target.endpoints.end(), x.to) == 1);
    }
  }
}

TEST_CASE("conservation and aggregation identity hold exactly") {
  RandomStream rng(43);
  for (int t = 0; t < 200; ++t) {
    const std::size_t delta = 3 + rng.uniform(3);
    Graph g = gen_random_bounded_degree(6 + rng.uniform(11), delta, 30, rng()).graph;
    if (g.num_edges() == 0) continue;
    MatchResult r = mingreedy(g, rng());
    for (TransferMode mode : {TransferMode::kRegular, TransferMode::kIndirect}) {
      CertificationResult res =
          certify_execution(g, r.trace, opt_of(g), mode, std::max<std::size_t>(3, g.max_degree()));
      std::int64_t sum = 0;
      Rational funds;
      for (const ComponentRow& row : res.report.rows) {
        const std::int64_t t_x = std::int64_t(row.c) - std::int64_t(row.d);
        sum += t_x;
        funds += Rational(std::int64_t(row.m)) + res.report.theta * t_x;
      }
      CHECK(sum == 0);
      CHECK(funds == Rational(std::int64_t(r.matching.size())));
      CHECK(res.report.conservation_ok);
      CHECK(res.report.funded_ratio == res.report.global_ratio);
    }
  }
}

TEST_CASE("every min-degree execution on small subcubic graphs certifies") {
  std::size_t executions = 0;
  for (std::size_t n = 2; n <= 7; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n, 3)) {
      Matching opt = opt_of(g);
      for (const MatchResult& r : enumerate_min_degree_executions(g, 100000)) {
        CertificationResult res = certify_execution(g, r.trace, opt, TransferMode::kRegular, 3);
        CHECK_MESSAGE(res.passed(), graph_to_string(g));
        CHECK(res.report.global_ratio >= Rational(2, 3));
        ++executions;
      }
    }
  }
  CHECK(executions > 0);
}

TEST_CASE("credit lower bound on random cubic graphs") {
  RandomStream rng(47);
  for (int t = 0; t < 100; ++t) {
    Graph g = gen_random_regular(2 * (2 + rng.uniform(4)), 3, rng()).graph;
    MatchResult r = mingreedy(g, rng());
    CertificationResult res = certify_execution(g, r.trace, opt_of(g), TransferMode::kRegular, 3);
    CHECK(res.credits.passed());
    CHECK(res.passed());
  }
}

TEST_CASE("indirect mode: 1:2-paths with one direct credit get one indirect transfer") {
  RandomStream rng(53);
  for (int t = 0; t < 1000; ++t) {
    Graph g = gen_random_bounded_degree(8 + rng.uniform(7), 4, 18, rng()).graph;
    if (g.num_edges() == 0 || g.max_degree() < 4) continue;
    MatchResult r = mingreedy(g, rng());
    CertificationResult res = certify_execution(g, r.trace, opt_of(g), TransferMode::kIndirect, 4);
    CHECK(res.passed());
    const ComponentDecomposition& d = res.decomposition;
    std::vector<std::size_t> direct(d.components.size(), 0);
    for (const Transfer& x : res.ledger.transfers) {
      if (x.direct) ++direct[d.component_of[x.to]];
    }
    std::size_t expected = 0;
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      const Component& c = d.components[i];
      if (c.kind == ComponentKind::kAugmentingPath && c.m == 1 && direct[i] == 1) ++expected;
    }
    CHECK(indirect_count(res.ledger) == expected);
    for (const Transfer& x : res.ledger.transfers) {
      if (x.direct) continue;
      // The sender is the M-mate of the node that sent the direct credit.
      bool found = false;
      for (const Transfer& y : res.ledger.transfers) {
        if (y.direct && y.to == x.to && d.m_mate[y.from] == x.from) found = true;
      }
      CHECK(found);
      const Component& c = d.components[d.component_of[x.to]];
      CHECK(c.m == 1);
      // alpha = 1/2 + theta once both credits arrive.
      CHECK(res.report.rows[d.component_of[x.to]].alpha >= Rational(1, 2) + res.ledger.theta);
    }
  }
}

TEST_CASE("indirect transfer in the Fig. 8 scenario") {
  // e=0, f=1, d=2, u=3, v=4, w=5. MinGreedy picks e-f (creating the 1:2-path
  // d-e-f-w), then u-v with u of degree 1; w gets its only direct credit
  // from v.
  Graph g(6, {{2, 0}, {0, 1}, {1, 5}, {4, 5}, {4, 3}, {1, 3}, {1, 2}});
  MatchResult r = det_mingreedy(g);
  REQUIRE(r.trace.steps.size() == 2);
  CHECK(r.trace.steps[0].first == 0);
  CHECK(r.trace.steps[0].mate == 1);
  CHECK(r.trace.steps[1].first == 3);
  Matching opt = make_matching(g, {{2, 0}, {1, 5}, {3, 4}});
  CertificationResult res = certify_execution(g, r.trace, opt, TransferMode::kIndirect, 4);
  CHECK(res.passed());
  REQUIRE(res.ledger.transfers.size() == 2);
  const Transfer& direct = res.ledger.transfers[0];
  const Transfer& indirect = res.ledger.transfers[1];
  CHECK(direct.direct);
  CHECK(direct.from == 4);
  CHECK(direct.to == 5);
  CHECK_FALSE(indirect.direct);
  CHECK(indirect.from == 3);
  CHECK(indirect.to == 5);
  const std::size_t x = res.decomposition.component_of[5];
  CHECK(res.report.rows[x].alpha == Rational(1, 2) + Rational(1, 12));
  CHECK(res.report.rows[x].d == 0);
  CHECK(res.report.rows[x].c == 2);

  // Without the indirect system the same execution gives one credit only.
  CertificationResult reg = certify_execution(g, r.trace, opt, TransferMode::kRegular, 4);
  CHECK(indirect_count(reg.ledger) == 0);
}

TEST_CASE("indirect mode: augmenting-path creators send nothing") {
  RandomStream rng(59);
  for (int t = 0; t < 200; ++t) {
    Graph g = gen_random_bounded_degree(10, 5, 22, rng()).graph;
    if (g.num_edges() == 0) continue;
    MatchResult r = mingreedy(g, rng());
    CertificationResult res = certify_execution(g, r.trace, opt_of(g), TransferMode::kIndirect,
                                                std::max<std::size_t>(3, g.max_degree()));
    CHECK(res.passed());
    CHECK(res.creation.passed());
  }
}

TEST_CASE("endpoint degree check") {
  RandomStream rng(61);
  for (int t = 0; t < 100; ++t) {
    Instance inst = gen_erdos_renyi(10 + rng.uniform(8), 20, rng());
    MatchResult r = mingreedy(inst.graph, rng());
    Matching opt = opt_of(inst.graph);
    ComponentDecomposition d =
        decompose(inst.graph, r.matching, canonicalize_opt(inst.graph, r.matching, opt));
    CHECK(endpoint_degree_check(inst.graph, d).passed());
  }
  // Fabricated: a 1:2-path whose endpoints are leaves.
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  Matching m = make_matching(g, {{1, 2}});
  Matching opt = make_matching(g, {{0, 1}, {2, 3}});
  CHECK(endpoint_degree_check(g, decompose(g, m, opt)).violations.size() == 2);
  // Paths have no augmenting paths under MinGreedy.
  Graph p = gen_path(9).graph;
  MatchResult r = mingreedy(p, 3);
  ComponentDecomposition dp =
      decompose(p, r.matching, canonicalize_opt(p, r.matching, opt_of(p)));
  for (const Component& c : dp.components) CHECK(c.kind == ComponentKind::kOneOnePath);
}

TEST_CASE("report json carries rows as fractions") {
  Instance inst = gen_gab(4, 2);
  MatchResult r = mingreedy(inst.graph, 1);
  CertificationResult res = certify_execution(
      inst.graph, r.trace, make_matching(inst.graph, *inst.optimum->witness),
      TransferMode::kIndirect, 5);
  std::string j = cert_report_json(res);
  CHECK(j.find("\"components\"") != std::string::npos);
  CHECK(j.find("/") != std::string::npos);
}
