#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <set>

#include "doctest.h"
#include "greedy_lab/error.hpp"
#include "greedy_lab/exact.hpp"
#include "greedy_lab/instances.hpp"
#include "greedy_lab/matchers.hpp"
#include "greedy_lab/random_stream.hpp"

using namespace greedy_lab;

namespace {

void check_certified(const Instance& inst) {
  REQUIRE(inst.optimum);
  validate_certificate(inst.graph, *inst.optimum);
  if (inst.optimum->witness) CHECK(verify_matching(inst.graph, *inst.optimum->witness).valid);
}

std::size_t count_label(const Instance& inst, const std::string& label) {
  return std::count(inst.labels.begin(), inst.labels.end(), label);
}

double mingreedy_mean_ratio(const Instance& inst, int trials, std::uint64_t seed) {
  double sum = 0;
  for (int t = 0; t < trials; ++t) {
    MatcherConfig c;
    c.seed = derive_seed(seed, {}, t);
    sum += double(run_matcher(inst.graph, c).matching.size()) / inst.optimum->size;
  }
  return sum / trials;
}

}  // namespace

TEST_CASE("G_{4,2}: sizes, degrees and optimum") {
  Instance inst = gen_gab(4, 2);
  CHECK(inst.graph.num_nodes() == 12);
  check_certified(inst);
  CHECK(inst.optimum->size == 6);
  for (Node x = 0; x < 12; ++x) {
    const std::string& l = inst.labels[x];
    if (l == "S1") CHECK(inst.graph.degree(x) == 5);
    if (l == "S2") CHECK(inst.graph.degree(x) == 2);
    if (l == "S3") CHECK(inst.graph.degree(x) == 5);
  }
  CHECK(count_label(inst, "S1") == 4);
  CHECK(count_label(inst, "S2") == 4);
  CHECK(count_label(inst, "S3") == 4);
}

TEST_CASE("G_{a,b} degree profile closed forms") {
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{100, 10}, {36, 6}, {20, 4}, {100, 2}}) {
    Instance inst = gen_gab(a, b);
    check_certified(inst);
    CHECK(inst.optimum->size == a + ceil_sqrt(a));
    for (Node x = 0; x < inst.graph.num_nodes(); ++x) {
      const std::string& l = inst.labels[x];
      if (l == "S1") CHECK(inst.graph.degree(x) == 2 * ceil_sqrt(a) + 1);
      if (l == "S2") CHECK(inst.graph.degree(x) == b);
      if (l == "S3") CHECK(inst.graph.degree(x) == a + 1);
    }
  }
}

TEST_CASE("G_{a,b} rejects bad parameters") {
  CHECK_THROWS_AS(gen_gab(9, 3), Error);
  CHECK_THROWS_AS(gen_gab(10, 4), Error);
  CHECK_THROWS_AS(gen_gab(2, 2), Error);
}

TEST_CASE("bipartite double of G_{a,sqrt a}") {
  Instance small = gen_gab_bipartite_double(4);
  CHECK_FALSE(two_coloring(small.graph).empty());
  check_certified(small);

  Instance inst = gen_gab_bipartite_double(100);
  CHECK_FALSE(two_coloring(inst.graph).empty());
  check_certified(inst);
  CHECK(inst.optimum->size >= 2 * 100 + 2 * 10);
  for (Node x = 0; x < inst.graph.num_nodes(); ++x) {
    if (inst.labels[x] == "L:S2" || inst.labels[x] == "R:S2") CHECK(inst.graph.degree(x) == 11);
  }
  CHECK_THROWS_AS(gen_gab_bipartite_double(50), Error);
  CHECK_THROWS_AS(gen_gab_bipartite_double(9), Error);
}

TEST_CASE("G_{a,2} bipartite variant") {
  Instance inst = gen_ga2_bipartite(16);
  CHECK_FALSE(two_coloring(inst.graph).empty());
  check_certified(inst);
  for (Node x = 0; x < inst.graph.num_nodes(); ++x) {
    if (inst.labels[x] == "S2") CHECK(inst.graph.degree(x) == 2);
  }
  CHECK(count_label(inst, "S3'") == 2 * ceil_sqrt(16));
  CHECK_THROWS_AS(gen_ga2_bipartite(17), Error);
  CHECK_THROWS_AS(gen_ga2_bipartite(14), Error);

  Instance big = gen_ga2_bipartite(100);
  check_certified(big);
  MatcherConfig c;
  c.algorithm = Algorithm::kEdsm;
  for (int t = 0; t < 5; ++t) {
    c.seed = t;
    std::size_t m = run_matcher(big.graph, c).matching.size();
    CHECK(m * 100 <= (50 + 40) * big.optimum->size);
  }
}

TEST_CASE("Fig. 2 and Fig. 3 gadgets") {
  Instance f2 = gen_fig2_gadget();
  std::vector<std::size_t> deg;
  for (Node x = 0; x < 6; ++x) deg.push_back(f2.graph.degree(x));
  CHECK(deg == std::vector<std::size_t>{2, 3, 2, 3, 2, 2});
  CHECK(f2.graph.num_edges() == 7);

  Instance f3 = gen_fig3_gadget();
  CHECK(f3.graph.degree(0) == 3);
  CHECK(f3.graph.num_edges() == 7);

  std::array<Node, 6> lab{0, 1, 2, 3, 4, 5};
  RandomStream rng(4);
  for (int t = 0; t < 50; ++t) {
    std::shuffle(lab.begin(), lab.end(), rng);
    Instance g = gen_fig2_gadget(lab);
    CHECK(max_matching_bruteforce(g.graph).size == 3);
    check_certified(g);
    CHECK(g.graph.degree(lab[0]) == 2);
    CHECK(g.graph.degree(lab[1]) == 3);
  }
  CHECK_THROWS_AS(gen_fig2_gadget({0, 0, 1, 2, 3, 4}), Error);
}

TEST_CASE("random families") {
  Instance er = gen_erdos_renyi(50, 100, 1);
  CHECK(er.graph.num_edges() == 100);
  Instance rr = gen_random_regular(100, 3, 2);
  for (Node x = 0; x < 100; ++x) CHECK(rr.graph.degree(x) == 3);
  CHECK_THROWS_AS(gen_random_regular(7, 3, 1), Error);
  Instance bd = gen_random_bounded_degree(60, 4, 100, 3);
  CHECK(bd.graph.max_degree() <= 4);
  CHECK(gen_erdos_renyi(50, 100, 1).graph == er.graph);
  CHECK_FALSE(gen_erdos_renyi(50, 100, 2).graph == er.graph);
}

TEST_CASE("paths and cycles") {
  Instance p5 = gen_path(5);
  check_certified(p5);
  CHECK(p5.optimum->size == 2);
  Instance c7 = gen_cycle(7);
  check_certified(c7);
  CHECK(c7.optimum->size == 3);
}

TEST_CASE("attach_optimum picks brute force or the bipartite solver") {
  Instance er = gen_erdos_renyi(14, 30, 9);
  attach_optimum(er);
  REQUIRE(er.optimum);
  CHECK(er.optimum->source == OptimumSource::kBruteForce);

  std::vector<Edge> e;
  for (Node i = 0; i < 40; ++i) e.push_back({i, static_cast<Node>(40 + (i * 7) % 40)});
  for (Node i = 0; i < 40; ++i) e.push_back({i, static_cast<Node>(40 + (i * 7 + 1) % 40)});
  Instance bip;
  bip.graph = Graph(80, e);
  attach_optimum(bip);
  REQUIRE(bip.optimum);
  CHECK(bip.optimum->source == OptimumSource::kBipartiteSolver);
  CHECK(bip.optimum->size == 40);
}

TEST_CASE("instance files round trip") {
  auto dir = std::filesystem::temp_directory_path() / "greedy_lab_instances_test";
  std::filesystem::create_directories(dir);
  std::string base = (dir / "gab").string();
  Instance inst = gen_gab(16, 4);
  write_instance(base, inst);
  Instance back = read_instance(base);
  CHECK(back.graph == inst.graph);
  CHECK(back.family == "gab");
  CHECK(back.labels == inst.labels);
  REQUIRE(back.optimum);
  CHECK(back.optimum->size == inst.optimum->size);
  CHECK(back.optimum->source == OptimumSource::kGeneratorCertified);
  CHECK_THROWS_AS(read_instance((dir / "missing").string()), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("generator certificates agree with the exact oracles on small instances") {
  for (std::size_t a : {4, 8, 12}) {
    Instance inst = gen_gab(a, 2);
    if (inst.graph.num_nodes() <= kBruteForceMaxNodes) {
      CHECK(max_matching_bruteforce(inst.graph).size == inst.optimum->size);
    }
  }
  Instance d = gen_gab_bipartite_double(4);
  CHECK(max_matching_bipartite(d.graph, two_coloring(d.graph)).size == d.optimum->size);
  for (std::size_t n = 2; n <= 16; ++n) {
    CHECK(max_matching_bruteforce(gen_path(n).graph).size == gen_path(n).optimum->size);
    if (n >= 3) CHECK(max_matching_bruteforce(gen_cycle(n).graph).size == gen_cycle(n).optimum->size);
  }
}

TEST_CASE("connected subcubic graph counts") {
  // Numbers of connected graphs with maximum degree at most 3 on n nodes.
  const std::size_t expected[] = {1, 1, 2, 6, 10, 29, 64, 194};
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(enumerate_connected_graphs(n, 3).size() == expected[n - 1]);
  }
}

TEST_CASE("canonical code is an isomorphism invariant") {
  RandomStream rng(17);
  for (int t = 0; t < 50; ++t) {
    Instance inst = gen_erdos_renyi(8, 10, rng());
    std::vector<Node> perm(8);
    std::iota(perm.begin(), perm.end(), Node{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> e;
    for (const Edge& x : inst.graph.edges()) e.push_back({perm[x.u], perm[x.v]});
    CHECK(canonical_code(Graph(8, e)) == canonical_code(inst.graph));
  }
  CHECK(canonical_code(gen_path(6).graph) != canonical_code(gen_cycle(6).graph));
}

TEST_CASE("MinGreedy on G_{400,20} stays clearly below the optimum") {
  Instance inst = gen_gab(400, 20);
  CHECK(mingreedy_mean_ratio(inst, 10, 3) < 0.7);
}
