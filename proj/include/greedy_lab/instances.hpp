#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedy_lab/exact.hpp"
#include "greedy_lab/graph.hpp"

namespace greedy_lab {

struct Instance {
  std::string family;
  std::map<std::string, std::string> params;
  Graph graph;
  std::optional<OptimumCertificate> optimum;
  // Per-node group tag; empty when the family has no groups.
  std::vector<std::string> labels;
};

std::size_t ceil_sqrt(std::size_t a);

// G_{a,b}: S1 = 0..a-1, S2 = a..2a-1, S3 = 2a..2a+c-1 with c = 2*ceil(sqrt(a)).
// S1 x S3 complete, i -- a+i, S3 paired consecutively, S2 split into cliques
// of b consecutive ids. Needs b even, b | a, a >= 4.
Instance gen_gab(std::size_t a, std::size_t b);
// Two copies L (ids 0..N-1) and R (ids N..2N-1) of G_{a,sqrt(a)}; S3 pairs
// replaced by L-R counterpart edges, S2 cliques by complete bipartite graphs
// between a clique and its counterpart. Needs a to be an even square, a >= 4.
Instance gen_gab_bipartite_double(std::size_t a);
// G_{a,2} made bipartite: S3 pairs dropped, extra group S3' of size c;
// even S1 ids join all of S3, odd S1 ids all of S3'. Needs a even, a >= 16.
Instance gen_ga2_bipartite(std::size_t a);

// Six-node gadget u,v,w,z,b,c with edges uv uw vw vz zb zc bc (u has degree
// 2). labeling[role] is the node id of role u,v,w,z,b,c (in that order).
Instance gen_fig2_gadget(const std::array<Node, 6>& labeling = {0, 1, 2, 3, 4, 5});
// Same shape with u in v's place: edges vu vw uw uz zb zc bc (u has degree 3).
Instance gen_fig3_gadget(const std::array<Node, 6>& labeling = {0, 1, 2, 3, 4, 5});

// Uniform simple graph with exactly m edges.
Instance gen_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed);
// Pairing model, resampled until simple. Throws Error(kInfeasible) when n*d
// is odd or d >= n.
Instance gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);
// Random edges added one by one while both endpoints have degree below
// max_degree, until m edges exist or no progress is likely.
Instance gen_random_bounded_degree(std::size_t n, std::size_t max_degree,
                                   std::size_t m, std::uint64_t seed);
Instance gen_path(std::size_t n);
Instance gen_cycle(std::size_t n);

// Attaches a brute-force (n <= 18 or m <= 24) or bipartite-solver optimum
// when none is present and one is cheap to obtain.
void attach_optimum(Instance& inst);

// `<base>.graph` + `<base>.meta.json`.
void write_instance(const std::string& base, const Instance& inst);
Instance read_instance(const std::string& base);

// All connected graphs on n nodes with maximum degree <= max_degree, one per
// isomorphism class. Practical for n <= 9.
std::vector<Graph> enumerate_connected_graphs(std::size_t n,
                                              std::size_t max_degree);
// Canonical adjacency code (n <= 11); equal iff the graphs are isomorphic.
std::uint64_t canonical_code(const Graph& g);

}  // namespace greedy_lab
