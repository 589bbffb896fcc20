#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greedy_lab/graph.hpp"
#include "greedy_lab/matching.hpp"
#include "greedy_lab/tie_policy.hpp"

namespace greedy_lab {

enum class Algorithm { kGreedy, kMrg, kMinGreedy, kKarpSipser, kEdsm, kMds };

// "greedy", "mrg", "mingreedy", "karp-sipser", "edsm", "mds".
Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algorithm);
// True for algorithms whose first endpoint always has minimum degree.
bool is_min_degree_algorithm(Algorithm algorithm);

// `first` decides among candidate first endpoints (or edges, for the
// uniform-edge steps of Greedy and Karp-Sipser); `second` among candidate
// mates.
struct MatcherConfig {
  Algorithm algorithm = Algorithm::kMinGreedy;
  TiePolicy first = UniformTie{};
  TiePolicy second = UniformTie{};
  std::uint64_t seed = 0;
};

struct MatchResult {
  Matching matching;
  ExecutionTrace trace;
};

MatchResult run_matcher(const Graph& g, const MatcherConfig& cfg);

// Uniformly random live edge.
MatchResult run_greedy(const Graph& g, const MatcherConfig& cfg);
// Random non-isolated node, then a random neighbor.
MatchResult run_mrg(const Graph& g, const MatcherConfig& cfg);
// Random node of minimum nonzero degree, then a random neighbor.
MatchResult run_mingreedy(const Graph& g, const MatcherConfig& cfg);
// A random degree-1 node and its neighbor if one exists, else a random edge.
MatchResult run_karp_sipser(const Graph& g, const MatcherConfig& cfg);
// Minimum-degree node matched to a minimum-degree neighbor.
MatchResult run_edsm(const Graph& g, const MatcherConfig& cfg);
// Edge with minimum endpoint degree sum.
MatchResult run_mds(const Graph& g, const MatcherConfig& cfg);

// Every distinct execution of a min-degree algorithm under arbitrary tie
// breaking, deduplicated by the sequence of matched edges. Throws
// Error(kExplosion) once more than `limit` executions exist.
std::vector<MatchResult> enumerate_min_degree_executions(const Graph& g,
                                                         std::size_t limit);

}  // namespace greedy_lab
