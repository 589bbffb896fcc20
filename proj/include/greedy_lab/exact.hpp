#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greedy_lab/graph.hpp"
#include "greedy_lab/matching.hpp"

namespace greedy_lab {

enum class OptimumSource { kBipartiteSolver, kBruteForce, kGeneratorCertified };

std::string optimum_source_name(OptimumSource source);
OptimumSource parse_optimum_source(const std::string& name);

struct OptimumCertificate {
  std::size_t size = 0;
  std::optional<std::vector<Edge>> witness;
  OptimumSource source = OptimumSource::kGeneratorCertified;
  // Optional vertex cover of the same size; proves the witness maximum.
  std::optional<std::vector<Node>> cover;
};

// Hopcroft-Karp. sides[x] in {0,1}; throws Error(kInvalidBipartition) if an
// edge joins two nodes of the same side. The result is re-checked for the
// absence of augmenting paths and carries a Konig vertex cover.
OptimumCertificate max_matching_bipartite(const Graph& g,
                                          const std::vector<std::uint8_t>& sides);

inline constexpr std::size_t kBruteForceMaxNodes = 18;
inline constexpr std::size_t kBruteForceMaxEdges = 24;

// Exact maximum matching of a general graph by memoized search over the
// set of still-available nodes, per connected component. Throws
// Error(kTooLarge) unless n <= 18 or m <= 24.
OptimumCertificate max_matching_bruteforce(const Graph& g);

struct MatchingReport {
  bool valid = false;
  bool maximal = false;
  std::size_t size = 0;
  std::vector<std::string> problems;
};

MatchingReport verify_matching(const Graph& g, const std::vector<Edge>& pairs);
inline MatchingReport verify_matching(const Graph& g, const Matching& m) {
  return verify_matching(g, m.edges());
}

// Throws Error(kInvalidMatching) if the witness or cover does not support the
// stated size.
void validate_certificate(const Graph& g, const OptimumCertificate& cert);

}  // namespace greedy_lab
