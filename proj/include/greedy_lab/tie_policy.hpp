#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>

#include "greedy_lab/random_stream.hpp"

namespace greedy_lab {

struct UniformTie {};
struct LowestIdTie {};
// Picks candidates[index % candidates.size()].
struct IndexedTie {
  std::size_t index = 0;
};
// Caller-supplied chooser; returns an index into the candidate list.
struct CallbackTie {
  std::function<std::size_t(std::span<const std::uint32_t>)> choose;
};

using TiePolicy = std::variant<UniformTie, LowestIdTie, IndexedTie, CallbackTie>;

// Index of the chosen candidate. Only UniformTie consumes randomness.
std::size_t choose_index(const TiePolicy& policy,
                         std::span<const std::uint32_t> candidates,
                         RandomStream& rng);

// "uniform", "lowest-id", "index:<i>".
TiePolicy parse_tie_policy(const std::string& text);
std::string tie_policy_name(const TiePolicy& policy);

}  // namespace greedy_lab
