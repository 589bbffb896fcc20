#include "greedy_lab/tie_policy.hpp"

#include <algorithm>

#include "greedy_lab/error.hpp"

namespace greedy_lab {

std::size_t choose_index(const TiePolicy& policy,
                         std::span<const std::uint32_t> candidates,
                         RandomStream& rng) {
  if (candidates.empty()) {
    throw Error(ErrorKind::kEmptyGraph, "no candidate to choose from");
  }
  if (candidates.size() == 1) return 0;
  if (std::holds_alternative<UniformTie>(policy)) {
    return static_cast<std::size_t>(rng.uniform(candidates.size()));
  }
  if (std::holds_alternative<LowestIdTie>(policy)) {
    return static_cast<std::size_t>(
        std::min_element(candidates.begin(), candidates.end()) -
        candidates.begin());
  }
  if (const auto* indexed = std::get_if<IndexedTie>(&policy)) {
    return indexed->index % candidates.size();
  }
  const auto& callback = std::get<CallbackTie>(policy);
  std::size_t i = callback.choose(candidates);
  if (i >= candidates.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "tie callback returned an out-of-range index");
  }
  return i;
}

TiePolicy parse_tie_policy(const std::string& text) {
  if (text == "uniform") return UniformTie{};
  if (text == "lowest-id") return LowestIdTie{};
  if (text.rfind("index:", 0) == 0) {
    try {
      return IndexedTie{static_cast<std::size_t>(std::stoull(text.substr(6)))};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown tie policy '" + text + "'");
}

std::string tie_policy_name(const TiePolicy& policy) {
  if (std::holds_alternative<UniformTie>(policy)) return "uniform";
  if (std::holds_alternative<LowestIdTie>(policy)) return "lowest-id";
  if (const auto* indexed = std::get_if<IndexedTie>(&policy)) {
    return "index:" + std::to_string(indexed->index);
  }
  return "callback";
}

}  // namespace greedy_lab
