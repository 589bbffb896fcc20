#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace greedy_lab {

// Counter-based generator: the i-th output is a keyed hash of i, so streams
// can be split or jumped without shared state. Satisfies
// UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) : key_(mix(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix(key_ + kGamma * ++counter_); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Independent child stream; does not advance this stream.
  RandomStream split(std::uint64_t child) const;

  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Seed for one experiment cell: hash of the master seed, the cell
// coordinates and the trial index.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coords,
                          std::uint64_t trial);

}  // namespace greedy_lab
