#include "greedy_lab/random_stream.hpp"

namespace greedy_lab {

std::uint64_t RandomStream::mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t RandomStream::uniform(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 product =
      static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

RandomStream RandomStream::split(std::uint64_t child) const {
  RandomStream out;
  out.key_ = mix(key_ ^ mix(child + 0x632be59bd9b4e019ULL));
  return out;
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coords,
                          std::uint64_t trial) {
  std::uint64_t h = RandomStream::mix(master ^ 0x243f6a8885a308d3ULL);
  for (std::uint64_t c : coords) h = RandomStream::mix(h ^ RandomStream::mix(c + 1));
  return RandomStream::mix(h ^ RandomStream::mix(trial + 0x13198a2e03707344ULL));
}

}  // namespace greedy_lab
