#include "aces/rng.hpp"

namespace aces {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

SplitMix64 stream_for(std::uint64_t seed, std::string_view recipe, std::string_view key) {
  std::uint64_t h = fnv1a64(recipe);
  h ^= fnv1a64(key) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return SplitMix64(seed ^ h);
}

}  // namespace aces
