#pragma once

#include <cstdint>
#include <string_view>

namespace aces {

// SplitMix64. Every seeded draw in the toolkit goes through this generator
// so outputs are bit-identical across platforms and compilers; the stdlib
// distributions are deliberately avoided for that reason.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n) via 128-bit multiply-high.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, used to derive per-example streams and to fingerprint config files.
std::uint64_t fnv1a64(std::string_view s);

// Independent stream for one (recipe, key) pair under a run seed. Generators
// draw from their own stream so the output of one recipe never depends on
// how many draws another recipe made.
SplitMix64 stream_for(std::uint64_t seed, std::string_view recipe, std::string_view key);

}  // namespace aces
