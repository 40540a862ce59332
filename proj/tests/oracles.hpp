#pragma once

// Independent oracles used to freeze expected values. These stay separate
// from the library implementations on purpose: full-matrix DP instead of the
// two-row variant, naive pair loops instead of the counting in evalharness,
// rational largest-remainder allocation instead of integer-scaled division.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aces/text.hpp"

namespace oracle {

// Full-matrix Levenshtein over Unicode scalar values.
inline std::int64_t levenshtein(const std::string& a, const std::string& b) {
  std::u32string s = aces::text::decode_utf8(a);
  std::u32string t = aces::text::decode_utf8(b);
  std::vector<std::vector<std::int64_t>> d(s.size() + 1,
                                           std::vector<std::int64_t>(t.size() + 1, 0));
  for (std::size_t i = 0; i <= s.size(); ++i) d[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= t.size(); ++j) d[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    for (std::size_t j = 1; j <= t.size(); ++j) {
      std::int64_t cost = s[i - 1] == t[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
    }
  }
  return d[s.size()][t.size()];
}

// Naive pair classifier: ranks good above incorrect, ties discordant.
struct PairCounts {
  long long concordant = 0;
  long long discordant = 0;
};

inline PairCounts classify_pairs(const std::vector<std::pair<double, double>>& pairs) {
  PairCounts c;
  for (const auto& p : pairs) {
    bool good_wins = p.first > p.second;
    bool tie = p.first == p.second;
    if (good_wins && !tie) {
      ++c.concordant;
    } else {
      ++c.discordant;
    }
  }
  return c;
}

// Largest-remainder seat allocation with exact rational remainders
// (numerator comparison); ties broken by name order.
inline std::map<std::string, std::size_t> largest_remainder(
    const std::map<std::string, std::size_t>& group_sizes, std::size_t cap) {
  std::size_t total = 0;
  for (const auto& [name, n] : group_sizes) total += n;
  std::map<std::string, std::size_t> alloc;
  std::vector<std::pair<std::size_t, std::string>> remainders;  // (cap*n mod total, name)
  std::size_t assigned = 0;
  for (const auto& [name, n] : group_sizes) {
    alloc[name] = cap * n / total;
    assigned += alloc[name];
    remainders.emplace_back(cap * n % total, name);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < cap; ++i, ++assigned) alloc[remainders[i].second] += 1;
  return alloc;
}

// Tiny deterministic generator for property tests, distinct from the
// library's SplitMix64 (xorshift128+).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : a_(seed ^ 0x9E3779B97F4A7C15ULL), b_(seed | 1) {}

  std::uint64_t next() {
    std::uint64_t x = a_, y = b_;
    a_ = y;
    x ^= x << 23;
    b_ = x ^ y ^ (x >> 17) ^ (y >> 26);
    return b_ + y;
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

 private:
  std::uint64_t a_, b_;
};

}  // namespace oracle
