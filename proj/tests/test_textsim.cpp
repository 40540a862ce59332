#include "doctest.h"

#include <string>
#include <vector>

#include "aces/textsim.hpp"
#include "oracles.hpp"

using namespace aces;

namespace {

const std::vector<std::string> kSentences = {
    "The cat sat on the mat.",
    "Die Forscher sammelten Wasserproben aus dem See.",
    "Η πόλη βρίσκεται δίπλα στο ποτάμι.",
    "यह पुल सौ साल पुराना है।",
    "図書館は静かだ。",
    "a",
};

}  // namespace

TEST_CASE("bleu identity is maximal") {
  for (const auto& s : kSentences) {
    CHECK(bleu(s, s) == doctest::Approx(100.0));
  }
}

TEST_CASE("bleu empty inputs") {
  CHECK(bleu("", "reference text") == 0.0);
  CHECK_THROWS_AS(bleu("hypothesis", ""), std::invalid_argument);
}

// Frozen from an n-gram count done by hand before the implementation:
// p1..p4 are all 1 under add-one smoothing, leaving only the brevity
// penalty exp(1 - 4/3).
TEST_CASE("bleu regression fixture: contained hypothesis") {
  double expected = 100.0 * std::exp(1.0 - 4.0 / 3.0);
  CHECK(bleu("the cat sat", "the cat sat down") == doctest::Approx(expected).epsilon(1e-12));
  CHECK(bleu("the cat sat", "the cat sat down") == doctest::Approx(71.65313105737893));
}

// Hand-computed: p1 = 1/2, p2 = 1/2 smoothed, p3 = p4 = 1, equal lengths.
TEST_CASE("bleu regression fixture: partial unigram overlap") {
  CHECK(bleu("the cat", "the dog") == doctest::Approx(100.0 * std::pow(0.25, 0.25)));
}

TEST_CASE("bleu identity dominates any other hypothesis") {
  oracle::TestRng rng(7);
  const std::string ref = "the quick brown fox jumps over the lazy dog";
  for (int i = 0; i < 50; ++i) {
    std::string hyp;
    int words = 1 + static_cast<int>(rng.below(12));
    for (int w = 0; w < words; ++w) {
      static const char* kVocab[] = {"the", "quick", "brown", "fox", "dog", "a", "ran", "over"};
      hyp += kVocab[rng.below(8)];
      hyp += ' ';
    }
    CHECK(bleu(ref, ref) >= bleu(hyp, ref));
  }
}

TEST_CASE("chrf identity and disjoint cases") {
  for (const auto& s : kSentences) {
    CHECK(chrf(s, s) == doctest::Approx(100.0));
  }
  CHECK(chrf("abc", "xyz") == 0.0);
  CHECK(chrf("", "ref") == 0.0);
  CHECK_THROWS_AS(chrf("hyp", "   "), std::invalid_argument);
}

// Frozen from exhaustive n-gram enumeration by hand:
//   n=1: P=1, R=6/7; n=2: P=4/5, R=2/3; n=3: P=1/2, R=2/5; n=4..6: 0.
//   chrF = 100 * (15/17 + 20/29 + 5/12) / 6.
TEST_CASE("chrf regression fixture: banana vs bandana") {
  double expected = 100.0 * (15.0 / 17.0 + 20.0 / 29.0 + 5.0 / 12.0) / 6.0;
  CHECK(chrf("banana", "bandana") == doctest::Approx(expected).epsilon(1e-12));
  CHECK(chrf("banana", "bandana") == doctest::Approx(33.144579670948836));
}

TEST_CASE("chrf ignores whitespace entirely") {
  CHECK(chrf("ab cd", "abcd") == doctest::Approx(100.0));
}

TEST_CASE("levenshtein basics and fixtures") {
  CHECK(levenshtein("", "") == 0);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("kitten", "sitting") == oracle::levenshtein("kitten", "sitting"));
  CHECK(levenshtein("Straße", "Strasse") == 2);
}

TEST_CASE("levenshtein equals the full-matrix oracle on random strings") {
  oracle::TestRng rng(99);
  auto random_string = [&] {
    std::string s;
    std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(4));
    return s;
  };
  for (int i = 0; i < 200; ++i) {
    std::string a = random_string(), b = random_string();
    CHECK(levenshtein(a, b) == oracle::levenshtein(a, b));
  }
}

TEST_CASE("levenshtein symmetry and triangle inequality") {
  oracle::TestRng rng(3);
  auto random_string = [&] {
    std::string s;
    std::size_t len = rng.below(10);
    for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(3));
    return s;
  };
  for (int i = 0; i < 100; ++i) {
    std::string a = random_string(), b = random_string(), c = random_string();
    CHECK(levenshtein(a, b) == levenshtein(b, a));
    CHECK(levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c));
    CHECK(levenshtein(a, a) == 0);
  }
}
