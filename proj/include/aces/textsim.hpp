#pragma once

#include <cstdint>
#include <string_view>

namespace aces {

// Sentence BLEU. Token n-grams up to max_order, geometric mean with add-one
// count smoothing for orders >= 2, brevity penalty exp(1 - |ref|/|hyp|)
// whenever the hypothesis is shorter. Tokenization splits punctuation into
// single-character tokens first, then splits on Unicode whitespace.
struct BleuConfig {
  int max_order = 4;
};

// chrF. Character n-grams up to max_order after all whitespace is removed;
// per-order F_beta averaged over the orders where either side has n-grams.
struct ChrfConfig {
  int max_order = 6;
  double beta = 2.0;
};

// Returns BLEU on the 0-100 scale. Empty hypothesis scores 0; an empty
// reference violates the precondition and throws std::invalid_argument.
double bleu(std::string_view hypothesis, std::string_view reference, const BleuConfig& cfg = {});

// Returns chrF on the 0-100 scale; same empty-input contract as bleu().
double chrf(std::string_view hypothesis, std::string_view reference, const ChrfConfig& cfg = {});

// Minimal insert/delete/substitute count over Unicode scalar values.
std::int64_t levenshtein(std::string_view a, std::string_view b);

}  // namespace aces
