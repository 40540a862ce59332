#include "aces/textsim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aces/text.hpp"

namespace aces {

namespace {

// Clipped n-gram matches for one order, over any random-access token sequence.
template <typename Seq>
void ngram_stats(const Seq& hyp, const Seq& ref, std::size_t n, std::size_t* matches,
                 std::size_t* hyp_total, std::size_t* ref_total) {
  using Gram = std::vector<typename Seq::value_type>;
  std::map<Gram, std::size_t> ref_counts;
  std::size_t ref_n = ref.size() + 1 > n ? ref.size() + 1 - n : 0;
  for (std::size_t i = 0; i < ref_n; ++i) {
    Gram g(ref.begin() + i, ref.begin() + i + n);
    ++ref_counts[g];
  }
  std::size_t hyp_n = hyp.size() + 1 > n ? hyp.size() + 1 - n : 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < hyp_n; ++i) {
    Gram g(hyp.begin() + i, hyp.begin() + i + n);
    auto it = ref_counts.find(g);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++m;
    }
  }
  *matches = m;
  *hyp_total = hyp_n;
  *ref_total = ref_n;
}

}  // namespace

double bleu(std::string_view hypothesis, std::string_view reference, const BleuConfig& cfg) {
  std::vector<std::string> ref = text::bleu_tokens(reference);
  if (ref.empty()) throw std::invalid_argument("bleu: empty reference");
  std::vector<std::string> hyp = text::bleu_tokens(hypothesis);
  if (hyp.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= cfg.max_order; ++n) {
    std::size_t matches = 0, hyp_total = 0, ref_total = 0;
    ngram_stats(hyp, ref, static_cast<std::size_t>(n), &matches, &hyp_total, &ref_total);
    double precision;
    if (n == 1) {
      precision = static_cast<double>(matches) / static_cast<double>(hyp_total);
      if (precision == 0.0) return 0.0;
    } else {
      precision = (static_cast<double>(matches) + 1.0) / (static_cast<double>(hyp_total) + 1.0);
    }
    log_sum += std::log(precision);
  }
  double score = std::exp(log_sum / cfg.max_order);
  if (hyp.size() < ref.size()) {
    score *= std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(hyp.size()));
  }
  return 100.0 * score;
}

double chrf(std::string_view hypothesis, std::string_view reference, const ChrfConfig& cfg) {
  std::u32string ref = text::decode_utf8(text::remove_whitespace(reference));
  if (ref.empty()) throw std::invalid_argument("chrf: empty reference");
  std::u32string hyp = text::decode_utf8(text::remove_whitespace(hypothesis));
  if (hyp.empty()) return 0.0;

  double beta2 = cfg.beta * cfg.beta;
  double f_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= cfg.max_order; ++n) {
    std::size_t matches = 0, hyp_total = 0, ref_total = 0;
    ngram_stats(hyp, ref, static_cast<std::size_t>(n), &matches, &hyp_total, &ref_total);
    if (hyp_total == 0 && ref_total == 0) continue;  // both too short for this order
    ++orders;
    if (matches == 0) continue;  // f = 0
    double p = static_cast<double>(matches) / static_cast<double>(hyp_total);
    double r = static_cast<double>(matches) / static_cast<double>(ref_total);
    f_sum += (1.0 + beta2) * p * r / (beta2 * p + r);
  }
  if (orders == 0) return 0.0;
  return 100.0 * f_sum / orders;
}

std::int64_t levenshtein(std::string_view a, std::string_view b) {
  std::u32string s = text::decode_utf8(a);
  std::u32string t = text::decode_utf8(b);
  if (s.size() > t.size()) std::swap(s, t);

  std::vector<std::int64_t> row(s.size() + 1);
  for (std::size_t i = 0; i <= s.size(); ++i) row[i] = static_cast<std::int64_t>(i);
  for (std::size_t j = 1; j <= t.size(); ++j) {
    std::int64_t diag = row[0];
    row[0] = static_cast<std::int64_t>(j);
    for (std::size_t i = 1; i <= s.size(); ++i) {
      std::int64_t subst = diag + (s[i - 1] == t[j - 1] ? 0 : 1);
      diag = row[i];
      row[i] = std::min({row[i] + 1, row[i - 1] + 1, subst});
    }
  }
  return row[s.size()];
}

}  // namespace aces
