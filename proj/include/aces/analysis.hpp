#pragma once

#include <set>
#include <string>
#include <vector>

#include "aces/challenge.hpp"
#include "aces/evalharness.hpp"
#include "aces/scores.hpp"

// Diagnostics computed from evaluation outputs: source-sensitivity gains,
// surface-overlap decay across difficulty levels, reference-copy vs synonym
// deltas, and zero-shot language splits.

namespace aces {

struct DeltaResult {
  std::string metric_name;
  double delta = 0.0;  // tau_a - tau_b
  double tau_a = 0.0;
  double tau_b = 0.0;
  long long n_a = 0;
  long long n_b = 0;
};

// Gain from seeing the disambiguating clause in the source: tau on the
// only-ref-ambiguous variant minus tau on the fully ambiguous variant. The
// variant sets are paired, so mismatched sizes raise std::invalid_argument.
DeltaResult source_sensitivity_gain(const CorrelationResult& only_ref_ambiguous,
                                    const CorrelationResult& fully_ambiguous,
                                    const std::string& metric);

struct OverlapDecay {
  double d12 = 0.0;  // tau(level 1) - tau(level 2)
  double d13 = 0.0;  // tau(level 1) - tau(level 3)
};

OverlapDecay overlap_decay(double tau_level1, double tau_level2, double tau_level3);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n-1) form; 0 for a single metric
};

// Per-metric delta = tau(synonym variant) - tau(copy variant), aggregated
// over a metric group. Empty group raises std::invalid_argument.
MeanStd copy_vs_synonym_delta(const std::vector<std::pair<double, double>>& tau_copy_and_synonym);

// delta = tau over examples in WMT langpairs - tau over the rest. Either
// partition being empty raises std::invalid_argument; sides smaller than
// `min_side` only set *underpowered (reporting guard, not a failure).
DeltaResult zeroshot_split(const std::vector<ChallengeExample>& examples,
                           const std::set<std::string>& wmt_langpairs, const MetricScoreTable& table,
                           const std::string& metric, std::size_t min_side = 100,
                           bool* underpowered = nullptr);

}  // namespace aces
