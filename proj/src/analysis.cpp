#include "aces/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace aces {

DeltaResult source_sensitivity_gain(const CorrelationResult& only_ref_ambiguous,
                                    const CorrelationResult& fully_ambiguous,
                                    const std::string& metric) {
  if (only_ref_ambiguous.total() != fully_ambiguous.total()) {
    throw std::invalid_argument(
        "source_sensitivity_gain: variant sets are not paired (" +
        std::to_string(only_ref_ambiguous.total()) + " vs " +
        std::to_string(fully_ambiguous.total()) + " examples)");
  }
  DeltaResult r;
  r.metric_name = metric;
  r.tau_a = only_ref_ambiguous.tau();
  r.tau_b = fully_ambiguous.tau();
  r.delta = r.tau_a - r.tau_b;
  r.n_a = only_ref_ambiguous.total();
  r.n_b = fully_ambiguous.total();
  return r;
}

OverlapDecay overlap_decay(double tau_level1, double tau_level2, double tau_level3) {
  return {tau_level1 - tau_level2, tau_level1 - tau_level3};
}

MeanStd copy_vs_synonym_delta(const std::vector<std::pair<double, double>>& tau_copy_and_synonym) {
  if (tau_copy_and_synonym.empty()) {
    throw std::invalid_argument("copy_vs_synonym_delta: empty metric group");
  }
  std::vector<double> deltas;
  deltas.reserve(tau_copy_and_synonym.size());
  for (const auto& [tau_copy, tau_synonym] : tau_copy_and_synonym) {
    deltas.push_back(tau_synonym - tau_copy);
  }
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  double stddev = 0.0;
  if (deltas.size() > 1) {
    double ss = 0.0;
    for (double d : deltas) ss += (d - mean) * (d - mean);
    stddev = std::sqrt(ss / static_cast<double>(deltas.size() - 1));
  }
  return {mean, stddev};
}

DeltaResult zeroshot_split(const std::vector<ChallengeExample>& examples,
                           const std::set<std::string>& wmt_langpairs, const MetricScoreTable& table,
                           const std::string& metric, std::size_t min_side, bool* underpowered) {
  std::vector<ChallengeExample> wmt, rest;
  for (const auto& ex : examples) {
    (wmt_langpairs.count(ex.langpair) ? wmt : rest).push_back(ex);
  }
  if (wmt.empty()) throw std::invalid_argument("zeroshot_split: no examples in WMT langpairs");
  if (rest.empty()) throw std::invalid_argument("zeroshot_split: no examples outside WMT langpairs");
  if (underpowered) {
    *underpowered = wmt.size() < min_side || rest.size() < min_side;
  }
  CorrelationResult tau_wmt = kendall_tau_like(pairs_for(wmt, table));
  CorrelationResult tau_rest = kendall_tau_like(pairs_for(rest, table));
  DeltaResult r;
  r.metric_name = metric;
  r.tau_a = tau_wmt.tau();
  r.tau_b = tau_rest.tau();
  r.delta = r.tau_a - r.tau_b;
  r.n_a = tau_wmt.total();
  r.n_b = tau_rest.total();
  return r;
}

}  // namespace aces
