#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aces/challenge.hpp"
#include "aces/scores.hpp"
#include "aces/taxonomy.hpp"

namespace aces {

// Kendall tau-like counts over (score_good, score_incorrect) pairs. A pair is
// concordant when the metric puts the good translation strictly above the
// incorrect one; ties count as discordant.
struct CorrelationResult {
  long long concordant = 0;
  long long discordant = 0;

  long long total() const { return concordant + discordant; }
  double tau() const;  // (concordant - discordant) / (concordant + discordant)

  bool operator==(const CorrelationResult&) const = default;
};

// tie_epsilon widens the tie band: |good - incorrect| <= tie_epsilon is a tie
// (and therefore discordant). The default 0 matches the formula literally.
CorrelationResult kendall_tau_like(const std::vector<std::pair<double, double>>& pairs,
                                   double tie_epsilon = 0.0);

// Score pairs for a set of examples; throws std::invalid_argument naming the
// ids that have no score row.
std::vector<std::pair<double, double>> pairs_for(const std::vector<ChallengeExample>& examples,
                                                 const MetricScoreTable& table);

std::map<std::string, CorrelationResult> phenomenon_correlations(
    const std::vector<ChallengeExample>& examples, const MetricScoreTable& table,
    double tie_epsilon = 0.0);

// Unweighted mean of phenomenon taus per top category; only categories with
// at least one phenomenon appear (absent is not zero).
std::map<TopCategory, double> category_rollup(const std::map<std::string, double>& phenomenon_taus,
                                              const PhenomenonTaxonomy& taxonomy);

// Same mean, restricted to mistranslation leaves, keyed by their subcategory.
std::map<MistranslationSub, double> mistranslation_subcategory_rollup(
    const std::map<std::string, double>& phenomenon_taus, const PhenomenonTaxonomy& taxonomy);

double aces_weight(TopCategory c);
inline constexpr double kAcesScoreBound = 29.1;

// Weighted sum of the ten category correlations. Every category must be
// present; refusing to impute zeros keeps a missing category visible.
double aces_score(const std::map<TopCategory, double>& category_taus);

enum class LangGroup { Trained, FromEnglish, IntoEnglish, NoEnglish };

std::string_view langgroup_name(LangGroup g);

inline const std::set<std::string>& default_trained_pairs() {
  static const std::set<std::string> kPairs = {"en-de", "en-ru", "zh-en"};
  return kPairs;
}

LangGroup classify_langpair(const std::string& langpair, const std::set<std::string>& trained_pairs);

// Partition of example ids: trained pairs take precedence, then en-x, x-en,
// x-y. Every example lands in exactly one group.
std::map<LangGroup, std::vector<std::string>> langpair_grouping(
    const std::vector<ChallengeExample>& examples,
    const std::set<std::string>& trained_pairs = default_trained_pairs());

struct MetricReport {
  std::string metric_name;
  std::map<std::string, CorrelationResult> phenomena;
  std::map<TopCategory, double> categories;
  std::map<MistranslationSub, double> subcategories;
  std::optional<double> aces;  // absent when a category has no phenomena
  std::map<LangGroup, CorrelationResult> lang_groups;
};

struct EvalReport {
  std::vector<MetricReport> metrics;  // sorted by metric name
  std::map<std::string, std::size_t> phenomenon_counts;
  std::map<LangGroup, std::size_t> group_counts;
};

struct ReportOptions {
  double tie_epsilon = 0.0;
  std::set<std::string> trained_pairs = default_trained_pairs();
};

EvalReport build_report(const std::vector<ChallengeExample>& examples,
                        const std::vector<MetricScoreTable>& tables,
                        const PhenomenonTaxonomy& taxonomy, const ReportOptions& opts = {});

// Machine-readable report: fixed column schema
// `section<TAB>metric<TAB>key<TAB>value<TAB>concordant<TAB>discordant<TAB>n`,
// full-precision values, rows ordered by (metric, section, key).
std::string render_report_tsv(const EvalReport& report, const std::string& provenance = "");

// Aligned plain-text tables, three decimals.
std::string render_report_txt(const EvalReport& report);

}  // namespace aces
