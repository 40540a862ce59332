#include "aces/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace aces {

double CorrelationResult::tau() const {
  long long n = total();
  if (n <= 0) throw std::logic_error("tau undefined on zero pairs");
  return static_cast<double>(concordant - discordant) / static_cast<double>(n);
}

CorrelationResult kendall_tau_like(const std::vector<std::pair<double, double>>& pairs,
                                   double tie_epsilon) {
  if (pairs.empty()) throw std::invalid_argument("kendall_tau_like: no score pairs");
  CorrelationResult r;
  for (const auto& [good, incorrect] : pairs) {
    if (good - incorrect > tie_epsilon) {
      ++r.concordant;
    } else {
      ++r.discordant;  // ties are discordant
    }
  }
  return r;
}

std::vector<std::pair<double, double>> pairs_for(const std::vector<ChallengeExample>& examples,
                                                 const MetricScoreTable& table) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(examples.size());
  std::vector<std::string> missing;
  for (const auto& ex : examples) {
    auto it = table.rows.find(ex.id);
    if (it == table.rows.end()) {
      missing.push_back(ex.id);
      continue;
    }
    pairs.push_back(it->second);
  }
  if (!missing.empty()) {
    std::string msg = "metric '" + table.metric_name + "' is missing scores for " +
                      std::to_string(missing.size()) + " example(s):";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) msg += " " + missing[i];
    if (missing.size() > 10) msg += " ...";
    throw std::invalid_argument(msg);
  }
  return pairs;
}

std::map<std::string, CorrelationResult> phenomenon_correlations(
    const std::vector<ChallengeExample>& examples, const MetricScoreTable& table,
    double tie_epsilon) {
  std::map<std::string, std::vector<ChallengeExample>> by_phenomenon;
  for (const auto& ex : examples) by_phenomenon[ex.phenomenon].push_back(ex);
  std::map<std::string, CorrelationResult> out;
  for (const auto& [phenomenon, group] : by_phenomenon) {
    out.emplace(phenomenon, kendall_tau_like(pairs_for(group, table), tie_epsilon));
  }
  return out;
}

std::map<TopCategory, double> category_rollup(const std::map<std::string, double>& phenomenon_taus,
                                              const PhenomenonTaxonomy& taxonomy) {
  std::map<TopCategory, std::pair<double, int>> sums;
  for (const auto& [leaf, tau] : phenomenon_taus) {
    const PhenomenonInfo& info = taxonomy.info(leaf);  // throws on unknown leaf
    auto& [sum, count] = sums[info.top];
    sum += tau;
    count += 1;
  }
  std::map<TopCategory, double> out;
  for (const auto& [cat, sc] : sums) out[cat] = sc.first / sc.second;
  return out;
}

std::map<MistranslationSub, double> mistranslation_subcategory_rollup(
    const std::map<std::string, double>& phenomenon_taus, const PhenomenonTaxonomy& taxonomy) {
  std::map<MistranslationSub, std::pair<double, int>> sums;
  for (const auto& [leaf, tau] : phenomenon_taus) {
    const PhenomenonInfo& info = taxonomy.info(leaf);
    if (info.top != TopCategory::Mistranslation) continue;
    auto& [sum, count] = sums[info.sub];
    sum += tau;
    count += 1;
  }
  std::map<MistranslationSub, double> out;
  for (const auto& [sub, sc] : sums) out[sub] = sc.first / sc.second;
  return out;
}

double aces_weight(TopCategory c) {
  switch (c) {
    case TopCategory::Addition:
    case TopCategory::Omission:
    case TopCategory::Mistranslation:
    case TopCategory::Overtranslation:
    case TopCategory::Undertranslation:
      return 5.0;
    case TopCategory::Untranslated:
    case TopCategory::DoNotTranslate:
    case TopCategory::RealWorldKnowledge:
    case TopCategory::WrongLanguage:
      return 1.0;
    case TopCategory::Punctuation:
      return 0.1;
  }
  return 0.0;
}

double aces_score(const std::map<TopCategory, double>& category_taus) {
  std::string missing;
  for (TopCategory c : kTopCategories) {
    if (!category_taus.count(c)) {
      if (!missing.empty()) missing += ", ";
      missing += top_category_name(c);
    }
  }
  if (!missing.empty()) {
    throw std::invalid_argument("aces_score: missing categories: " + missing);
  }
  // Fixed summation order; the 0.1-weighted punctuation term comes last.
  double sum = 0.0;
  for (TopCategory c : kTopCategories) {
    sum += aces_weight(c) * category_taus.at(c);
  }
  return sum;
}

std::string_view langgroup_name(LangGroup g) {
  switch (g) {
    case LangGroup::Trained: return "trained";
    case LangGroup::FromEnglish: return "en-x";
    case LangGroup::IntoEnglish: return "x-en";
    case LangGroup::NoEnglish: return "x-y";
  }
  return "?";
}

LangGroup classify_langpair(const std::string& langpair, const std::set<std::string>& trained_pairs) {
  if (trained_pairs.count(langpair)) return LangGroup::Trained;
  if (langpair.rfind("en-", 0) == 0) return LangGroup::FromEnglish;
  if (langpair.size() == 5 && langpair.substr(3) == "en") return LangGroup::IntoEnglish;
  return LangGroup::NoEnglish;
}

std::map<LangGroup, std::vector<std::string>> langpair_grouping(
    const std::vector<ChallengeExample>& examples, const std::set<std::string>& trained_pairs) {
  std::map<LangGroup, std::vector<std::string>> out;
  for (const auto& ex : examples) {
    out[classify_langpair(ex.langpair, trained_pairs)].push_back(ex.id);
  }
  return out;
}

EvalReport build_report(const std::vector<ChallengeExample>& examples,
                        const std::vector<MetricScoreTable>& tables,
                        const PhenomenonTaxonomy& taxonomy, const ReportOptions& opts) {
  EvalReport report;
  for (const auto& ex : examples) report.phenomenon_counts[ex.phenomenon] += 1;

  std::map<LangGroup, std::vector<ChallengeExample>> group_examples;
  for (const auto& ex : examples) {
    group_examples[classify_langpair(ex.langpair, opts.trained_pairs)].push_back(ex);
  }
  for (const auto& [group, members] : group_examples) report.group_counts[group] = members.size();

  std::vector<const MetricScoreTable*> sorted;
  for (const auto& t : tables) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const MetricScoreTable* a, const MetricScoreTable* b) {
    return a->metric_name < b->metric_name;
  });

  for (const MetricScoreTable* table : sorted) {
    MetricReport mr;
    mr.metric_name = table->metric_name;
    mr.phenomena = phenomenon_correlations(examples, *table, opts.tie_epsilon);

    std::map<std::string, double> taus;
    for (const auto& [leaf, corr] : mr.phenomena) taus[leaf] = corr.tau();
    mr.categories = category_rollup(taus, taxonomy);
    mr.subcategories = mistranslation_subcategory_rollup(taus, taxonomy);

    bool complete = true;
    for (TopCategory c : kTopCategories) {
      if (!mr.categories.count(c)) complete = false;
    }
    if (complete) mr.aces = aces_score(mr.categories);

    for (const auto& [group, members] : group_examples) {
      mr.lang_groups[group] = kendall_tau_like(pairs_for(members, *table), opts.tie_epsilon);
    }
    report.metrics.push_back(std::move(mr));
  }
  return report;
}

namespace {

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void tsv_row(std::string& out, const std::string& section, const std::string& metric,
             const std::string& key, const std::string& value, const std::string& concordant,
             const std::string& discordant, const std::string& n) {
  out += section;
  out += '\t';
  out += metric;
  out += '\t';
  out += key;
  out += '\t';
  out += value;
  out += '\t';
  out += concordant;
  out += '\t';
  out += discordant;
  out += '\t';
  out += n;
  out += '\n';
}

// Pads each column of an aligned text table.
class TextTable {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string render() const {
    std::vector<std::size_t> widths;
    for (const auto& r : rows_) {
      if (widths.size() < r.size()) widths.resize(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
    }
    std::string out;
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) out += "  ";
        out += r[i];
        if (i + 1 < r.size()) out.append(widths[i] - r[i].size(), ' ');
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

std::string render_report_tsv(const EvalReport& report, const std::string& provenance) {
  std::string out;
  if (!provenance.empty()) {
    out += "# ";
    out += provenance;
    out += '\n';
  }
  out += "section\tmetric\tkey\tvalue\tconcordant\tdiscordant\tn\n";
  for (const auto& mr : report.metrics) {
    for (const auto& [leaf, corr] : mr.phenomena) {
      tsv_row(out, "phenomenon", mr.metric_name, leaf, fmt_full(corr.tau()),
              std::to_string(corr.concordant), std::to_string(corr.discordant),
              std::to_string(corr.total()));
    }
    for (TopCategory c : kTopCategories) {
      auto it = mr.categories.find(c);
      tsv_row(out, "category", mr.metric_name, std::string(top_category_name(c)),
              it == mr.categories.end() ? "NA" : fmt_full(it->second), "NA", "NA", "NA");
    }
    for (const auto& [sub, mean] : mr.subcategories) {
      tsv_row(out, "mistranslation-subcategory", mr.metric_name, std::string(subcategory_name(sub)),
              fmt_full(mean), "NA", "NA", "NA");
    }
    for (const auto& [group, corr] : mr.lang_groups) {
      tsv_row(out, "langgroup", mr.metric_name, std::string(langgroup_name(group)),
              fmt_full(corr.tau()), std::to_string(corr.concordant),
              std::to_string(corr.discordant), std::to_string(corr.total()));
    }
    tsv_row(out, "aces-score", mr.metric_name, "aces-score",
            mr.aces ? fmt_full(*mr.aces) : "NA", "NA", "NA", "NA");
  }
  return out;
}

std::string render_report_txt(const EvalReport& report) {
  std::ostringstream out;

  {
    out << "Category correlations (Kendall tau-like, mean over phenomena)\n\n";
    TextTable t;
    std::vector<std::string> header = {"metric"};
    for (TopCategory c : kTopCategories) header.push_back(std::string(top_category_name(c)));
    header.push_back("ACES-Score");
    t.row(header);
    for (const auto& mr : report.metrics) {
      std::vector<std::string> row = {mr.metric_name};
      for (TopCategory c : kTopCategories) {
        auto it = mr.categories.find(c);
        row.push_back(it == mr.categories.end() ? "-" : fmt3(it->second));
      }
      row.push_back(mr.aces ? fmt3(*mr.aces) : "-");
      t.row(row);
    }
    out << t.render() << '\n';
  }

  {
    out << "Mistranslation subcategories\n\n";
    TextTable t;
    t.row({"metric", "discourse", "hallucination", "other"});
    for (const auto& mr : report.metrics) {
      auto cell = [&](MistranslationSub s) {
        auto it = mr.subcategories.find(s);
        return it == mr.subcategories.end() ? std::string("-") : fmt3(it->second);
      };
      t.row({mr.metric_name, cell(MistranslationSub::Discourse), cell(MistranslationSub::Hallucination),
             cell(MistranslationSub::Other)});
    }
    out << t.render() << '\n';
  }

  {
    out << "Language-pair groups\n\n";
    TextTable t;
    t.row({"metric", "trained", "en-x", "x-en", "x-y"});
    for (const auto& mr : report.metrics) {
      std::vector<std::string> row = {mr.metric_name};
      for (LangGroup g : {LangGroup::Trained, LangGroup::FromEnglish, LangGroup::IntoEnglish,
                          LangGroup::NoEnglish}) {
        auto it = mr.lang_groups.find(g);
        row.push_back(it == mr.lang_groups.end() ? "-" : fmt3(it->second.tau()));
      }
      t.row(row);
    }
    out << t.render() << '\n';
  }

  {
    out << "Phenomenon correlations\n\n";
    TextTable t;
    std::vector<std::string> header = {"phenomenon", "n"};
    for (const auto& mr : report.metrics) header.push_back(mr.metric_name);
    t.row(header);
    for (const auto& [leaf, count] : report.phenomenon_counts) {
      std::vector<std::string> row = {leaf, std::to_string(count)};
      for (const auto& mr : report.metrics) {
        auto it = mr.phenomena.find(leaf);
        row.push_back(it == mr.phenomena.end() ? "-" : fmt3(it->second.tau()));
      }
      t.row(row);
    }
    out << t.render();
  }

  return out.str();
}

}  // namespace aces
