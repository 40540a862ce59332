#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace aces {

struct MonthTable {
  std::array<std::string, 12> full;
  std::array<std::string, 12> abbr;
};

struct UnitConversion {
  std::string from;  // canonical unit names, keys into unit_surfaces
  std::string to;
  double factor = 0.0;
};

struct SimilarLanguageTriple {
  std::string src;
  std::string tgt;
  std::string similar;
  std::string resource;  // "high" | "low": resource level of the target language
};

// Everything the generators read besides the corpus itself: lookup tables,
// substitution rules, and filter thresholds. Ships as a TOML file.
struct GeneratorConfig {
  double bleu_review_threshold = 13.0;  // good-vs-reference BLEU below this flags manual review
  double chrf_xnli_threshold = 50.0;    // minimum premise/hypothesis chrF, 0-100 scale

  std::map<std::string, MonthTable> month_tables;  // language -> months
  std::vector<UnitConversion> unit_conversions;
  std::map<std::string, std::vector<std::string>> unit_surfaces;  // canonical -> surface forms
  std::vector<SimilarLanguageTriple> similar_languages;
  std::map<std::string, std::vector<std::string>> pronoun_confusions;
  std::map<std::string, std::map<std::string, std::string>> connective_rules;  // word -> sense -> substitute
  std::vector<std::string> clause_strip_patterns;  // ECMAScript regexes, group 1 = clause to delete
  std::vector<std::string> name_pool;
  std::vector<std::string> subword_vocab;

  // Throws std::runtime_error on parse errors or invariant violations
  // (non-positive factors, month tables without 12 entries, a confusion set
  // containing its own key).
  static GeneratorConfig load_toml(const std::string& path);

  const SimilarLanguageTriple* find_similar_triple(const std::string& src, const std::string& tgt) const;
  std::vector<const UnitConversion*> conversions_from(const std::string& unit) const;
};

}  // namespace aces
