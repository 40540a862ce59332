#include "aces/genconfig.hpp"

#include <stdexcept>

#include "aces/tomlite.hpp"

namespace aces {

namespace {

std::vector<std::string> string_array(const tomlite::Value& v) {
  std::vector<std::string> out;
  for (const auto& e : v.as_array()) out.push_back(e.as_string());
  return out;
}

std::array<std::string, 12> month_array(const tomlite::Value& v, const std::string& what) {
  auto list = string_array(v);
  if (list.size() != 12) {
    throw std::runtime_error("month table " + what + " has " + std::to_string(list.size()) +
                             " entries, expected 12");
  }
  std::array<std::string, 12> out;
  std::copy(list.begin(), list.end(), out.begin());
  return out;
}

}  // namespace

GeneratorConfig GeneratorConfig::load_toml(const std::string& path) {
  tomlite::Value root = tomlite::parse_file(path);
  GeneratorConfig cfg;

  if (const auto* v = root.find("bleu_review_threshold")) cfg.bleu_review_threshold = v->as_number();
  if (const auto* v = root.find("chrf_xnli_threshold")) cfg.chrf_xnli_threshold = v->as_number();
  if (const auto* v = root.find("name_pool")) cfg.name_pool = string_array(*v);
  if (const auto* v = root.find("subword_vocab")) cfg.subword_vocab = string_array(*v);
  if (const auto* v = root.find("clause_strip_patterns")) cfg.clause_strip_patterns = string_array(*v);

  if (const auto* months = root.find("months")) {
    for (const auto& [lang, table] : months->as_table()) {
      MonthTable mt;
      mt.full = month_array(table.at("full"), lang + ".full");
      mt.abbr = month_array(table.at("abbr"), lang + ".abbr");
      cfg.month_tables.emplace(lang, std::move(mt));
    }
  }

  if (const auto* conversions = root.find("unit_conversions")) {
    for (const auto& entry : conversions->as_array()) {
      UnitConversion c;
      c.from = entry.at("from").as_string();
      c.to = entry.at("to").as_string();
      c.factor = entry.at("factor").as_number();
      if (!(c.factor > 0.0)) {
        throw std::runtime_error("conversion factor must be positive: " + c.from + " -> " + c.to);
      }
      cfg.unit_conversions.push_back(std::move(c));
    }
  }

  if (const auto* units = root.find("units")) {
    for (const auto& [canonical, surfaces] : units->as_table()) {
      auto list = string_array(surfaces);
      if (list.empty()) throw std::runtime_error("unit " + canonical + " has no surface forms");
      cfg.unit_surfaces.emplace(canonical, std::move(list));
    }
  }
  for (const auto& c : cfg.unit_conversions) {
    for (const auto& u : {c.from, c.to}) {
      if (!cfg.unit_surfaces.count(u)) {
        throw std::runtime_error("conversion references unit without surface forms: " + u);
      }
    }
  }

  if (const auto* similar = root.find("similar_languages")) {
    for (const auto& entry : similar->as_array()) {
      SimilarLanguageTriple t;
      t.src = entry.at("src").as_string();
      t.tgt = entry.at("tgt").as_string();
      t.similar = entry.at("similar").as_string();
      t.resource = entry.at("resource").as_string();
      if (t.resource != "high" && t.resource != "low") {
        throw std::runtime_error("similar-language resource must be high or low, got " + t.resource);
      }
      cfg.similar_languages.push_back(std::move(t));
    }
  }

  if (const auto* confusions = root.find("pronoun_confusions")) {
    for (const auto& [form, list] : confusions->as_table()) {
      auto forms = string_array(list);
      for (const auto& f : forms) {
        if (f == form) {
          throw std::runtime_error("confusion set for '" + form + "' contains the correct form");
        }
      }
      cfg.pronoun_confusions.emplace(form, std::move(forms));
    }
  }

  if (const auto* connectives = root.find("connectives")) {
    for (const auto& [word, senses] : connectives->as_table()) {
      std::map<std::string, std::string> rule;
      for (const auto& [sense, substitute] : senses.as_table()) {
        rule.emplace(sense, substitute.as_string());
      }
      cfg.connective_rules.emplace(word, std::move(rule));
    }
  }

  return cfg;
}

const SimilarLanguageTriple* GeneratorConfig::find_similar_triple(const std::string& src,
                                                                  const std::string& tgt) const {
  for (const auto& t : similar_languages) {
    if (t.src == src && t.tgt == tgt) return &t;
  }
  return nullptr;
}

std::vector<const UnitConversion*> GeneratorConfig::conversions_from(const std::string& unit) const {
  std::vector<const UnitConversion*> out;
  for (const auto& c : unit_conversions) {
    if (c.from == unit) out.push_back(&c);
  }
  return out;
}

}  // namespace aces
