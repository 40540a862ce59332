#include "aces/taxonomy.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace aces {

std::string_view top_category_name(TopCategory c) {
  switch (c) {
    case TopCategory::Addition: return "addition";
    case TopCategory::Omission: return "omission";
    case TopCategory::Mistranslation: return "mistranslation";
    case TopCategory::Untranslated: return "untranslated";
    case TopCategory::DoNotTranslate: return "do-not-translate";
    case TopCategory::Overtranslation: return "overtranslation";
    case TopCategory::Undertranslation: return "undertranslation";
    case TopCategory::RealWorldKnowledge: return "real-world-knowledge";
    case TopCategory::WrongLanguage: return "wrong-language";
    case TopCategory::Punctuation: return "punctuation";
  }
  return "?";
}

std::optional<TopCategory> top_category_from_name(std::string_view name) {
  for (TopCategory c : kTopCategories) {
    if (top_category_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view subcategory_name(MistranslationSub s) {
  switch (s) {
    case MistranslationSub::Discourse: return "discourse";
    case MistranslationSub::Hallucination: return "hallucination";
    case MistranslationSub::Other: return "other";
    case MistranslationSub::None: return "n/a";
  }
  return "?";
}

std::optional<MistranslationSub> subcategory_from_name(std::string_view name) {
  if (name == "discourse") return MistranslationSub::Discourse;
  if (name == "hallucination") return MistranslationSub::Hallucination;
  if (name == "other") return MistranslationSub::Other;
  if (name == "n/a") return MistranslationSub::None;
  return std::nullopt;
}

void PhenomenonTaxonomy::add(const std::string& leaf, TopCategory top, MistranslationSub sub) {
  if (leaf.empty()) throw std::invalid_argument("taxonomy leaf name is empty");
  if (leaves_.count(leaf)) throw std::invalid_argument("taxonomy leaf registered twice: " + leaf);
  bool is_mist = (top == TopCategory::Mistranslation);
  if (is_mist && sub == MistranslationSub::None) {
    throw std::invalid_argument("mistranslation leaf needs a subcategory: " + leaf);
  }
  if (!is_mist && sub != MistranslationSub::None) {
    throw std::invalid_argument("subcategory given for non-mistranslation leaf: " + leaf);
  }
  leaves_.emplace(leaf, PhenomenonInfo{top, sub});
}

bool PhenomenonTaxonomy::contains(const std::string& leaf) const { return leaves_.count(leaf) > 0; }

const PhenomenonInfo& PhenomenonTaxonomy::info(const std::string& leaf) const {
  auto it = leaves_.find(leaf);
  if (it == leaves_.end()) throw std::invalid_argument("unknown phenomenon: " + leaf);
  return it->second;
}

PhenomenonTaxonomy PhenomenonTaxonomy::load_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  PhenomenonTaxonomy tax;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (!header_seen) {
      header_seen = true;
      if (cols.size() >= 1 && cols[0] == "phenomenon") continue;  // header row
    }
    if (cols.size() != 3) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 columns, got " +
                               std::to_string(cols.size()));
    }
    auto top = top_category_from_name(cols[1]);
    if (!top) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown category " + cols[1]);
    }
    auto sub = subcategory_from_name(cols[2]);
    if (!sub) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown subcategory " + cols[2]);
    }
    try {
      tax.add(cols[0], *top, *sub);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return tax;
}

}  // namespace aces
