#include "aces/challenge.hpp"

#include "aces/text.hpp"

namespace aces {

bool valid_langpair(const std::string& langpair) {
  if (langpair.size() != 5 || langpair[2] != '-') return false;
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4}}) {
    if (langpair[i] < 'a' || langpair[i] > 'z') return false;
  }
  return true;
}

bool copy_source_related(const std::string& phenomenon) {
  return phenomenon.rfind("copy-source", 0) == 0;
}

std::vector<std::string> validate(const ChallengeExample& ex, const PhenomenonTaxonomy& taxonomy) {
  std::vector<std::string> out;
  if (text::trim(ex.id).empty()) out.push_back("empty field: id");
  if (text::trim(ex.source).empty()) out.push_back("empty field: source");
  if (text::trim(ex.reference).empty()) out.push_back("empty field: reference");
  if (text::trim(ex.good_translation).empty()) out.push_back("empty field: good_translation");
  if (text::trim(ex.incorrect_translation).empty()) out.push_back("empty field: incorrect_translation");
  if (ex.good_translation == ex.incorrect_translation) {
    out.push_back("good_translation equals incorrect_translation");
  }
  if (!taxonomy.contains(ex.phenomenon)) out.push_back("unknown phenomenon");
  if (!valid_langpair(ex.langpair)) {
    out.push_back("invalid langpair");
  } else if (ex.langpair.substr(0, 2) == ex.langpair.substr(3, 2) &&
             !copy_source_related(ex.phenomenon)) {
    out.push_back("source language equals target language");
  }
  return out;
}

}  // namespace aces
