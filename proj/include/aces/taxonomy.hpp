#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace aces {

// The ten top-level accuracy/fluency categories, in the fixed order used by
// the weighted summary score.
enum class TopCategory {
  Addition,
  Omission,
  Mistranslation,
  Untranslated,
  DoNotTranslate,
  Overtranslation,
  Undertranslation,
  RealWorldKnowledge,
  WrongLanguage,
  Punctuation,
};

inline constexpr std::array<TopCategory, 10> kTopCategories = {
    TopCategory::Addition,       TopCategory::Omission,
    TopCategory::Mistranslation, TopCategory::Untranslated,
    TopCategory::DoNotTranslate, TopCategory::Overtranslation,
    TopCategory::Undertranslation, TopCategory::RealWorldKnowledge,
    TopCategory::WrongLanguage,  TopCategory::Punctuation,
};

// Finer split of the mistranslation category. None means "n/a" and is only
// valid for leaves outside mistranslation.
enum class MistranslationSub { Discourse, Hallucination, Other, None };

std::string_view top_category_name(TopCategory c);
std::optional<TopCategory> top_category_from_name(std::string_view name);
std::string_view subcategory_name(MistranslationSub s);
std::optional<MistranslationSub> subcategory_from_name(std::string_view name);

struct PhenomenonInfo {
  TopCategory top;
  MistranslationSub sub;  // None unless top == Mistranslation
};

// Registry of phenomenon leaves and their category rollup. Loaded from a TSV
// of `leaf<TAB>top_category<TAB>subcategory`.
class PhenomenonTaxonomy {
 public:
  static PhenomenonTaxonomy load_tsv(const std::string& path);

  // Throws std::invalid_argument if the leaf is already registered or the
  // subcategory pairing is inconsistent with the top category.
  void add(const std::string& leaf, TopCategory top, MistranslationSub sub);

  bool contains(const std::string& leaf) const;
  const PhenomenonInfo& info(const std::string& leaf) const;  // throws on unknown leaf
  const std::map<std::string, PhenomenonInfo>& leaves() const { return leaves_; }
  bool empty() const { return leaves_.empty(); }

 private:
  std::map<std::string, PhenomenonInfo> leaves_;
};

}  // namespace aces
