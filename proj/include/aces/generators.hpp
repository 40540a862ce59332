#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aces/challenge.hpp"
#include "aces/corpus_io.hpp"
#include "aces/genconfig.hpp"
#include "aces/taxonomy.hpp"

// Seeded generators, one per automatic phenomenon family. Each one is pure
// text algebra over annotated inputs: fixed (inputs, seed, config) gives a
// byte-identical outcome. Randomness comes from a per-(recipe, record)
// SplitMix64 stream, so recipes never perturb each other's draws.

namespace aces {

// Result of running one recipe over one input unit (or a batch): the
// emitted examples plus a histogram of skip reasons for units that
// produced nothing.
struct GenOutcome {
  std::vector<ChallengeExample> examples;
  std::map<std::string, int> skipped;

  void skip(const std::string& reason) { ++skipped[reason]; }
  bool emitted() const { return !examples.empty(); }
};

// Identification shared by all recipes: where the unit came from and the
// source/reference sentence pair it belongs to.
struct GenMeta {
  std::string record_id;
  std::string langpair;
  std::string source;
  std::string reference;
  std::uint64_t seed = 0;
};

// word -> relation -> substitution targets, file order preserved; the first
// target of a relation is the first listed sense.
using Lexicon = std::map<std::string, std::map<std::string, std::vector<std::string>>>;

// TSV `word<TAB>relation<TAB>target`; relations: hypernym, hyponym,
// cohyponym, antonym, synonym.
Lexicon load_lexicon(const std::string& path);

// Constituent drops: omission pairs the full translation against the partial
// one; an addition example is added when the deleted span occurs verbatim in
// the reference. Good translations scoring below cfg.bleu_review_threshold
// against their reference get flagged "needs_manual_review".
GenOutcome gen_addition_omission(const AnnotatedSegment& seg, const GenMeta& meta,
                                 const GeneratorConfig& cfg);

// Month swap: good replaces the month with its abbreviation, incorrect with a
// seeded different month. Months must occur in translation and reference.
GenOutcome gen_date_time(const std::string& translation, const std::string& tgt_lang,
                         const GenMeta& meta, const GeneratorConfig& cfg);

// Unit conversion (English targets): good converts amount and unit; the two
// incorrect variants keep either the reference amount or the reference unit.
// Both pair against the same good translation as separate examples.
GenOutcome gen_unit_conversion(const std::string& translation, const GenMeta& meta,
                               const GeneratorConfig& cfg);

enum class NumberNeEdit { Char, Word };

// Number / named-entity hallucination at three difficulty levels. Level 1
// perturbs an alternative translation; levels 2 and 3 perturb the reference
// and take the closest / farthest alternative (by character Levenshtein) as
// the good translation.
GenOutcome gen_number_ne(const std::vector<std::string>& alternatives,
                         const std::vector<std::vector<Span>>& alt_entities,
                         const std::vector<Span>& ref_entities, int level, NumberNeEdit edit,
                         const std::string& target_kind,  // "number" | "entity" | "" (number first)
                         const GenMeta& meta, const GeneratorConfig& cfg);

// Subword swap in one multi-piece token of the reference.
GenOutcome gen_nonsense(const std::vector<SubwordPiece>& subwords, const std::string& good_alt,
                        const GenMeta& meta, const GeneratorConfig& cfg);

// Adversarial paraphrase as the incorrect translation, fanned out over the
// provided source languages.
GenOutcome gen_lexical_overlap(const ParaphraseBlock& pair, const GenMeta& meta);

// Sentence-level meaning errors from NLI pairs (contradiction/neutral only,
// premise/hypothesis chrF at least cfg.chrf_xnli_threshold).
GenOutcome gen_xnli_meaning(const NliBlock& nli, const GenMeta& meta, const GeneratorConfig& cfg);

// Copies the source verbatim as the incorrect translation.
GenOutcome gen_copy_source(const std::string& good_mt, const GenMeta& meta);

// Reference in a similar language as the incorrect translation. Throws
// std::invalid_argument when the (src, tgt, similar) triple is not
// configured.
GenOutcome gen_wrong_language(const std::string& good_mt, const SimilarBlock& similar,
                              const GenMeta& meta, const GeneratorConfig& cfg);

enum class TaxonomicMode {
  Overtranslation,      // incorrect: noun -> hyponym
  Undertranslation,     // incorrect: noun -> hypernym
  HypernymVsHyponym,    // good: hypernym, incorrect: hyponym
  HypernymVsDistractor, // good: hypernym, incorrect: co-hyponym
  AntonymNoun,          // incorrect: noun -> antonym
};

std::optional<TaxonomicMode> taxonomic_mode_from_name(std::string_view name);

GenOutcome gen_taxonomic_substitution(const std::string& good_alt, const Lexicon& lexicon,
                                      TaxonomicMode mode, const GenMeta& meta,
                                      const GeneratorConfig& cfg);

enum class PunctuationStrategy { DeleteAll, DeleteQuotes, DeleteCommas, ExclaimToQuestion };

std::optional<PunctuationStrategy> punctuation_strategy_from_name(std::string_view name);

GenOutcome gen_punctuation(const std::string& good_trans, PunctuationStrategy strategy,
                           const GenMeta& meta);

enum class PronounStrategy { Omission, Substitution };

GenOutcome gen_pronoun_error(const std::string& trans, const PronounBlock& pronoun,
                             PronounStrategy strategy, const GenMeta& meta,
                             const GeneratorConfig& cfg);

// Discourse connective substitution ("since", "while"): good gets the
// sense-matching substitute, incorrect the alternative-sense one.
GenOutcome gen_connective(const std::string& base_text, const ConnectiveBlock& connective,
                          const GenMeta& meta, const GeneratorConfig& cfg);

// Occupation-gender cue assembly.
GenOutcome gen_ambiguity_gender(const GenderBlock& gender, const GenMeta& meta);

// 'What does "X" mean?' template assembly with contrastive sense cues.
GenOutcome gen_ambiguity_wsd(const WsdBlock& wsd, const GenMeta& meta);

// Commonsense coreference variants built by stripping the explanatory
// subordinate clause from the reference (and optionally the source).
GenOutcome gen_commonsense_variants(const CommonsenseBlock& block, const GenMeta& meta,
                                    const GeneratorConfig& cfg);

// ---- Driver ----

struct RecipeStats {
  int inputs = 0;         // units routed to the recipe
  int emitted_units = 0;  // units that contributed at least one kept example
  int examples = 0;       // examples kept
  std::map<std::string, int> skipped;

  int skipped_total() const;
};

struct GenerateResult {
  std::vector<ChallengeExample> examples;
  std::map<std::string, RecipeStats> stats;  // per recipe name
};

// Runs every task of every record in file order. `phenomena_filter` empty
// means everything; otherwise only the named leaves are kept (a unit whose
// examples are all filtered out counts as skipped "filtered out").
// Every kept example passes validate() against the taxonomy.
GenerateResult generate_all(const std::vector<CorpusRecord>& records, const GeneratorConfig& cfg,
                            const Lexicon& lexicon, const PhenomenonTaxonomy& taxonomy,
                            std::uint64_t seed, const std::set<std::string>& phenomena_filter);

// Formatting helper shared with the unit-conversion recipe and its tests:
// value rounded to three significant figures, printed without an exponent,
// trailing fractional zeros stripped.
std::string format_sig3(double value);

}  // namespace aces
