#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aces/challenge.hpp"
#include "aces/taxonomy.hpp"

namespace aces {

enum class SetFormat { Jsonl, Tsv };

std::optional<SetFormat> format_from_name(std::string_view name);

// Thrown on malformed input files; the message carries file and line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loads and validates a challenge set. Order follows the file; a record that
// fails validation, a malformed line, or a duplicate id raises ParseError
// naming the offending line(s).
std::vector<ChallengeExample> load_challenge_set(const std::string& path, SetFormat format,
                                                 const PhenomenonTaxonomy& taxonomy);

// Writes a challenge set. JSONL: one object per line, fixed key order, LF.
// TSV: one header row, tab separated; fields must not contain tabs or
// newlines. A non-empty `provenance` becomes a leading header line
// (`{"_provenance": ...}` for JSONL, a `#` comment for TSV) which loaders
// skip. Output is written atomically (temp file + rename).
void save_challenge_set(const std::vector<ChallengeExample>& examples, const std::string& path,
                        SetFormat format, const std::string& provenance = "");

// Stratified subsample of one phenomenon: keeps everything when the set fits
// under `cap`, otherwise allocates per-langpair counts by largest remainder
// (ties broken lexicographically by langpair) and picks uniformly inside
// each langpair under `seed`. Output preserves input order.
std::vector<ChallengeExample> subsample_phenomenon(const std::vector<ChallengeExample>& examples,
                                                   std::size_t cap, std::uint64_t seed);

// -------- Annotated corpus --------

// Routing entry: which recipe consumes a record, plus recipe parameters.
struct GenTask {
  std::string recipe;
  int level = 0;          // number-ne: 1..3
  std::string edit;       // number-ne: "char" | "word"
  std::string target;     // number-ne: "number" | "entity" | "" (auto)
  std::string strategy;   // punctuation / pronoun strategies
  std::string mode;       // taxonomic substitution mode
};

struct ParaphraseBlock {
  std::string other;      // second paraphrase of the pair
  std::string label;      // "adversarial" | "paraphrase"
  std::string good_mt;    // corrected translation of the first paraphrase
  std::map<std::string, std::string> sources;  // language -> first paraphrase
};

struct NliBlock {
  std::string premise;
  std::string hypothesis;
  std::string label;      // entailment | contradiction | neutral
  std::string mt;         // translation of the reference side
  std::string ref_side;   // "premise" | "hypothesis"
  std::map<std::string, std::string> sources;
};

struct SimilarBlock {
  std::string lang;       // language of the similar-language reference
  std::string reference;  // human reference in that language
};

struct PronounBlock {
  std::size_t begin = 0;  // span over the translation, scalar values
  std::size_t end = 0;
  std::string form;       // the correct pronoun at that span
  std::string category;   // e.g. "pleonastic_it"
};

struct ConnectiveBlock {
  std::string word;   // "since" | "while"
  std::string sense;  // causal | temporal | contrast
};

struct GenderBlock {
  std::string female_variant;
  std::string male_variant;
  std::string true_gender;  // "female" | "male"
  std::string stereotype;   // "pro" | "anti"
};

struct WsdBlock {
  std::string word;
  std::string correct_cue;
  std::string wrong_cue;
  std::string frequency;  // "frequent" | "infrequent"
};

struct CommonsenseBlock {
  std::string good_full;
  std::string incorrect_full;
  std::string variant;  // "src-and-ref" | "only-ref"
};

// One line of the annotated corpus: a segment with its reference plus the
// optional blocks the recipes feed on.
struct CorpusRecord {
  std::string id;
  std::string langpair;
  std::string reference;
  AnnotatedSegment segment;

  std::vector<std::string> alternatives;          // paraphrase pool
  std::vector<std::vector<Span>> alt_entities;    // entity spans per alternative
  std::string good_alt;

  std::optional<ParaphraseBlock> paraphrase;
  std::optional<NliBlock> nli;
  std::optional<SimilarBlock> similar;
  std::optional<PronounBlock> pronoun;
  std::optional<ConnectiveBlock> connective;
  std::optional<GenderBlock> gender;
  std::optional<WsdBlock> wsd;
  std::optional<CommonsenseBlock> commonsense;

  std::vector<GenTask> tasks;
};

std::vector<CorpusRecord> load_annotated_corpus(const std::string& path);

// Annotation invariants: spans inside their text, no overlap within a layer,
// subword pieces reassemble the reference tokens.
std::vector<std::string> validate_record(const CorpusRecord& record);

// Shared helper: atomic write of `content` to `path` via temp file + rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace aces
