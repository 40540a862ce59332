#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aces/taxonomy.hpp"

namespace aces {

// One contrastive item: a source, a reference, and a good/incorrect
// translation pair differing in one controlled error.
struct ChallengeExample {
  std::string id;
  std::string source;
  std::string reference;
  std::string good_translation;
  std::string incorrect_translation;
  std::string phenomenon;  // taxonomy leaf
  std::string langpair;    // "src-tgt", ISO 639-1
  std::set<std::string> flags;
  std::string provenance;

  bool operator==(const ChallengeExample&) const = default;
};

// Character span over a text, counting Unicode scalar values, [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string label;

  bool operator==(const Span&) const = default;
};

struct SubwordPiece {
  std::string piece;
  bool is_continuation = false;

  bool operator==(const SubwordPiece&) const = default;
};

// A source dropped by one constituent, with translations of both versions.
struct PartialVariant {
  std::string deleted_span;
  std::string partial_text;
  std::string partial_translation;

  bool operator==(const PartialVariant&) const = default;
};

// Corpus text plus whatever externally produced annotations a recipe needs.
// Every model-dependent input (parses, translations, entity spans, subword
// segmentations) arrives here as data.
struct AnnotatedSegment {
  std::string text;
  std::vector<Span> constituents;       // spans over text
  std::vector<Span> entities;           // spans over the reference text
  std::vector<SubwordPiece> subwords;   // segmentation of the reference tokens
  std::string translation;              // machine translation of text
  std::vector<PartialVariant> partial_variants;
};

bool valid_langpair(const std::string& langpair);

// True for phenomena whose construction copies the source verbatim, which
// legitimately allows source language == target language.
bool copy_source_related(const std::string& phenomenon);

// Returns the invariant violations of one example; empty means valid.
// Violations are data, not failures.
std::vector<std::string> validate(const ChallengeExample& ex, const PhenomenonTaxonomy& taxonomy);

}  // namespace aces
