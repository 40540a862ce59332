#include "aces/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "aces/rng.hpp"
#include "aces/text.hpp"
#include "aces/textsim.hpp"

namespace aces {

namespace {

// ---- codepoint-level scanning helpers ----

bool is_word_char(char32_t c) { return !text::is_space(c) && !text::is_punct(c); }

struct TokenSpan {
  std::size_t begin = 0;  // codepoints
  std::size_t end = 0;
};

std::vector<TokenSpan> token_spans(const std::u32string& cp) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < cp.size()) {
    while (i < cp.size() && text::is_space(cp[i])) ++i;
    if (i >= cp.size()) break;
    std::size_t b = i;
    while (i < cp.size() && !text::is_space(cp[i])) ++i;
    out.push_back({b, i});
  }
  return out;
}

std::string splice(const std::u32string& cp, std::size_t begin, std::size_t end,
                   const std::string& replacement) {
  std::string out = text::encode_utf8(std::u32string_view(cp).substr(0, begin));
  out += replacement;
  out += text::encode_utf8(std::u32string_view(cp).substr(end));
  return out;
}

// First occurrence of `word` with non-word characters (or the text edges) on
// both sides; returns the codepoint offset.
std::optional<std::size_t> find_word(const std::u32string& cp, const std::u32string& word) {
  if (word.empty() || word.size() > cp.size()) return std::nullopt;
  for (std::size_t i = 0; i + word.size() <= cp.size(); ++i) {
    if (cp.compare(i, word.size(), word) != 0) continue;
    bool left_ok = (i == 0) || !is_word_char(cp[i - 1]);
    std::size_t after = i + word.size();
    bool right_ok = (after == cp.size()) || !is_word_char(cp[after]);
    if (left_ok && right_ok) return i;
  }
  return std::nullopt;
}

struct NumberToken {
  std::size_t begin = 0;  // codepoints
  std::size_t end = 0;
  std::string token;
};

// Maximal digit runs; '.' and ',' stay inside a number when flanked by
// digits on both sides ("1,040", "30.5").
std::vector<NumberToken> find_numbers(const std::u32string& cp) {
  std::vector<NumberToken> out;
  std::size_t i = 0;
  while (i < cp.size()) {
    if (!text::is_ascii_digit(cp[i])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < cp.size()) {
      if (text::is_ascii_digit(cp[i])) {
        ++i;
      } else if ((cp[i] == U'.' || cp[i] == U',') && i + 1 < cp.size() &&
                 text::is_ascii_digit(cp[i + 1]) && i > b) {
        ++i;
      } else {
        break;
      }
    }
    out.push_back({b, i, text::encode_utf8(std::u32string_view(cp).substr(b, i - b))});
  }
  return out;
}

ChallengeExample base_example(const GenMeta& meta, const std::string& suffix,
                              const std::string& phenomenon) {
  ChallengeExample ex;
  ex.id = meta.record_id + "." + suffix;
  ex.source = meta.source;
  ex.reference = meta.reference;
  ex.phenomenon = phenomenon;
  ex.langpair = meta.langpair;
  return ex;
}

std::string tgt_lang(const std::string& langpair) {
  return langpair.size() == 5 ? langpair.substr(3, 2) : "";
}

std::string src_lang(const std::string& langpair) {
  return langpair.size() == 5 ? langpair.substr(0, 2) : "";
}

std::string prov(const GenMeta& meta, const std::string& recipe, const std::string& detail) {
  std::ostringstream os;
  os << recipe << " seed=" << meta.seed;
  if (!detail.empty()) os << " " << detail;
  return os.str();
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 0x20;
  }
  return out;
}

}  // namespace

int RecipeStats::skipped_total() const {
  int n = 0;
  for (const auto& [reason, count] : skipped) n += count;
  return n;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    std::string word = line.substr(0, t1);
    std::string relation = line.substr(t1 + 1, t2 - t1 - 1);
    std::string target = line.substr(t2 + 1);
    static const std::set<std::string> kRelations = {"hypernym", "hyponym", "cohyponym", "antonym",
                                                     "synonym"};
    if (!kRelations.count(relation)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown relation " + relation);
    }
    lex[word][relation].push_back(target);
  }
  return lex;
}

// ---- addition / omission ----

namespace {

// True when `partial` can be produced from `full` by deleting whole tokens.
bool is_token_deletion(const std::vector<std::string>& full, const std::vector<std::string>& partial) {
  if (partial.size() >= full.size()) return false;
  std::size_t i = 0;
  for (const auto& tok : partial) {
    while (i < full.size() && full[i] != tok) ++i;
    if (i == full.size()) return false;
    ++i;
  }
  return true;
}

}  // namespace

GenOutcome gen_addition_omission(const AnnotatedSegment& seg, const GenMeta& meta,
                                 const GeneratorConfig& cfg) {
  GenOutcome out;
  if (seg.translation.empty()) {
    out.skip("no translation");
    return out;
  }
  if (seg.partial_variants.empty()) {
    out.skip("no partial variants");
    return out;
  }
  // Punctuation-split tokens, so a span deleted before the final period still
  // counts as a pure deletion.
  std::vector<std::string> full_tokens = text::bleu_tokens(seg.translation);
  bool any_variant_usable = false;
  for (std::size_t v = 0; v < seg.partial_variants.size(); ++v) {
    const PartialVariant& var = seg.partial_variants[v];
    std::vector<std::string> partial_tokens = text::bleu_tokens(var.partial_translation);
    if (!is_token_deletion(full_tokens, partial_tokens)) continue;
    any_variant_usable = true;
    std::string vs = seg.partial_variants.size() > 1 ? "." + std::to_string(v) : "";

    ChallengeExample omission = base_example(meta, "omission" + vs, "omission");
    omission.good_translation = seg.translation;
    omission.incorrect_translation = var.partial_translation;
    omission.provenance =
        prov(meta, "addition-omission", "branch=omission deleted=" + var.deleted_span);
    if (bleu(omission.good_translation, omission.reference) < cfg.bleu_review_threshold) {
      omission.flags.insert("needs_manual_review");
    }
    out.examples.push_back(std::move(omission));

    // Addition needs the deleted span verbatim in the reference; otherwise
    // only the omission example survives.
    if (auto stripped = text::replace_first(meta.reference, var.deleted_span, "")) {
      ChallengeExample addition = base_example(meta, "addition" + vs, "addition");
      addition.source = var.partial_text;
      addition.reference = text::collapse_spaces(*stripped);
      addition.good_translation = var.partial_translation;
      addition.incorrect_translation = seg.translation;
      addition.provenance =
          prov(meta, "addition-omission", "branch=addition deleted=" + var.deleted_span);
      if (bleu(addition.good_translation, addition.reference) < cfg.bleu_review_threshold) {
        addition.flags.insert("needs_manual_review");
      }
      out.examples.push_back(std::move(addition));
    }
  }
  if (!any_variant_usable) {
    out.skip("partial translation is not a deletion of the full translation");
  }
  return out;
}

// ---- date-time ----

GenOutcome gen_date_time(const std::string& translation, const std::string& target_language,
                         const GenMeta& meta, const GeneratorConfig& cfg) {
  GenOutcome out;
  auto table_it = cfg.month_tables.find(target_language);
  if (table_it == cfg.month_tables.end()) {
    out.skip("no month table for language " + target_language);
    return out;
  }
  if (translation.empty()) {
    out.skip("no translation");
    return out;
  }
  const MonthTable& table = table_it->second;

  std::u32string trans_cp = text::decode_utf8(translation);
  std::u32string ref_cp = text::decode_utf8(meta.reference);

  // Months present in the translation, ordered by first occurrence.
  std::vector<std::pair<std::size_t, std::size_t>> found;  // (position, month index)
  for (std::size_t m = 0; m < 12; ++m) {
    if (auto pos = find_word(trans_cp, text::decode_utf8(table.full[m]))) {
      found.emplace_back(*pos, m);
    }
  }
  std::sort(found.begin(), found.end());
  if (found.empty()) {
    out.skip("no month");
    return out;
  }

  for (const auto& [pos, m] : found) {
    if (!find_word(ref_cp, text::decode_utf8(table.full[m]))) continue;
    std::u32string month_cp = text::decode_utf8(table.full[m]);
    SplitMix64 rng = stream_for(meta.seed, "date-time", meta.record_id);
    std::size_t other = rng.bounded(11);
    if (other >= m) ++other;

    ChallengeExample ex = base_example(meta, "date-time", "hallucination-date-time");
    // An abbreviation ending in '.' absorbs a directly following sentence dot.
    std::size_t good_end = pos + month_cp.size();
    if (!table.abbr[m].empty() && table.abbr[m].back() == '.' && good_end < trans_cp.size() &&
        trans_cp[good_end] == U'.') {
      ++good_end;
    }
    ex.good_translation = splice(trans_cp, pos, good_end, table.abbr[m]);
    ex.incorrect_translation = splice(trans_cp, pos, pos + month_cp.size(), table.full[other]);
    ex.provenance = prov(meta, "date-time", "month=" + table.full[m] + " abbr=" + table.abbr[m] +
                                                " swap=" + table.full[other]);
    out.examples.push_back(std::move(ex));
    return out;
  }
  out.skip("month not in reference");
  return out;
}

// ---- unit conversion ----

namespace {

struct UnitMention {
  std::size_t num_begin = 0, num_end = 0;  // codepoints
  std::string amount;
  std::size_t unit_begin = 0, unit_end = 0;
  std::string surface;
  std::string canonical;
  bool excluded = false;
};

double parse_amount(const std::string& s) {
  std::string digits;
  for (char c : s) {
    if (c != ',') digits.push_back(c);
  }
  return std::stod(digits);
}

std::vector<UnitMention> find_unit_mentions(const std::u32string& cp, const GeneratorConfig& cfg) {
  // Longest surfaces first so "miles per hour" wins over "miles".
  std::vector<std::pair<std::u32string, std::string>> surfaces;
  for (const auto& [canonical, forms] : cfg.unit_surfaces) {
    for (const auto& f : forms) surfaces.emplace_back(text::decode_utf8(f), canonical);
  }
  std::sort(surfaces.begin(), surfaces.end(),
            [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

  std::vector<UnitMention> out;
  for (const NumberToken& num : find_numbers(cp)) {
    if (num.begin > 0 && is_word_char(cp[num.begin - 1])) continue;
    std::size_t i = num.end;
    if (i >= cp.size() || cp[i] != U' ') continue;
    ++i;
    for (const auto& [surf, canonical] : surfaces) {
      if (i + surf.size() > cp.size()) continue;
      if (cp.compare(i, surf.size(), surf) != 0) continue;
      std::size_t after = i + surf.size();
      if (after < cp.size() && is_word_char(cp[after])) continue;
      UnitMention m;
      m.num_begin = num.begin;
      m.num_end = num.end;
      m.amount = num.token;
      m.unit_begin = i;
      m.unit_end = after;
      m.surface = text::encode_utf8(std::u32string_view(cp).substr(i, surf.size()));
      m.canonical = canonical;
      out.push_back(std::move(m));
      break;
    }
  }

  // Self-disambiguating mentions, "645 miles (1040 km)": drop both sides.
  for (std::size_t a = 0; a < out.size(); ++a) {
    std::size_t i = out[a].unit_end;
    while (i < cp.size() && cp[i] == U' ') ++i;
    if (i >= cp.size() || cp[i] != U'(') continue;
    std::size_t close = i;
    while (close < cp.size() && cp[close] != U')') ++close;
    if (close == cp.size()) continue;
    for (std::size_t b = 0; b < out.size(); ++b) {
      if (b == a) continue;
      if (out[b].num_begin > i && out[b].unit_end <= close) {
        out[a].excluded = true;
        out[b].excluded = true;
      }
    }
  }
  return out;
}

}  // namespace

std::string format_sig3(double value) {
  if (value == 0.0) return "0";
  int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  int decimals = 2 - exponent;
  auto round_at = [&](int dec) {
    double scale = std::pow(10.0, dec);
    return std::round(value * scale) / scale;
  };
  double rounded = round_at(decimals);
  int exponent2 = static_cast<int>(std::floor(std::log10(std::fabs(rounded)) + 1e-12));
  if (exponent2 > exponent) {
    decimals = 2 - exponent2;
    rounded = round_at(decimals);
  }
  char buf[64];
  if (decimals <= 0) {
    std::snprintf(buf, sizeof buf, "%.0f", rounded);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

GenOutcome gen_unit_conversion(const std::string& translation, const GenMeta& meta,
                               const GeneratorConfig& cfg) {
  GenOutcome out;
  if (tgt_lang(meta.langpair) != "en") {
    out.skip("target language is not English");
    return out;
  }
  if (translation.empty()) {
    out.skip("no translation");
    return out;
  }
  std::u32string trans_cp = text::decode_utf8(translation);
  std::u32string ref_cp = text::decode_utf8(meta.reference);
  auto trans_mentions = find_unit_mentions(trans_cp, cfg);
  auto ref_mentions = find_unit_mentions(ref_cp, cfg);

  if (trans_mentions.empty()) {
    out.skip("no unit mention");
    return out;
  }

  const UnitMention* chosen = nullptr;
  const UnitMention* ref_mention = nullptr;
  bool saw_candidate = false;
  bool saw_in_ref = false;
  for (const auto& m : trans_mentions) {
    if (m.excluded) continue;
    saw_candidate = true;
    const UnitMention* rm = nullptr;
    for (const auto& r : ref_mentions) {
      if (!r.excluded && r.canonical == m.canonical) {
        rm = &r;
        break;
      }
    }
    if (!rm) continue;
    saw_in_ref = true;
    if (cfg.conversions_from(m.canonical).empty()) continue;
    chosen = &m;
    ref_mention = rm;
    break;
  }
  if (!chosen) {
    if (!saw_candidate) {
      out.skip("only self-disambiguating unit mentions");
    } else if (!saw_in_ref) {
      out.skip("unit not in reference");
    } else {
      out.skip("no allowed conversion for unit");
    }
    return out;
  }

  auto conversions = cfg.conversions_from(chosen->canonical);
  SplitMix64 rng = stream_for(meta.seed, "unit-conversion", meta.record_id);
  const UnitConversion* conv = conversions[rng.bounded(conversions.size())];

  double amount = parse_amount(chosen->amount);
  double exact = amount * conv->factor;
  std::string converted = format_sig3(exact);
  const std::string& to_surface = cfg.unit_surfaces.at(conv->to).front();

  auto replace_mention = [&](const std::string& new_amount, const std::string& new_unit) {
    return splice(trans_cp, chosen->num_begin, chosen->unit_end, new_amount + " " + new_unit);
  };

  std::string good = replace_mention(converted, to_surface);
  char exact_buf[64];
  std::snprintf(exact_buf, sizeof exact_buf, "%.12g", exact);
  std::string detail = "conversion=" + conv->from + "->" + conv->to + " amount=" + chosen->amount +
                       " exact=" + exact_buf;

  {
    ChallengeExample ex = base_example(meta, "unit-amount-matches-ref",
                                       "hallucination-unit-conversion-amount-matches-ref");
    ex.good_translation = good;
    ex.incorrect_translation = replace_mention(ref_mention->amount, to_surface);
    ex.provenance = prov(meta, "unit-conversion", detail + " incorrect=ref-amount");
    if (ex.incorrect_translation != ex.good_translation) out.examples.push_back(std::move(ex));
  }
  {
    ChallengeExample ex = base_example(meta, "unit-unit-matches-ref",
                                       "hallucination-unit-conversion-unit-matches-ref");
    ex.good_translation = good;
    ex.incorrect_translation = replace_mention(converted, ref_mention->surface);
    ex.provenance = prov(meta, "unit-conversion", detail + " incorrect=ref-unit");
    if (ex.incorrect_translation != ex.good_translation) out.examples.push_back(std::move(ex));
  }
  if (out.examples.empty()) out.skip("conversion produced no contrast");
  return out;
}

// ---- numbers and named entities ----

namespace {

struct Perturbation {
  std::string text;         // whole perturbed sentence
  std::string original;     // the token before the edit
  std::string replacement;  // the token after the edit
  bool is_number = false;
};

std::string perturb_number_token(const std::string& token, NumberNeEdit edit, SplitMix64& rng) {
  std::u32string cp = text::decode_utf8(token);
  std::vector<std::size_t> digit_pos;
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (text::is_ascii_digit(cp[i])) digit_pos.push_back(i);
  }
  if (edit == NumberNeEdit::Char) {
    std::uint64_t op = rng.bounded(3);
    if (op == 1 && digit_pos.size() == 1) op = 2;  // deleting the only digit is no number
    if (op == 0) {
      // insert a digit before a seeded digit position (or append)
      std::size_t slot = rng.bounded(digit_pos.size() + 1);
      char32_t d = U'0' + static_cast<char32_t>(rng.bounded(10));
      std::size_t at = slot == digit_pos.size() ? digit_pos.back() + 1 : digit_pos[slot];
      cp.insert(cp.begin() + static_cast<std::ptrdiff_t>(at), d);
    } else if (op == 1) {
      std::size_t at = digit_pos[rng.bounded(digit_pos.size())];
      cp.erase(cp.begin() + static_cast<std::ptrdiff_t>(at));
    } else {
      std::size_t at = digit_pos[rng.bounded(digit_pos.size())];
      char32_t old = cp[at];
      char32_t d = U'0' + static_cast<char32_t>((old - U'0' + 1 + rng.bounded(9)) % 10);
      cp[at] = d;
    }
    return text::encode_utf8(cp);
  }
  // Word edit: redraw every digit, keep separators in place, same digit count.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::u32string fresh = cp;
    for (std::size_t k = 0; k < digit_pos.size(); ++k) {
      char32_t lo = (k == 0 && digit_pos.size() > 1) ? U'1' : U'0';
      std::uint64_t span = 10 - (lo - U'0');
      fresh[digit_pos[k]] = lo + static_cast<char32_t>(rng.bounded(span));
    }
    if (fresh != cp) return text::encode_utf8(fresh);
  }
  return token;  // caller treats "no change" as failure
}

std::string perturb_name_token(const std::string& name, NumberNeEdit edit,
                               const std::vector<std::string>& name_pool, SplitMix64& rng) {
  if (edit == NumberNeEdit::Word) {
    std::vector<std::string> candidates;
    for (const auto& n : name_pool) {
      if (!n.empty() && n != name) candidates.push_back(n);
    }
    if (candidates.empty()) return name;
    const std::string& pick = candidates[rng.bounded(candidates.size())];
    return text::match_capitalization(name, pick);
  }
  std::u32string cp = text::decode_utf8(name);
  std::uint64_t op = rng.bounded(3);
  if (op == 1 && cp.size() <= 2) op = 2;  // keep names recognizable
  auto inner_pos = [&] { return cp.size() > 1 ? 1 + rng.bounded(cp.size() - 1) : 0; };
  if (op == 0) {
    std::size_t at = inner_pos();
    char32_t c = U'a' + static_cast<char32_t>(rng.bounded(26));
    cp.insert(cp.begin() + static_cast<std::ptrdiff_t>(at) + 1, c);
  } else if (op == 1) {
    cp.erase(cp.begin() + static_cast<std::ptrdiff_t>(inner_pos()));
  } else {
    std::size_t at = inner_pos();
    char32_t old = cp[at];
    char32_t c;
    do {
      c = U'a' + static_cast<char32_t>(rng.bounded(26));
    } while (c == old);
    cp[at] = c;
  }
  return text::encode_utf8(cp);
}

std::optional<Perturbation> perturb_text(const std::string& s, const std::vector<Span>& entities,
                                         NumberNeEdit edit, const std::string& target_kind,
                                         const std::vector<std::string>& name_pool, SplitMix64& rng) {
  std::u32string cp = text::decode_utf8(s);
  std::vector<NumberToken> numbers = find_numbers(cp);
  std::vector<Span> persons;
  for (const auto& e : entities) {
    if (e.label == "person" && e.end <= cp.size() && e.begin < e.end) persons.push_back(e);
  }

  bool use_number;
  if (target_kind == "number") {
    if (numbers.empty()) return std::nullopt;
    use_number = true;
  } else if (target_kind == "entity") {
    if (persons.empty()) return std::nullopt;
    use_number = false;
  } else if (!numbers.empty()) {
    use_number = true;
  } else if (!persons.empty()) {
    use_number = false;
  } else {
    return std::nullopt;
  }

  Perturbation p;
  p.is_number = use_number;
  if (use_number) {
    const NumberToken& t = numbers[rng.bounded(numbers.size())];
    p.original = t.token;
    p.replacement = perturb_number_token(t.token, edit, rng);
    if (p.replacement == p.original) return std::nullopt;
    p.text = splice(cp, t.begin, t.end, p.replacement);
  } else {
    const Span& e = persons[rng.bounded(persons.size())];
    p.original = text::encode_utf8(std::u32string_view(cp).substr(e.begin, e.end - e.begin));
    p.replacement = perturb_name_token(p.original, edit, name_pool, rng);
    if (p.replacement == p.original) return std::nullopt;
    p.text = splice(cp, e.begin, e.end, p.replacement);
  }
  return p;
}

}  // namespace

GenOutcome gen_number_ne(const std::vector<std::string>& alternatives,
                         const std::vector<std::vector<Span>>& alt_entities,
                         const std::vector<Span>& ref_entities, int level, NumberNeEdit edit,
                         const std::string& target_kind, const GenMeta& meta,
                         const GeneratorConfig& cfg) {
  GenOutcome out;
  if (level < 1 || level > 3) throw std::invalid_argument("number-ne level must be 1, 2 or 3");
  std::size_t needed = level == 1 ? 1 : 2;
  if (alternatives.size() < needed) {
    out.skip("not enough alternative translations");
    return out;
  }

  std::string suffix = "numne-l" + std::to_string(level) + "-" +
                       (edit == NumberNeEdit::Char ? "char" : "word") +
                       (target_kind.empty() ? "" : "-" + target_kind);
  SplitMix64 rng = stream_for(meta.seed, "number-ne:" + suffix, meta.record_id);

  std::string good;
  std::string perturb_base;
  const std::vector<Span>* perturb_entities = nullptr;
  if (level == 1) {
    good = alternatives.front();
    perturb_base = alternatives.front();
    static const std::vector<Span> kNone;
    perturb_entities = alt_entities.empty() ? &kNone : &alt_entities.front();
  } else {
    std::size_t best = 0;
    for (std::size_t i = 1; i < alternatives.size(); ++i) {
      std::int64_t d = levenshtein(alternatives[i], meta.reference);
      std::int64_t b = levenshtein(alternatives[best], meta.reference);
      if (level == 2 ? d < b : d > b) best = i;
    }
    good = alternatives[best];
    perturb_base = meta.reference;
    perturb_entities = &ref_entities;
  }

  auto p = perturb_text(perturb_base, *perturb_entities, edit, target_kind, cfg.name_pool, rng);
  if (!p) {
    out.skip("no number or person entity to perturb");
    return out;
  }

  std::string phenomenon = (p->is_number ? "hallucination-number-level-" : "hallucination-named-entity-level-") +
                           std::to_string(level);
  ChallengeExample ex = base_example(meta, suffix, phenomenon);
  ex.good_translation = good;
  ex.incorrect_translation = p->text;
  ex.provenance = prov(meta, "number-ne", "level=" + std::to_string(level) + " " + p->original +
                                              "->" + p->replacement);
  if (ex.good_translation == ex.incorrect_translation) {
    out.skip("perturbation equals the good translation");
    return out;
  }
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- nonsense words ----

GenOutcome gen_nonsense(const std::vector<SubwordPiece>& subwords, const std::string& good_alt,
                        const GenMeta& meta, const GeneratorConfig& cfg) {
  GenOutcome out;
  if (subwords.empty()) {
    out.skip("no subword segmentation");
    return out;
  }
  if (good_alt.empty()) {
    out.skip("no alternative translation");
    return out;
  }

  // Group the piece stream into tokens.
  std::vector<std::vector<std::size_t>> tokens;
  for (std::size_t i = 0; i < subwords.size(); ++i) {
    if (subwords[i].is_continuation && !tokens.empty()) {
      tokens.back().push_back(i);
    } else {
      tokens.push_back({i});
    }
  }
  std::vector<std::size_t> multi;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].size() >= 2) multi.push_back(t);
  }
  if (multi.empty()) {
    out.skip("no multi-piece token");
    return out;
  }

  SplitMix64 rng = stream_for(meta.seed, "nonsense", meta.record_id);
  std::size_t tok_idx = multi[rng.bounded(multi.size())];
  const auto& piece_indices = tokens[tok_idx];
  std::size_t within = rng.bounded(piece_indices.size());
  std::size_t piece_idx = piece_indices[within];
  bool want_continuation = subwords[piece_idx].is_continuation;

  std::vector<std::string> candidates;
  for (const auto& v : cfg.subword_vocab) {
    bool cont = v.rfind("##", 0) == 0;
    if (cont == want_continuation && v != subwords[piece_idx].piece) candidates.push_back(v);
  }
  if (candidates.empty()) {
    out.skip("no vocabulary piece of matching class");
    return out;
  }
  const std::string& new_piece = candidates[rng.bounded(candidates.size())];

  auto strip = [](const std::string& piece) {
    return piece.rfind("##", 0) == 0 ? piece.substr(2) : piece;
  };
  std::string original_token, new_token;
  for (std::size_t i : piece_indices) {
    original_token += strip(subwords[i].piece);
    new_token += strip(i == piece_idx ? new_piece : subwords[i].piece);
  }

  std::u32string ref_cp = text::decode_utf8(meta.reference);
  std::vector<TokenSpan> spans = token_spans(ref_cp);
  if (tok_idx >= spans.size()) {
    out.skip("subword segmentation does not match the reference");
    return out;
  }

  ChallengeExample ex = base_example(meta, "nonsense", "nonsense");
  ex.good_translation = good_alt;
  ex.incorrect_translation = splice(ref_cp, spans[tok_idx].begin, spans[tok_idx].end, new_token);
  ex.provenance = prov(meta, "nonsense", subwords[piece_idx].piece + "->" + new_piece + " (" +
                                             original_token + "->" + new_token + ")");
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- lexical overlap ----

GenOutcome gen_lexical_overlap(const ParaphraseBlock& pair, const GenMeta& meta) {
  GenOutcome out;
  if (pair.label != "adversarial") {
    out.skip("pair is not an adversarial paraphrase");
    return out;
  }
  if (pair.good_mt.empty()) {
    out.skip("no corrected translation");
    return out;
  }
  if (pair.sources.empty()) {
    out.skip("no source languages");
    return out;
  }
  std::string target = tgt_lang(meta.langpair);
  for (const auto& [lang, source_text] : pair.sources) {
    GenMeta fanned = meta;
    fanned.langpair = lang + "-" + target;
    fanned.source = source_text;
    ChallengeExample ex = base_example(fanned, "lexical-overlap." + lang, "lexical-overlap");
    ex.good_translation = pair.good_mt;
    ex.incorrect_translation = pair.other;
    ex.provenance = prov(meta, "lexical-overlap", "source_lang=" + lang);
    out.examples.push_back(std::move(ex));
  }
  return out;
}

// ---- XNLI sentence-level meaning ----

GenOutcome gen_xnli_meaning(const NliBlock& nli, const GenMeta& meta, const GeneratorConfig& cfg) {
  GenOutcome out;
  if (nli.label == "entailment") {
    out.skip("entailment label");
    return out;
  }
  if (nli.label != "contradiction" && nli.label != "neutral") {
    out.skip("unknown label " + nli.label);
    return out;
  }
  if (chrf(nli.premise, nli.hypothesis) < cfg.chrf_xnli_threshold) {
    out.skip("premise/hypothesis chrF below threshold");
    return out;
  }
  bool premise_is_ref = nli.ref_side != "hypothesis";
  const std::string& ref = premise_is_ref ? nli.premise : nli.hypothesis;
  const std::string& other = premise_is_ref ? nli.hypothesis : nli.premise;
  if (nli.mt.empty()) {
    out.skip("no translation of the reference side");
    return out;
  }
  if (nli.sources.empty()) {
    out.skip("no source languages");
    return out;
  }

  std::size_t ref_tokens = text::whitespace_tokens(ref).size();
  std::size_t other_tokens = text::whitespace_tokens(other).size();
  std::string direction = other_tokens > ref_tokens ? "addition" : "omission";
  std::string phenomenon = "xnli-" + direction + "-" + nli.label;

  std::string target = tgt_lang(meta.langpair);
  for (const auto& [lang, source_text] : nli.sources) {
    GenMeta fanned = meta;
    fanned.langpair = lang + "-" + target;
    fanned.source = source_text;
    fanned.reference = ref;
    ChallengeExample ex = base_example(fanned, "xnli." + lang, phenomenon);
    ex.good_translation = nli.mt;
    ex.incorrect_translation = other;
    ex.provenance = prov(meta, "xnli", "label=" + nli.label + " ref_side=" + nli.ref_side +
                                           " source_lang=" + lang);
    out.examples.push_back(std::move(ex));
  }
  return out;
}

// ---- copy source ----

GenOutcome gen_copy_source(const std::string& good_mt, const GenMeta& meta) {
  GenOutcome out;
  if (src_lang(meta.langpair) == tgt_lang(meta.langpair)) {
    out.skip("source language equals target language");
    return out;
  }
  if (good_mt.empty()) {
    out.skip("no translation");
    return out;
  }
  ChallengeExample ex = base_example(meta, "copy-source", "copy-source");
  ex.good_translation = good_mt;
  ex.incorrect_translation = meta.source;
  ex.provenance = prov(meta, "copy-source", "");
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- wrong language ----

GenOutcome gen_wrong_language(const std::string& good_mt, const SimilarBlock& similar,
                              const GenMeta& meta, const GeneratorConfig& cfg) {
  GenOutcome out;
  const SimilarLanguageTriple* triple =
      cfg.find_similar_triple(src_lang(meta.langpair), tgt_lang(meta.langpair));
  if (!triple || triple->similar != similar.lang) {
    throw std::invalid_argument("similar-language triple not configured: " + src_lang(meta.langpair) +
                                "-" + tgt_lang(meta.langpair) + "-" + similar.lang);
  }
  if (good_mt.empty()) {
    out.skip("no translation");
    return out;
  }
  if (similar.reference.empty()) {
    out.skip("no similar-language reference");
    return out;
  }
  ChallengeExample ex = base_example(meta, "wrong-language", "similar-language-" + triple->resource);
  ex.good_translation = good_mt;
  ex.incorrect_translation = similar.reference;
  ex.provenance = prov(meta, "wrong-language", "similar=" + similar.lang);
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- taxonomic substitution ----

std::optional<TaxonomicMode> taxonomic_mode_from_name(std::string_view name) {
  if (name == "overtranslation") return TaxonomicMode::Overtranslation;
  if (name == "undertranslation") return TaxonomicMode::Undertranslation;
  if (name == "hypernym_vs_hyponym") return TaxonomicMode::HypernymVsHyponym;
  if (name == "hypernym_vs_distractor") return TaxonomicMode::HypernymVsDistractor;
  if (name == "antonym_noun") return TaxonomicMode::AntonymNoun;
  return std::nullopt;
}

namespace {

struct ModeSpec {
  const char* name;
  const char* phenomenon;
  const char* good_relation;       // nullptr: good translation is the alternative
  const char* incorrect_relation;
};

ModeSpec mode_spec(TaxonomicMode mode) {
  switch (mode) {
    case TaxonomicMode::Overtranslation:
      return {"overtranslation", "overtranslation", nullptr, "hyponym"};
    case TaxonomicMode::Undertranslation:
      return {"undertranslation", "undertranslation", nullptr, "hypernym"};
    case TaxonomicMode::HypernymVsHyponym:
      return {"hypernym_vs_hyponym", "real-world-knowledge-hypernym-vs-hyponym", "hypernym", "hyponym"};
    case TaxonomicMode::HypernymVsDistractor:
      return {"hypernym_vs_distractor", "real-world-knowledge-hypernym-vs-distractor", "hypernym",
              "cohyponym"};
    case TaxonomicMode::AntonymNoun:
      return {"antonym_noun", "antonym-replacement", nullptr, "antonym"};
  }
  throw std::logic_error("unreachable");
}

// Token split into leading punctuation, core word, trailing punctuation.
struct TokenParts {
  std::u32string prefix, core, suffix;
};

TokenParts split_token(const std::u32string& token) {
  TokenParts parts;
  std::size_t b = 0, e = token.size();
  while (b < e && text::is_punct(token[b])) ++b;
  while (e > b && text::is_punct(token[e - 1])) --e;
  parts.prefix = token.substr(0, b);
  parts.core = token.substr(b, e - b);
  parts.suffix = token.substr(e);
  return parts;
}

}  // namespace

GenOutcome gen_taxonomic_substitution(const std::string& good_alt, const Lexicon& lexicon,
                                      TaxonomicMode mode, const GenMeta& meta,
                                      const GeneratorConfig& cfg) {
  (void)cfg;
  GenOutcome out;
  ModeSpec spec = mode_spec(mode);
  bool needs_alt = spec.good_relation == nullptr;
  if (needs_alt && good_alt.empty()) {
    out.skip("no alternative translation");
    return out;
  }

  std::u32string ref_cp = text::decode_utf8(meta.reference);
  std::vector<TokenSpan> spans = token_spans(ref_cp);

  struct Candidate {
    std::size_t span_index;
    const std::map<std::string, std::vector<std::string>>* relations;
    TokenParts parts;
  };
  std::vector<Candidate> eligible;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    TokenParts parts = split_token(ref_cp.substr(spans[i].begin, spans[i].end - spans[i].begin));
    if (parts.core.empty()) continue;
    std::string key = ascii_lower(text::encode_utf8(parts.core));
    auto it = lexicon.find(key);
    if (it == lexicon.end()) continue;
    bool ok = it->second.count(spec.incorrect_relation) &&
              !it->second.at(spec.incorrect_relation).empty();
    if (ok && spec.good_relation) {
      ok = it->second.count(spec.good_relation) && !it->second.at(spec.good_relation).empty();
    }
    if (ok) eligible.push_back({i, &it->second, parts});
  }
  if (eligible.empty()) {
    out.skip("no noun with required relation");
    return out;
  }

  SplitMix64 rng = stream_for(meta.seed, std::string("taxonomic:") + spec.name, meta.record_id);
  const Candidate& cand = eligible[rng.bounded(eligible.size())];
  std::string core = text::encode_utf8(cand.parts.core);

  auto substituted = [&](const char* relation) {
    // First sense listed for the relation.
    const std::string& target = cand.relations->at(relation).front();
    std::string replacement = text::encode_utf8(cand.parts.prefix) +
                              text::match_capitalization(core, target) +
                              text::encode_utf8(cand.parts.suffix);
    const TokenSpan& s = spans[cand.span_index];
    return splice(ref_cp, s.begin, s.end, replacement);
  };

  ChallengeExample ex = base_example(meta, spec.phenomenon, spec.phenomenon);
  ex.good_translation = spec.good_relation ? substituted(spec.good_relation) : good_alt;
  ex.incorrect_translation = substituted(spec.incorrect_relation);
  ex.provenance = prov(meta, "taxonomic", std::string("mode=") + spec.name + " noun=" + core);
  if (ex.good_translation == ex.incorrect_translation) {
    out.skip("substitution produced no contrast");
    return out;
  }
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- punctuation ----

std::optional<PunctuationStrategy> punctuation_strategy_from_name(std::string_view name) {
  if (name == "delete_all") return PunctuationStrategy::DeleteAll;
  if (name == "delete_quotes") return PunctuationStrategy::DeleteQuotes;
  if (name == "delete_commas") return PunctuationStrategy::DeleteCommas;
  if (name == "exclaim_to_question") return PunctuationStrategy::ExclaimToQuestion;
  return std::nullopt;
}

namespace {

bool is_quote_char(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case 0x00AB: case 0x00BB:  //  " ' « »
    case 0x201E: case 0x201C: case 0x201D:            //  „ “ ”
    case 0x201A: case 0x2018: case 0x2019:            //  ‚ ‘ ’
      return true;
    default:
      return false;
  }
}

const char* punctuation_phenomenon(PunctuationStrategy s) {
  switch (s) {
    case PunctuationStrategy::DeleteAll: return "punctuation:deletion_all";
    case PunctuationStrategy::DeleteQuotes: return "punctuation:deletion_quotes";
    case PunctuationStrategy::DeleteCommas: return "punctuation:deletion_commas";
    case PunctuationStrategy::ExclaimToQuestion: return "punctuation:statement-to-question";
  }
  return "?";
}

}  // namespace

GenOutcome gen_punctuation(const std::string& good_trans, PunctuationStrategy strategy,
                           const GenMeta& meta) {
  GenOutcome out;
  if (good_trans.empty()) {
    out.skip("no translation");
    return out;
  }
  std::u32string cp = text::decode_utf8(good_trans);
  std::u32string modified;
  modified.reserve(cp.size());
  bool touched = false;
  for (char32_t c : cp) {
    bool drop = false;
    switch (strategy) {
      case PunctuationStrategy::DeleteAll:
        drop = text::is_punct(c);
        break;
      case PunctuationStrategy::DeleteQuotes:
        drop = is_quote_char(c);
        break;
      case PunctuationStrategy::DeleteCommas:
        drop = (c == U',');
        break;
      case PunctuationStrategy::ExclaimToQuestion:
        if (c == U'!') {
          modified.push_back(U'?');
          touched = true;
          continue;
        }
        break;
    }
    if (drop) {
      touched = true;
    } else {
      modified.push_back(c);
    }
  }
  if (!touched) {
    out.skip(std::string("strategy not applicable: ") + punctuation_phenomenon(strategy));
    return out;
  }
  const char* phenomenon = punctuation_phenomenon(strategy);
  ChallengeExample ex = base_example(meta, phenomenon, phenomenon);
  ex.good_translation = good_trans;
  ex.incorrect_translation = strategy == PunctuationStrategy::ExclaimToQuestion
                                 ? text::encode_utf8(modified)
                                 : text::collapse_spaces(text::encode_utf8(modified));
  ex.provenance = prov(meta, "punctuation", std::string("strategy=") + phenomenon);
  if (ex.incorrect_translation == ex.good_translation || ex.incorrect_translation.empty()) {
    out.skip("strategy produced no contrast");
    return out;
  }
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- pronouns ----

GenOutcome gen_pronoun_error(const std::string& trans, const PronounBlock& pronoun,
                             PronounStrategy strategy, const GenMeta& meta,
                             const GeneratorConfig& cfg) {
  GenOutcome out;
  if (trans.empty()) {
    out.skip("no translation");
    return out;
  }
  std::u32string cp = text::decode_utf8(trans);
  if (pronoun.end > cp.size() || pronoun.begin >= pronoun.end) {
    out.skip("pronoun span out of range");
    return out;
  }

  std::string incorrect;
  std::string detail;
  if (strategy == PronounStrategy::Omission) {
    incorrect = text::collapse_spaces(splice(cp, pronoun.begin, pronoun.end, ""));
    detail = "strategy=omission form=" + pronoun.form;
  } else {
    auto it = cfg.pronoun_confusions.find(ascii_lower(pronoun.form));
    if (it == cfg.pronoun_confusions.end() || it->second.empty()) {
      out.skip("no confusion set for pronoun " + pronoun.form);
      return out;
    }
    SplitMix64 rng = stream_for(meta.seed, "pronoun-substitution", meta.record_id);
    const std::string& pick = it->second[rng.bounded(it->second.size())];
    std::string substitute = text::match_capitalization(pronoun.form, pick);
    incorrect = splice(cp, pronoun.begin, pronoun.end, substitute);
    detail = "strategy=substitution " + pronoun.form + "->" + substitute;
  }

  std::string suffix = strategy == PronounStrategy::Omission ? "deletion" : "substitution";
  ChallengeExample ex = base_example(meta, "pronoun-" + suffix, pronoun.category + ":" + suffix);
  ex.good_translation = trans;
  ex.incorrect_translation = incorrect;
  ex.provenance = prov(meta, "pronoun", detail);
  if (ex.incorrect_translation == ex.good_translation || ex.incorrect_translation.empty()) {
    out.skip("strategy produced no contrast");
    return out;
  }
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- discourse connectives ----

GenOutcome gen_connective(const std::string& base_text, const ConnectiveBlock& connective,
                          const GenMeta& meta, const GeneratorConfig& cfg) {
  GenOutcome out;
  auto rule_it = cfg.connective_rules.find(connective.word);
  if (rule_it == cfg.connective_rules.end()) {
    throw std::invalid_argument("no connective rule configured for '" + connective.word + "'");
  }
  const auto& rule = rule_it->second;
  auto good_it = rule.find(connective.sense);
  if (good_it == rule.end()) {
    throw std::invalid_argument("no substitution configured for sense '" + connective.sense +
                                "' of '" + connective.word + "'");
  }
  const std::string* wrong = nullptr;
  for (const auto& [sense, substitute] : rule) {
    if (sense != connective.sense) {
      wrong = &substitute;
      break;
    }
  }
  if (!wrong) {
    throw std::invalid_argument("connective rule for '" + connective.word +
                                "' has no alternative sense");
  }

  std::u32string cp = text::decode_utf8(base_text);
  auto pos = find_word(cp, text::decode_utf8(connective.word));
  if (!pos) {
    out.skip("connective not found in text");
    return out;
  }
  std::size_t len = text::decode_utf8(connective.word).size();

  ChallengeExample ex =
      base_example(meta, "connective",
                   "ambiguous-translation-wrong-discourse-connective-" + connective.word + "-" +
                       connective.sense);
  ex.reference = base_text;
  ex.good_translation = splice(cp, *pos, *pos + len, good_it->second);
  ex.incorrect_translation = splice(cp, *pos, *pos + len, *wrong);
  ex.provenance = prov(meta, "connective", connective.word + " sense=" + connective.sense + " good=" +
                                               good_it->second + " incorrect=" + *wrong);
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- ambiguity assembly ----

GenOutcome gen_ambiguity_gender(const GenderBlock& gender, const GenMeta& meta) {
  GenOutcome out;
  if (gender.true_gender != "female" && gender.true_gender != "male") {
    throw std::invalid_argument("true_gender must be female or male, got '" + gender.true_gender + "'");
  }
  if (gender.stereotype != "pro" && gender.stereotype != "anti") {
    throw std::invalid_argument("stereotype must be pro or anti, got '" + gender.stereotype + "'");
  }
  if (gender.female_variant == gender.male_variant) {
    out.skip("gender variants are identical");
    return out;
  }
  bool female = gender.true_gender == "female";
  ChallengeExample ex = base_example(
      meta, "gender", "ambiguous-translation-wrong-gender-" + gender.true_gender + "-" + gender.stereotype);
  ex.good_translation = female ? gender.female_variant : gender.male_variant;
  ex.incorrect_translation = female ? gender.male_variant : gender.female_variant;
  ex.provenance = prov(meta, "gender", "true_gender=" + gender.true_gender);
  out.examples.push_back(std::move(ex));
  return out;
}

GenOutcome gen_ambiguity_wsd(const WsdBlock& wsd, const GenMeta& meta) {
  GenOutcome out;
  if (wsd.frequency != "frequent" && wsd.frequency != "infrequent") {
    throw std::invalid_argument("sense frequency must be frequent or infrequent, got '" +
                                wsd.frequency + "'");
  }
  if (wsd.correct_cue == wsd.wrong_cue) {
    out.skip("cue variants are identical");
    return out;
  }
  auto pattern = [&](const std::string& cue) {
    std::string filled = cue.empty() ? wsd.word : cue + " " + wsd.word;
    return "What does \"" + filled + "\" mean?";
  };
  ChallengeExample ex =
      base_example(meta, "wsd", "ambiguous-translation-wrong-sense-" + wsd.frequency);
  ex.reference = pattern("");
  ex.good_translation = pattern(wsd.correct_cue);
  ex.incorrect_translation = pattern(wsd.wrong_cue);
  ex.provenance = prov(meta, "wsd", "word=" + wsd.word + " frequency=" + wsd.frequency);
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- commonsense variants ----

namespace {

// Applies the first matching clause pattern; group 1 is the clause to cut.
std::optional<std::string> strip_clause(const std::string& s,
                                        const std::vector<std::string>& patterns) {
  for (const auto& pat : patterns) {
    std::regex re(pat);
    std::smatch m;
    if (std::regex_search(s, m, re) && m.size() >= 2 && m[1].matched) {
      std::string stripped = s.substr(0, static_cast<std::size_t>(m.position(1))) +
                             s.substr(static_cast<std::size_t>(m.position(1) + m.length(1)));
      return text::collapse_spaces(stripped);
    }
  }
  return std::nullopt;
}

}  // namespace

GenOutcome gen_commonsense_variants(const CommonsenseBlock& block, const GenMeta& meta,
                                    const GeneratorConfig& cfg) {
  GenOutcome out;
  if (block.variant != "src-and-ref" && block.variant != "only-ref") {
    throw std::invalid_argument("commonsense variant must be src-and-ref or only-ref, got '" +
                                block.variant + "'");
  }
  auto stripped_ref = strip_clause(meta.reference, cfg.clause_strip_patterns);
  if (!stripped_ref) {
    out.skip("clause pattern did not match the reference");
    return out;
  }
  std::string source = meta.source;
  if (block.variant == "src-and-ref") {
    auto stripped_src = strip_clause(meta.source, cfg.clause_strip_patterns);
    if (!stripped_src) {
      out.skip("clause pattern did not match the source");
      return out;
    }
    source = *stripped_src;
  }
  if (block.good_full == block.incorrect_full) {
    out.skip("translation variants are identical");
    return out;
  }
  std::string phenomenon = block.variant == "src-and-ref" ? "commonsense-src-and-ref-ambiguous"
                                                          : "commonsense-only-ref-ambiguous";
  ChallengeExample ex = base_example(meta, "commonsense", phenomenon);
  ex.source = source;
  ex.reference = *stripped_ref;
  ex.good_translation = block.good_full;
  ex.incorrect_translation = block.incorrect_full;
  ex.provenance = prov(meta, "commonsense", "variant=" + block.variant);
  out.examples.push_back(std::move(ex));
  return out;
}

// ---- driver ----

namespace {

std::vector<std::string> possible_phenomena(const CorpusRecord& record, const GenTask& task) {
  const std::string& r = task.recipe;
  if (r == "addition-omission") return {"addition", "omission"};
  if (r == "date-time") return {"hallucination-date-time"};
  if (r == "unit-conversion") {
    return {"hallucination-unit-conversion-amount-matches-ref",
            "hallucination-unit-conversion-unit-matches-ref"};
  }
  if (r == "number-ne") {
    std::string n = std::to_string(task.level);
    return {"hallucination-number-level-" + n, "hallucination-named-entity-level-" + n};
  }
  if (r == "nonsense") return {"nonsense"};
  if (r == "lexical-overlap") return {"lexical-overlap"};
  if (r == "xnli") {
    return {"xnli-addition-contradiction", "xnli-addition-neutral", "xnli-omission-contradiction",
            "xnli-omission-neutral"};
  }
  if (r == "copy-source") return {"copy-source"};
  if (r == "wrong-language") return {"similar-language-high", "similar-language-low"};
  if (r == "taxonomic") {
    auto mode = taxonomic_mode_from_name(task.mode);
    if (!mode) throw std::invalid_argument("unknown taxonomic mode '" + task.mode + "'");
    return {mode_spec(*mode).phenomenon};
  }
  if (r == "punctuation") {
    auto strategy = punctuation_strategy_from_name(task.strategy);
    if (!strategy) throw std::invalid_argument("unknown punctuation strategy '" + task.strategy + "'");
    return {punctuation_phenomenon(*strategy)};
  }
  if (r == "pronoun") {
    if (!record.pronoun) throw std::invalid_argument("pronoun task without pronoun block");
    if (task.strategy == "omission") return {record.pronoun->category + ":deletion"};
    if (task.strategy == "substitution") return {record.pronoun->category + ":substitution"};
    throw std::invalid_argument("unknown pronoun strategy '" + task.strategy + "'");
  }
  if (r == "connective") {
    if (!record.connective) throw std::invalid_argument("connective task without connective block");
    return {"ambiguous-translation-wrong-discourse-connective-" + record.connective->word + "-" +
            record.connective->sense};
  }
  if (r == "gender") {
    if (!record.gender) throw std::invalid_argument("gender task without gender block");
    return {"ambiguous-translation-wrong-gender-" + record.gender->true_gender + "-" +
            record.gender->stereotype};
  }
  if (r == "wsd") {
    if (!record.wsd) throw std::invalid_argument("wsd task without wsd block");
    return {"ambiguous-translation-wrong-sense-" + record.wsd->frequency};
  }
  if (r == "commonsense") {
    if (!record.commonsense) throw std::invalid_argument("commonsense task without commonsense block");
    return {record.commonsense->variant == "src-and-ref" ? "commonsense-src-and-ref-ambiguous"
                                                         : "commonsense-only-ref-ambiguous"};
  }
  throw std::invalid_argument("unknown recipe '" + r + "'");
}

GenOutcome run_task(const CorpusRecord& record, const GenTask& task, const GenMeta& meta,
                    const GeneratorConfig& cfg, const Lexicon& lexicon) {
  const std::string& r = task.recipe;
  if (r == "addition-omission") return gen_addition_omission(record.segment, meta, cfg);
  if (r == "date-time") {
    return gen_date_time(record.segment.translation, tgt_lang(record.langpair), meta, cfg);
  }
  if (r == "unit-conversion") return gen_unit_conversion(record.segment.translation, meta, cfg);
  if (r == "number-ne") {
    NumberNeEdit edit;
    if (task.edit == "char") {
      edit = NumberNeEdit::Char;
    } else if (task.edit == "word") {
      edit = NumberNeEdit::Word;
    } else {
      throw std::invalid_argument("number-ne edit must be char or word, got '" + task.edit + "'");
    }
    return gen_number_ne(record.alternatives, record.alt_entities, record.segment.entities,
                         task.level, edit, task.target, meta, cfg);
  }
  if (r == "nonsense") return gen_nonsense(record.segment.subwords, record.good_alt, meta, cfg);
  if (r == "lexical-overlap") {
    if (!record.paraphrase) throw std::invalid_argument("lexical-overlap task without paraphrase block");
    return gen_lexical_overlap(*record.paraphrase, meta);
  }
  if (r == "xnli") {
    if (!record.nli) throw std::invalid_argument("xnli task without nli block");
    return gen_xnli_meaning(*record.nli, meta, cfg);
  }
  if (r == "copy-source") return gen_copy_source(record.segment.translation, meta);
  if (r == "wrong-language") {
    if (!record.similar) throw std::invalid_argument("wrong-language task without similar block");
    return gen_wrong_language(record.segment.translation, *record.similar, meta, cfg);
  }
  if (r == "taxonomic") {
    auto mode = taxonomic_mode_from_name(task.mode);
    if (!mode) throw std::invalid_argument("unknown taxonomic mode '" + task.mode + "'");
    return gen_taxonomic_substitution(record.good_alt, lexicon, *mode, meta, cfg);
  }
  if (r == "punctuation") {
    auto strategy = punctuation_strategy_from_name(task.strategy);
    if (!strategy) throw std::invalid_argument("unknown punctuation strategy '" + task.strategy + "'");
    return gen_punctuation(record.segment.translation, *strategy, meta);
  }
  if (r == "pronoun") {
    if (!record.pronoun) throw std::invalid_argument("pronoun task without pronoun block");
    PronounStrategy strategy = task.strategy == "omission" ? PronounStrategy::Omission
                                                           : PronounStrategy::Substitution;
    return gen_pronoun_error(record.segment.translation, *record.pronoun, strategy, meta, cfg);
  }
  if (r == "connective") {
    if (!record.connective) throw std::invalid_argument("connective task without connective block");
    return gen_connective(meta.reference, *record.connective, meta, cfg);
  }
  if (r == "gender") {
    if (!record.gender) throw std::invalid_argument("gender task without gender block");
    return gen_ambiguity_gender(*record.gender, meta);
  }
  if (r == "wsd") {
    if (!record.wsd) throw std::invalid_argument("wsd task without wsd block");
    return gen_ambiguity_wsd(*record.wsd, meta);
  }
  if (r == "commonsense") {
    if (!record.commonsense) throw std::invalid_argument("commonsense task without commonsense block");
    return gen_commonsense_variants(*record.commonsense, meta, cfg);
  }
  throw std::invalid_argument("unknown recipe '" + r + "'");
}

}  // namespace

GenerateResult generate_all(const std::vector<CorpusRecord>& records, const GeneratorConfig& cfg,
                            const Lexicon& lexicon, const PhenomenonTaxonomy& taxonomy,
                            std::uint64_t seed, const std::set<std::string>& phenomena_filter) {
  for (const auto& leaf : phenomena_filter) {
    if (!taxonomy.contains(leaf)) {
      throw std::invalid_argument("unknown phenomenon in filter: " + leaf);
    }
  }

  GenerateResult result;
  std::map<std::string, std::string> ids_seen;  // example id -> record id

  for (const auto& record : records) {
    GenMeta meta;
    meta.record_id = record.id;
    meta.langpair = record.langpair;
    meta.source = record.segment.text;
    meta.reference = record.reference;
    meta.seed = seed;

    for (const auto& task : record.tasks) {
      auto possible = possible_phenomena(record, task);
      if (!phenomena_filter.empty()) {
        bool any = std::any_of(possible.begin(), possible.end(),
                               [&](const std::string& p) { return phenomena_filter.count(p) > 0; });
        if (!any) continue;  // recipe cannot contribute, not an input
      }

      RecipeStats& stats = result.stats[task.recipe];
      stats.inputs += 1;

      GenOutcome outcome = run_task(record, task, meta, cfg, lexicon);

      std::string drop_reason;
      std::vector<ChallengeExample> kept;
      for (auto& ex : outcome.examples) {
        auto violations = validate(ex, taxonomy);
        if (!violations.empty()) {
          if (drop_reason.empty()) drop_reason = "failed validation: " + violations.front();
          continue;
        }
        if (!phenomena_filter.empty() && !phenomena_filter.count(ex.phenomenon)) continue;
        kept.push_back(std::move(ex));
      }

      if (kept.empty()) {
        if (!outcome.skipped.empty()) {
          for (const auto& [reason, count] : outcome.skipped) stats.skipped[reason] += count;
        } else if (!drop_reason.empty()) {
          stats.skipped[drop_reason] += 1;
        } else {
          stats.skipped["filtered out"] += 1;
        }
        continue;
      }

      stats.emitted_units += 1;
      stats.examples += static_cast<int>(kept.size());
      for (auto& ex : kept) {
        auto [it, inserted] = ids_seen.emplace(ex.id, record.id);
        if (!inserted) {
          throw std::invalid_argument("duplicate example id '" + ex.id + "' from records '" +
                                      it->second + "' and '" + record.id + "'");
        }
        result.examples.push_back(std::move(ex));
      }
    }
  }
  return result;
}

}  // namespace aces
