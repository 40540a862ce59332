#include "aces/corpus_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aces/rng.hpp"
#include "aces/text.hpp"
#include "json.hpp"

namespace aces {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& msg) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cols;
}

constexpr const char* kTsvHeader =
    "id\tsource\treference\tgood_translation\tincorrect_translation\tphenomenon\tlangpair\tflags\tprovenance";

std::string require_string(const ordered_json& j, const char* key, const std::string& path,
                           std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(path, line, std::string("missing field: ") + key);
  if (!it->is_string()) parse_fail(path, line, std::string("field is not a string: ") + key);
  return it->get<std::string>();
}

void check_no_tabs(const ChallengeExample& ex) {
  auto check = [&](const std::string& field, const std::string& value) {
    if (value.find('\t') != std::string::npos || value.find('\n') != std::string::npos ||
        value.find('\r') != std::string::npos) {
      throw std::invalid_argument("TSV field contains tab or newline: " + field + " of " + ex.id);
    }
  };
  check("id", ex.id);
  check("source", ex.source);
  check("reference", ex.reference);
  check("good_translation", ex.good_translation);
  check("incorrect_translation", ex.incorrect_translation);
  check("phenomenon", ex.phenomenon);
  check("langpair", ex.langpair);
  check("provenance", ex.provenance);
  for (const auto& f : ex.flags) {
    check("flags", f);
    if (f.find(',') != std::string::npos) {
      throw std::invalid_argument("flag contains comma: " + f);
    }
  }
}

std::string join_flags(const std::set<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ',';
    out += f;
  }
  return out;
}

std::set<std::string> split_flags(const std::string& s) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string f = s.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!f.empty()) out.insert(f);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void validate_loaded(const std::vector<ChallengeExample>& examples,
                     const std::vector<std::size_t>& lines, const std::string& path,
                     const PhenomenonTaxonomy& taxonomy) {
  std::map<std::string, std::size_t> seen;  // id -> line
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    auto violations = validate(ex, taxonomy);
    if (!violations.empty()) {
      std::string msg = "invalid example '" + ex.id + "':";
      for (const auto& v : violations) msg += " " + v + ";";
      parse_fail(path, lines[i], msg);
    }
    auto [it, inserted] = seen.emplace(ex.id, lines[i]);
    if (!inserted) {
      parse_fail(path, lines[i],
                 "duplicate id '" + ex.id + "' (first at line " + std::to_string(it->second) + ")");
    }
  }
}

}  // namespace

std::optional<SetFormat> format_from_name(std::string_view name) {
  if (name == "jsonl") return SetFormat::Jsonl;
  if (name == "tsv") return SetFormat::Tsv;
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::vector<ChallengeExample> load_challenge_set(const std::string& path, SetFormat format,
                                                 const PhenomenonTaxonomy& taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<ChallengeExample> examples;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (format == SetFormat::Jsonl) {
      ordered_json j = ordered_json::parse(line, nullptr, false);
      if (j.is_discarded()) parse_fail(path, lineno, "malformed JSON");
      if (!j.is_object()) parse_fail(path, lineno, "line is not a JSON object");
      if (j.contains("_provenance")) continue;  // file header
      ChallengeExample ex;
      ex.id = require_string(j, "id", path, lineno);
      ex.source = require_string(j, "source", path, lineno);
      ex.reference = require_string(j, "reference", path, lineno);
      ex.good_translation = require_string(j, "good_translation", path, lineno);
      ex.incorrect_translation = require_string(j, "incorrect_translation", path, lineno);
      ex.phenomenon = require_string(j, "phenomenon", path, lineno);
      ex.langpair = require_string(j, "langpair", path, lineno);
      if (j.contains("flags")) {
        if (!j["flags"].is_array()) parse_fail(path, lineno, "field is not an array: flags");
        for (const auto& f : j["flags"]) {
          if (!f.is_string()) parse_fail(path, lineno, "flag is not a string");
          ex.flags.insert(f.get<std::string>());
        }
      }
      if (j.contains("provenance")) {
        if (!j["provenance"].is_string()) parse_fail(path, lineno, "field is not a string: provenance");
        ex.provenance = j["provenance"].get<std::string>();
      }
      examples.push_back(std::move(ex));
      lines.push_back(lineno);
    } else {
      if (line[0] == '#') continue;  // provenance comment
      if (!header_seen) {
        header_seen = true;
        if (line != kTsvHeader) parse_fail(path, lineno, "unexpected TSV header");
        continue;
      }
      auto cols = split_tabs(line);
      if (cols.size() != 9) {
        parse_fail(path, lineno, "expected 9 columns, got " + std::to_string(cols.size()));
      }
      ChallengeExample ex;
      ex.id = cols[0];
      ex.source = cols[1];
      ex.reference = cols[2];
      ex.good_translation = cols[3];
      ex.incorrect_translation = cols[4];
      ex.phenomenon = cols[5];
      ex.langpair = cols[6];
      ex.flags = split_flags(cols[7]);
      ex.provenance = cols[8];
      examples.push_back(std::move(ex));
      lines.push_back(lineno);
    }
  }
  if (format == SetFormat::Tsv && !header_seen) {
    parse_fail(path, lineno == 0 ? 1 : lineno, "missing TSV header");
  }
  validate_loaded(examples, lines, path, taxonomy);
  return examples;
}

void save_challenge_set(const std::vector<ChallengeExample>& examples, const std::string& path,
                        SetFormat format, const std::string& provenance) {
  std::string out;
  if (format == SetFormat::Jsonl) {
    if (!provenance.empty()) {
      ordered_json header;
      header["_provenance"] = provenance;
      out += header.dump();
      out += '\n';
    }
    for (const auto& ex : examples) {
      ordered_json j;
      j["id"] = ex.id;
      j["source"] = ex.source;
      j["reference"] = ex.reference;
      j["good_translation"] = ex.good_translation;
      j["incorrect_translation"] = ex.incorrect_translation;
      j["phenomenon"] = ex.phenomenon;
      j["langpair"] = ex.langpair;
      j["flags"] = ex.flags;
      j["provenance"] = ex.provenance;
      out += j.dump();
      out += '\n';
    }
  } else {
    if (!provenance.empty()) {
      out += "# ";
      out += provenance;
      out += '\n';
    }
    out += kTsvHeader;
    out += '\n';
    for (const auto& ex : examples) {
      check_no_tabs(ex);
      out += ex.id;
      out += '\t';
      out += ex.source;
      out += '\t';
      out += ex.reference;
      out += '\t';
      out += ex.good_translation;
      out += '\t';
      out += ex.incorrect_translation;
      out += '\t';
      out += ex.phenomenon;
      out += '\t';
      out += ex.langpair;
      out += '\t';
      out += join_flags(ex.flags);
      out += '\t';
      out += ex.provenance;
      out += '\n';
    }
  }
  write_file_atomic(path, out);
}

std::vector<ChallengeExample> subsample_phenomenon(const std::vector<ChallengeExample>& examples,
                                                   std::size_t cap, std::uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("subsample cap must be >= 1");
  if (examples.empty()) return {};
  for (const auto& ex : examples) {
    if (ex.phenomenon != examples.front().phenomenon) {
      throw std::invalid_argument("subsample_phenomenon: mixed phenomena (" +
                                  examples.front().phenomenon + " vs " + ex.phenomenon + ")");
    }
  }
  if (examples.size() <= cap) return examples;

  // Indices per langpair, file order preserved.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    groups[examples[i].langpair].push_back(i);
  }
  const std::size_t total = examples.size();

  // Largest-remainder allocation, integer arithmetic throughout. Remainders
  // are compared as cap*n mod total; equal remainders fall back to langpair
  // name order (std::map iteration is already lexicographic).
  struct Alloc {
    std::string langpair;
    std::size_t base;
    std::size_t remainder;
  };
  std::vector<Alloc> allocs;
  std::size_t assigned = 0;
  for (const auto& [lp, idx] : groups) {
    std::size_t scaled = cap * idx.size();
    allocs.push_back({lp, scaled / total, scaled % total});
    assigned += scaled / total;
  }
  std::size_t leftover = cap - assigned;
  std::stable_sort(allocs.begin(), allocs.end(),
                   [](const Alloc& a, const Alloc& b) { return a.remainder > b.remainder; });
  for (std::size_t i = 0; i < allocs.size() && leftover > 0; ++i, --leftover) {
    allocs[i].base += 1;
  }

  std::vector<std::size_t> chosen;
  chosen.reserve(cap);
  for (const auto& a : allocs) {
    auto& idx = groups[a.langpair];
    std::size_t k = std::min(a.base, idx.size());
    SplitMix64 rng = stream_for(seed, "subsample", a.langpair);
    // Partial Fisher-Yates: the first k entries become the sample.
    std::vector<std::size_t> pool = idx;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + rng.bounded(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    chosen.insert(chosen.end(), pool.begin(), pool.begin() + k);
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<ChallengeExample> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(examples[i]);
  return out;
}

// -------- Annotated corpus --------

namespace {

Span span_from_json(const ordered_json& j, const std::string& path, std::size_t line) {
  if (!j.is_object() || !j.contains("begin") || !j.contains("end")) {
    parse_fail(path, line, "span needs begin/end");
  }
  Span s;
  s.begin = j["begin"].get<std::size_t>();
  s.end = j["end"].get<std::size_t>();
  if (j.contains("label")) s.label = j["label"].get<std::string>();
  return s;
}

std::map<std::string, std::string> string_map_from_json(const ordered_json& j) {
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<std::string>();
  return out;
}

}  // namespace

std::vector<CorpusRecord> load_annotated_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CorpusRecord> records;
  std::map<std::string, std::size_t> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) parse_fail(path, lineno, "malformed JSON");
    if (j.contains("_provenance")) continue;

    CorpusRecord r;
    r.id = require_string(j, "id", path, lineno);
    r.langpair = require_string(j, "langpair", path, lineno);
    r.segment.text = require_string(j, "text", path, lineno);
    r.reference = require_string(j, "reference", path, lineno);
    if (j.contains("translation")) r.segment.translation = j["translation"].get<std::string>();
    if (j.contains("constituents")) {
      for (const auto& s : j["constituents"]) {
        r.segment.constituents.push_back(span_from_json(s, path, lineno));
      }
    }
    if (j.contains("entities")) {
      for (const auto& s : j["entities"]) r.segment.entities.push_back(span_from_json(s, path, lineno));
    }
    if (j.contains("subwords")) {
      for (const auto& p : j["subwords"]) {
        SubwordPiece piece;
        piece.piece = p.at("piece").get<std::string>();
        piece.is_continuation = p.value("continuation", false);
        r.segment.subwords.push_back(std::move(piece));
      }
    }
    if (j.contains("partial_variants")) {
      for (const auto& p : j["partial_variants"]) {
        PartialVariant v;
        v.deleted_span = p.at("deleted_span").get<std::string>();
        v.partial_text = p.at("partial_text").get<std::string>();
        v.partial_translation = p.at("partial_translation").get<std::string>();
        r.segment.partial_variants.push_back(std::move(v));
      }
    }
    if (j.contains("alternatives")) {
      for (const auto& a : j["alternatives"]) r.alternatives.push_back(a.get<std::string>());
    }
    if (j.contains("alt_entities")) {
      for (const auto& spans : j["alt_entities"]) {
        std::vector<Span> layer;
        for (const auto& s : spans) layer.push_back(span_from_json(s, path, lineno));
        r.alt_entities.push_back(std::move(layer));
      }
    }
    if (j.contains("good_alt")) r.good_alt = j["good_alt"].get<std::string>();
    if (j.contains("paraphrase")) {
      const auto& p = j["paraphrase"];
      ParaphraseBlock b;
      b.other = p.at("other").get<std::string>();
      b.label = p.at("label").get<std::string>();
      b.good_mt = p.at("good_mt").get<std::string>();
      if (p.contains("sources")) b.sources = string_map_from_json(p["sources"]);
      r.paraphrase = std::move(b);
    }
    if (j.contains("nli")) {
      const auto& p = j["nli"];
      NliBlock b;
      b.premise = p.at("premise").get<std::string>();
      b.hypothesis = p.at("hypothesis").get<std::string>();
      b.label = p.at("label").get<std::string>();
      b.mt = p.at("mt").get<std::string>();
      b.ref_side = p.value("ref_side", "premise");
      if (p.contains("sources")) b.sources = string_map_from_json(p["sources"]);
      r.nli = std::move(b);
    }
    if (j.contains("similar")) {
      const auto& p = j["similar"];
      r.similar = SimilarBlock{p.at("lang").get<std::string>(), p.at("reference").get<std::string>()};
    }
    if (j.contains("pronoun")) {
      const auto& p = j["pronoun"];
      PronounBlock b;
      b.begin = p.at("begin").get<std::size_t>();
      b.end = p.at("end").get<std::size_t>();
      b.form = p.at("form").get<std::string>();
      b.category = p.at("category").get<std::string>();
      r.pronoun = std::move(b);
    }
    if (j.contains("connective")) {
      const auto& p = j["connective"];
      r.connective = ConnectiveBlock{p.at("word").get<std::string>(), p.at("sense").get<std::string>()};
    }
    if (j.contains("gender")) {
      const auto& p = j["gender"];
      GenderBlock b;
      b.female_variant = p.at("female_variant").get<std::string>();
      b.male_variant = p.at("male_variant").get<std::string>();
      b.true_gender = p.at("true_gender").get<std::string>();
      b.stereotype = p.at("stereotype").get<std::string>();
      r.gender = std::move(b);
    }
    if (j.contains("wsd")) {
      const auto& p = j["wsd"];
      WsdBlock b;
      b.word = p.at("word").get<std::string>();
      b.correct_cue = p.at("correct_cue").get<std::string>();
      b.wrong_cue = p.at("wrong_cue").get<std::string>();
      b.frequency = p.at("frequency").get<std::string>();
      r.wsd = std::move(b);
    }
    if (j.contains("commonsense")) {
      const auto& p = j["commonsense"];
      CommonsenseBlock b;
      b.good_full = p.at("good_full").get<std::string>();
      b.incorrect_full = p.at("incorrect_full").get<std::string>();
      b.variant = p.at("variant").get<std::string>();
      r.commonsense = std::move(b);
    }
    if (!j.contains("tasks") || !j["tasks"].is_array() || j["tasks"].empty()) {
      parse_fail(path, lineno, "record needs a non-empty tasks array");
    }
    for (const auto& t : j["tasks"]) {
      GenTask task;
      task.recipe = t.at("recipe").get<std::string>();
      task.level = t.value("level", 0);
      task.edit = t.value("edit", "");
      task.target = t.value("target", "");
      task.strategy = t.value("strategy", "");
      task.mode = t.value("mode", "");
      r.tasks.push_back(std::move(task));
    }

    auto [it, inserted] = seen_ids.emplace(r.id, lineno);
    if (!inserted) {
      parse_fail(path, lineno,
                 "duplicate record id '" + r.id + "' (first at line " + std::to_string(it->second) + ")");
    }
    auto violations = validate_record(r);
    if (!violations.empty()) {
      std::string msg = "invalid record '" + r.id + "':";
      for (const auto& v : violations) msg += " " + v + ";";
      parse_fail(path, lineno, msg);
    }
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

void check_layer(const std::vector<Span>& spans, std::size_t text_len, const std::string& layer,
                 std::vector<std::string>& out) {
  std::vector<Span> sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Span& s = sorted[i];
    if (s.begin >= s.end || s.end > text_len) {
      out.push_back(layer + " span out of range [" + std::to_string(s.begin) + ", " +
                    std::to_string(s.end) + ")");
    }
    if (i > 0 && s.begin < sorted[i - 1].end) {
      out.push_back(layer + " spans overlap");
    }
  }
}

std::string strip_continuation(const std::string& piece) {
  if (piece.rfind("##", 0) == 0) return piece.substr(2);
  return piece;
}

}  // namespace

std::vector<std::string> validate_record(const CorpusRecord& record) {
  std::vector<std::string> out;
  std::size_t text_len = text::codepoint_length(record.segment.text);
  std::size_t ref_len = text::codepoint_length(record.reference);
  check_layer(record.segment.constituents, text_len, "constituent", out);
  check_layer(record.segment.entities, ref_len, "entity", out);
  for (std::size_t a = 0; a < record.alt_entities.size(); ++a) {
    if (a >= record.alternatives.size()) {
      out.push_back("alt_entities has more layers than alternatives");
      break;
    }
    check_layer(record.alt_entities[a], text::codepoint_length(record.alternatives[a]),
                "alternative entity", out);
  }
  if (record.pronoun) {
    std::size_t trans_len = text::codepoint_length(record.segment.translation);
    if (record.pronoun->begin >= record.pronoun->end || record.pronoun->end > trans_len) {
      out.push_back("pronoun span out of range");
    } else {
      std::string covered = text::substr_codepoints(record.segment.translation,
                                                    record.pronoun->begin, record.pronoun->end);
      if (covered != record.pronoun->form) {
        out.push_back("pronoun span does not cover the stated form");
      }
    }
  }
  if (!record.segment.subwords.empty()) {
    std::vector<std::string> tokens = text::whitespace_tokens(record.reference);
    std::vector<std::string> rebuilt;
    for (const auto& piece : record.segment.subwords) {
      if (piece.is_continuation) {
        if (rebuilt.empty()) {
          out.push_back("subword stream starts with a continuation piece");
          break;
        }
        rebuilt.back() += strip_continuation(piece.piece);
      } else {
        rebuilt.push_back(piece.piece);
      }
    }
    if (rebuilt != tokens) out.push_back("subword pieces do not reassemble the reference tokens");
  }
  return out;
}

}  // namespace aces
