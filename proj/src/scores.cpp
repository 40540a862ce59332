#include "aces/scores.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "aces/corpus_io.hpp"

namespace aces {

namespace {

double parse_score(const std::string& s, const std::string& path, std::size_t lineno,
                   const char* column) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric " + column + " '" + s + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(path + ":" + std::to_string(lineno) + ": non-finite " + column);
  }
  return v;
}

}  // namespace

MetricScoreTable load_scores(const std::string& path, const std::string& metric_name_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);

  MetricScoreTable table;
  table.metric_name =
      metric_name_override.empty() ? std::filesystem::path(path).stem().string() : metric_name_override;

  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "id\tscore_good\tscore_incorrect") {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'id<TAB>score_good<TAB>score_incorrect'");
      }
      continue;
    }
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    std::string id = line.substr(0, t1);
    if (id.empty()) throw ParseError(path + ":" + std::to_string(lineno) + ": empty id");
    double good = parse_score(line.substr(t1 + 1, t2 - t1 - 1), path, lineno, "score_good");
    double incorrect = parse_score(line.substr(t2 + 1), path, lineno, "score_incorrect");
    auto [it, inserted] = seen.emplace(id, lineno);
    if (!inserted) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate id '" + id +
                       "' (first at line " + std::to_string(it->second) + ")");
    }
    table.rows.emplace(std::move(id), std::make_pair(good, incorrect));
  }
  if (!header_seen) throw ParseError(path + ":1: missing header");
  return table;
}

void save_scores(const MetricScoreTable& table, const std::string& path,
                 const std::string& provenance) {
  std::string out;
  if (!provenance.empty()) {
    out += "# ";
    out += provenance;
    out += '\n';
  }
  out += "id\tscore_good\tscore_incorrect\n";
  char buf[64];
  for (const auto& [id, scores] : table.rows) {
    out += id;
    std::snprintf(buf, sizeof buf, "\t%.17g\t%.17g\n", scores.first, scores.second);
    out += buf;
  }
  write_file_atomic(path, out);
}

}  // namespace aces
