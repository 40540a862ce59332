#pragma once

#include <map>
#include <string>
#include <utility>

namespace aces {

// Per-example scores of one metric: id -> (score of the good translation,
// score of the incorrect translation).
struct MetricScoreTable {
  std::string metric_name;
  std::map<std::string, std::pair<double, double>> rows;

  bool operator==(const MetricScoreTable&) const = default;
};

// TSV `id<TAB>score_good<TAB>score_incorrect` with one header row; `#` lines
// are skipped. Duplicate ids, missing columns, non-numeric or non-finite
// scores raise ParseError with the line number. The metric name comes from
// the filename stem unless overridden.
MetricScoreTable load_scores(const std::string& path, const std::string& metric_name_override = "");

// Full-precision output (round-trips exactly); rows sorted by id.
void save_scores(const MetricScoreTable& table, const std::string& path,
                 const std::string& provenance = "");

}  // namespace aces
