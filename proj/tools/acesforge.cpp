// acesforge: build contrastive challenge sets, score the built-in surface
// baselines, evaluate metric score tables, and run the diagnostic analyses.
//
// Exit codes: 0 success, 1 internal error, 2 user/data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"

#include "aces/analysis.hpp"
#include "aces/corpus_io.hpp"
#include "aces/evalharness.hpp"
#include "aces/generators.hpp"
#include "aces/rng.hpp"
#include "aces/scores.hpp"
#include "aces/taxonomy.hpp"
#include "aces/textsim.hpp"

namespace fs = std::filesystem;
using namespace aces;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitData = 2;

bool use_color() {
  static const bool enabled = [] {
    if (std::getenv("ACESFORGE_NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) == 1;
  }();
  return enabled;
}

std::string bold(const std::string& s) { return use_color() ? "\033[1m" + s + "\033[0m" : s; }
std::string red(const std::string& s) { return use_color() ? "\033[31m" + s + "\033[0m" : s; }

std::string file_fingerprint(const std::string& path) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(read_file(path))));
  return buf;
}

std::set<std::string> split_commas(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

SetFormat parse_format(const std::string& name) {
  auto f = format_from_name(name);
  if (!f) throw std::invalid_argument("unknown format '" + name + "' (expected jsonl or tsv)");
  return *f;
}

// ---- generate ----

struct GenerateArgs {
  std::string corpus, config, taxonomy, lexicon, out;
  std::string format = "jsonl";
  std::string phenomena;
  std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  GeneratorConfig cfg = GeneratorConfig::load_toml(args.config);
  Lexicon lexicon = args.lexicon.empty() ? Lexicon{} : load_lexicon(args.lexicon);
  std::vector<CorpusRecord> records = load_annotated_corpus(args.corpus);
  std::set<std::string> filter = split_commas(args.phenomena);

  GenerateResult result = generate_all(records, cfg, lexicon, taxonomy, args.seed, filter);

  std::ostringstream provenance;
  provenance << "acesforge generate seed=" << args.seed << " corpus=" << file_fingerprint(args.corpus)
             << " config=" << file_fingerprint(args.config)
             << " taxonomy=" << file_fingerprint(args.taxonomy);
  save_challenge_set(result.examples, args.out, parse_format(args.format), provenance.str());

  std::cout << bold("generated ") << result.examples.size() << " examples -> " << args.out << "\n";
  for (const auto& [recipe, stats] : result.stats) {
    std::cout << "recipe " << recipe << ": inputs=" << stats.inputs
              << " emitted=" << stats.emitted_units << " examples=" << stats.examples
              << " skipped=" << stats.skipped_total() << "\n";
    for (const auto& [reason, count] : stats.skipped) {
      std::cout << "  - " << reason << ": " << count << "\n";
    }
  }
  return kExitOk;
}

// ---- score-baselines ----

struct ScoreArgs {
  std::string challenge, taxonomy, out;
  std::string format = "jsonl";
  std::string metrics = "bleu,chrf,neg_levenshtein";
};

int cmd_score_baselines(const ScoreArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  std::vector<ChallengeExample> examples =
      load_challenge_set(args.challenge, parse_format(args.format), taxonomy);
  if (examples.empty()) {
    std::cerr << red("error: ") << "challenge set is empty\n";
    return kExitData;
  }
  std::set<std::string> metrics = split_commas(args.metrics);
  static const std::set<std::string> kKnown = {"bleu", "chrf", "neg_levenshtein"};
  for (const auto& m : metrics) {
    if (!kKnown.count(m)) {
      std::cerr << red("error: ") << "unknown baseline metric '" << m << "'\n";
      return kExitData;
    }
  }

  std::string challenge_fp = file_fingerprint(args.challenge);
  for (const auto& metric : metrics) {
    MetricScoreTable table;
    table.metric_name = metric;
    for (const auto& ex : examples) {
      double good, incorrect;
      if (metric == "bleu") {
        good = bleu(ex.good_translation, ex.reference);
        incorrect = bleu(ex.incorrect_translation, ex.reference);
      } else if (metric == "chrf") {
        good = chrf(ex.good_translation, ex.reference);
        incorrect = chrf(ex.incorrect_translation, ex.reference);
      } else {
        good = -static_cast<double>(levenshtein(ex.good_translation, ex.reference));
        incorrect = -static_cast<double>(levenshtein(ex.incorrect_translation, ex.reference));
      }
      table.rows[ex.id] = {good, incorrect};
    }
    fs::path out_path = fs::path(args.out) / (metric + ".tsv");
    save_scores(table, out_path.string(),
                "acesforge score-baselines metric=" + metric + " challenge=" + challenge_fp);
    std::cout << "scored " << metric << " over " << table.rows.size() << " examples -> "
              << out_path.string() << "\n";
  }
  return kExitOk;
}

// ---- evaluate ----

struct EvaluateArgs {
  std::string challenge, scores, taxonomy, out;
  std::string format = "jsonl";
  std::string trained = "en-de,en-ru,zh-en";
  double tie_epsilon = 0.0;
};

std::vector<MetricScoreTable> load_score_dir(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<MetricScoreTable> tables;
  for (const auto& p : paths) tables.push_back(load_scores(p));
  return tables;
}

int cmd_evaluate(const EvaluateArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  std::vector<ChallengeExample> examples =
      load_challenge_set(args.challenge, parse_format(args.format), taxonomy);
  std::vector<MetricScoreTable> tables = load_score_dir(args.scores);
  if (tables.empty()) {
    std::cerr << red("error: ") << "no score tables (*.tsv) in " << args.scores << "\n";
    return kExitData;
  }
  ReportOptions opts;
  opts.tie_epsilon = args.tie_epsilon;
  opts.trained_pairs = split_commas(args.trained);
  EvalReport report = build_report(examples, tables, taxonomy, opts);

  std::string provenance =
      "acesforge evaluate challenge=" + file_fingerprint(args.challenge) +
      " taxonomy=" + file_fingerprint(args.taxonomy) + " metrics=" + std::to_string(tables.size());
  fs::path out_dir(args.out);
  write_file_atomic((out_dir / "report.tsv").string(), render_report_tsv(report, provenance));
  write_file_atomic((out_dir / "report.txt").string(), render_report_txt(report));
  std::cout << render_report_txt(report);
  std::cout << "report written to " << (out_dir / "report.tsv").string() << " and "
            << (out_dir / "report.txt").string() << "\n";
  return kExitOk;
}

// ---- analyze ----

struct AnalyzeArgs {
  std::string kind;
  std::string challenge, scores, taxonomy, out;
  std::string format = "jsonl";
  std::string phenomenon;                 // zeroshot
  std::string wmt = "en-de,en-ru,zh-en";  // zeroshot
  std::size_t min_side = 100;             // zeroshot
  std::vector<std::string> pairs;         // copy-vs-synonym "copy:synonym"
};

std::map<std::string, std::vector<ChallengeExample>> by_phenomenon(
    const std::vector<ChallengeExample>& examples) {
  std::map<std::string, std::vector<ChallengeExample>> out;
  for (const auto& ex : examples) out[ex.phenomenon].push_back(ex);
  return out;
}

int analyze_source_sensitivity(const AnalyzeArgs& args,
                               const std::vector<ChallengeExample>& examples,
                               const std::vector<MetricScoreTable>& tables) {
  auto groups = by_phenomenon(examples);
  const char* kOnlyRef = "commonsense-only-ref-ambiguous";
  const char* kBoth = "commonsense-src-and-ref-ambiguous";
  for (const char* leaf : {kOnlyRef, kBoth}) {
    if (!groups.count(leaf)) {
      std::cerr << red("error: ") << "missing counterpart phenomenon '" << leaf
                << "' in the challenge set\n";
      return kExitData;
    }
  }
  std::string out;
  out += "metric\ttau_only_ref_ambiguous\ttau_src_and_ref_ambiguous\tgain\tn\n";
  char buf[160];
  for (const auto& table : tables) {
    CorrelationResult only_ref = kendall_tau_like(pairs_for(groups[kOnlyRef], table));
    CorrelationResult both = kendall_tau_like(pairs_for(groups[kBoth], table));
    DeltaResult d = source_sensitivity_gain(only_ref, both, table.metric_name);
    std::snprintf(buf, sizeof buf, "%s\t%.17g\t%.17g\t%.17g\t%lld\n", d.metric_name.c_str(), d.tau_a,
                  d.tau_b, d.delta, d.n_a);
    out += buf;
  }
  fs::path path = fs::path(args.out) / "source-sensitivity.tsv";
  write_file_atomic(path.string(), out);
  std::cout << "source-sensitivity gains -> " << path.string() << "\n";
  return kExitOk;
}

int analyze_overlap_decay(const AnalyzeArgs& args, const std::vector<ChallengeExample>& examples,
                          const std::vector<MetricScoreTable>& tables) {
  auto groups = by_phenomenon(examples);
  static const std::vector<std::string> kFamilies = {"hallucination-number",
                                                     "hallucination-named-entity"};
  std::string deltas = "family\tmetric\ttau_level1\ttau_level2\ttau_level3\td12\td13\n";
  std::string series = "family\tmetric\tlevel\ttau\n";
  bool any_family = false;
  char buf[220];
  for (const auto& family : kFamilies) {
    std::vector<std::string> leaves = {family + "-level-1", family + "-level-2",
                                       family + "-level-3"};
    int present = 0;
    for (const auto& leaf : leaves) present += groups.count(leaf) ? 1 : 0;
    if (present == 0) continue;
    if (present != 3) {
      for (const auto& leaf : leaves) {
        if (!groups.count(leaf)) {
          std::cerr << red("error: ") << "missing level phenomenon '" << leaf << "'\n";
        }
      }
      return kExitData;
    }
    any_family = true;
    for (const auto& table : tables) {
      double taus[3];
      for (int l = 0; l < 3; ++l) {
        taus[l] = kendall_tau_like(pairs_for(groups[leaves[static_cast<std::size_t>(l)]], table)).tau();
        std::snprintf(buf, sizeof buf, "%s\t%s\t%d\t%.17g\n", family.c_str(),
                      table.metric_name.c_str(), l + 1, taus[l]);
        series += buf;
      }
      OverlapDecay d = overlap_decay(taus[0], taus[1], taus[2]);
      std::snprintf(buf, sizeof buf, "%s\t%s\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n", family.c_str(),
                    table.metric_name.c_str(), taus[0], taus[1], taus[2], d.d12, d.d13);
      deltas += buf;
    }
  }
  if (!any_family) {
    std::cerr << red("error: ") << "no number/named-entity level phenomena in the challenge set\n";
    return kExitData;
  }
  fs::path delta_path = fs::path(args.out) / "overlap-decay.tsv";
  fs::path series_path = fs::path(args.out) / "overlap-decay-series.tsv";
  write_file_atomic(delta_path.string(), deltas);
  write_file_atomic(series_path.string(), series);
  std::cout << "overlap decay -> " << delta_path.string() << " (series: " << series_path.string()
            << ")\n";
  return kExitOk;
}

int analyze_copy_vs_synonym(const AnalyzeArgs& args, const std::vector<ChallengeExample>& examples,
                            const std::vector<MetricScoreTable>& tables) {
  auto groups = by_phenomenon(examples);
  std::vector<std::pair<std::string, std::string>> pairs;
  if (args.pairs.empty()) {
    static const std::vector<std::pair<std::string, std::string>> kDefaults = {
        {"hallucination-real-data-vs-ref-word", "hallucination-real-data-vs-synonym"},
        {"untranslated-vs-ref-word", "untranslated-vs-synonym"},
        {"overly-literal-vs-ref-word", "overly-literal-vs-synonym"},
    };
    for (const auto& p : kDefaults) {
      if (groups.count(p.first) || groups.count(p.second)) pairs.push_back(p);
    }
    if (pairs.empty()) {
      std::cerr << red("error: ") << "no copy/synonym phenomenon pairs in the challenge set\n";
      return kExitData;
    }
  } else {
    for (const auto& spec : args.pairs) {
      std::size_t colon = spec.find(':');
      if (colon == std::string::npos) {
        std::cerr << red("error: ") << "--pair expects '<copy-leaf>:<synonym-leaf>', got '" << spec
                  << "'\n";
        return kExitData;
      }
      pairs.emplace_back(spec.substr(0, colon), spec.substr(colon + 1));
    }
  }

  std::string out = "pair\tmetric\ttau_copy\ttau_synonym\tdelta\n";
  char buf[220];
  for (const auto& [copy_leaf, syn_leaf] : pairs) {
    for (const auto& leaf : {copy_leaf, syn_leaf}) {
      if (!groups.count(leaf)) {
        std::cerr << red("error: ") << "missing counterpart phenomenon '" << leaf << "'\n";
        return kExitData;
      }
    }
    std::vector<std::pair<double, double>> copy_syn;
    std::string pair_name = copy_leaf + ":" + syn_leaf;
    for (const auto& table : tables) {
      double tau_copy = kendall_tau_like(pairs_for(groups[copy_leaf], table)).tau();
      double tau_syn = kendall_tau_like(pairs_for(groups[syn_leaf], table)).tau();
      copy_syn.emplace_back(tau_copy, tau_syn);
      std::snprintf(buf, sizeof buf, "%s\t%s\t%.17g\t%.17g\t%.17g\n", pair_name.c_str(),
                    table.metric_name.c_str(), tau_copy, tau_syn, tau_syn - tau_copy);
      out += buf;
    }
    MeanStd agg = copy_vs_synonym_delta(copy_syn);
    std::snprintf(buf, sizeof buf, "%s\t[group]\tNA\tNA\t%.17g ± %.17g\n", pair_name.c_str(),
                  agg.mean, agg.stddev);
    out += buf;
  }
  fs::path path = fs::path(args.out) / "copy-vs-synonym.tsv";
  write_file_atomic(path.string(), out);
  std::cout << "copy-vs-synonym deltas -> " << path.string() << "\n";
  return kExitOk;
}

int analyze_zeroshot(const AnalyzeArgs& args, const std::vector<ChallengeExample>& examples,
                     const std::vector<MetricScoreTable>& tables) {
  if (args.phenomenon.empty()) {
    std::cerr << red("error: ") << "--phenomenon is required for zeroshot\n";
    return kExitData;
  }
  auto groups = by_phenomenon(examples);
  if (!groups.count(args.phenomenon)) {
    std::cerr << red("error: ") << "phenomenon '" << args.phenomenon
              << "' not present in the challenge set\n";
    return kExitData;
  }
  std::set<std::string> wmt = split_commas(args.wmt);
  const auto& subset = groups[args.phenomenon];

  std::size_t n_wmt = 0;
  for (const auto& ex : subset) n_wmt += wmt.count(ex.langpair) ? 1 : 0;
  std::cout << "partition sizes for " << args.phenomenon << ": WMT=" << n_wmt
            << " non-WMT=" << subset.size() - n_wmt << "\n";

  std::string out =
      "metric\tphenomenon\ttau_wmt\ttau_non_wmt\tdelta\tn_wmt\tn_non_wmt\tunderpowered\n";
  char buf[260];
  for (const auto& table : tables) {
    bool underpowered = false;
    DeltaResult d =
        zeroshot_split(subset, wmt, table, table.metric_name, args.min_side, &underpowered);
    if (underpowered) {
      std::cout << "warning: " << table.metric_name << " split has fewer than " << args.min_side
                << " examples on one side\n";
    }
    std::snprintf(buf, sizeof buf, "%s\t%s\t%.17g\t%.17g\t%.17g\t%lld\t%lld\t%s\n",
                  d.metric_name.c_str(), args.phenomenon.c_str(), d.tau_a, d.tau_b, d.delta, d.n_a,
                  d.n_b, underpowered ? "yes" : "no");
    out += buf;
  }
  fs::path path = fs::path(args.out) / "zeroshot.tsv";
  write_file_atomic(path.string(), out);
  std::cout << "zero-shot deltas -> " << path.string() << "\n";
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  std::vector<ChallengeExample> examples =
      load_challenge_set(args.challenge, parse_format(args.format), taxonomy);
  std::vector<MetricScoreTable> tables = load_score_dir(args.scores);
  if (tables.empty()) {
    std::cerr << red("error: ") << "no score tables (*.tsv) in " << args.scores << "\n";
    return kExitData;
  }
  if (args.kind == "source-sensitivity") return analyze_source_sensitivity(args, examples, tables);
  if (args.kind == "overlap-decay") return analyze_overlap_decay(args, examples, tables);
  if (args.kind == "copy-vs-synonym") return analyze_copy_vs_synonym(args, examples, tables);
  if (args.kind == "zeroshot") return analyze_zeroshot(args, examples, tables);
  std::cerr << red("error: ") << "unknown analysis kind '" << args.kind << "'\n";
  return kExitData;
}

// ---- subsample ----

struct SubsampleArgs {
  std::string challenge, taxonomy, out;
  std::string format = "jsonl";
  std::size_t cap = 1000;
  std::uint64_t seed = 0;
};

int cmd_subsample(const SubsampleArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  std::vector<ChallengeExample> examples =
      load_challenge_set(args.challenge, parse_format(args.format), taxonomy);

  // Applies the cap per phenomenon, preserving overall file order.
  std::map<std::string, std::vector<ChallengeExample>> groups;
  std::vector<std::string> order;
  for (const auto& ex : examples) {
    if (!groups.count(ex.phenomenon)) order.push_back(ex.phenomenon);
    groups[ex.phenomenon].push_back(ex);
  }
  std::vector<ChallengeExample> kept;
  for (const auto& leaf : order) {
    auto sampled = subsample_phenomenon(groups[leaf], args.cap, args.seed);
    kept.insert(kept.end(), sampled.begin(), sampled.end());
  }

  std::ostringstream provenance;
  provenance << "acesforge subsample cap=" << args.cap << " seed=" << args.seed
             << " input=" << file_fingerprint(args.challenge)
             << " allocation=largest-remainder ties=langpair-lexicographic";
  save_challenge_set(kept, args.out, parse_format(args.format), provenance.str());
  std::cout << "subsampled " << examples.size() << " -> " << kept.size() << " examples ("
            << order.size() << " phenomena, cap " << args.cap << ") -> " << args.out << "\n";
  return kExitOk;
}

// ---- validate ----

struct ValidateArgs {
  std::string challenge, taxonomy;
  std::string format = "jsonl";
};

int cmd_validate(const ValidateArgs& args) {
  PhenomenonTaxonomy taxonomy = PhenomenonTaxonomy::load_tsv(args.taxonomy);
  std::vector<ChallengeExample> examples =
      load_challenge_set(args.challenge, parse_format(args.format), taxonomy);
  std::cout << "ok: " << examples.size() << " valid examples\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contrastive challenge sets and metric meta-evaluation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "build challenge examples from an annotated corpus");
  generate->add_option("--corpus", gen.corpus, "annotated corpus JSONL")->required();
  generate->add_option("--config", gen.config, "generator config TOML")->required();
  generate->add_option("--taxonomy", gen.taxonomy, "phenomenon taxonomy TSV")->required();
  generate->add_option("--lexicon", gen.lexicon, "taxonomic substitution lexicon TSV");
  generate->add_option("--seed", gen.seed, "run seed")->required();
  generate->add_option("--out", gen.out, "output challenge set path")->required();
  generate->add_option("--format", gen.format, "jsonl|tsv");
  generate->add_option("--phenomena", gen.phenomena, "comma-separated phenomenon filter");

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score-baselines", "score bleu/chrf/neg_levenshtein");
  score_cmd->add_option("--challenge", score.challenge, "challenge set path")->required();
  score_cmd->add_option("--taxonomy", score.taxonomy, "phenomenon taxonomy TSV")->required();
  score_cmd->add_option("--out", score.out, "output directory for score TSVs")->required();
  score_cmd->add_option("--format", score.format, "jsonl|tsv");
  score_cmd->add_option("--metric", score.metrics, "comma-separated baseline subset");

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "correlations, rollups and the ACES score");
  eval_cmd->add_option("--challenge", eval.challenge, "challenge set path")->required();
  eval_cmd->add_option("--scores", eval.scores, "directory of score TSVs")->required();
  eval_cmd->add_option("--taxonomy", eval.taxonomy, "phenomenon taxonomy TSV")->required();
  eval_cmd->add_option("--out", eval.out, "output directory")->required();
  eval_cmd->add_option("--format", eval.format, "jsonl|tsv");
  eval_cmd->add_option("--trained-pairs", eval.trained, "trained langpairs (comma separated)");
  eval_cmd->add_option("--tie-epsilon", eval.tie_epsilon,
                       "score differences at most this count as ties");

  AnalyzeArgs ana;
  CLI::App* ana_cmd = app.add_subcommand("analyze", "diagnostic deltas over evaluation outputs");
  ana_cmd->add_option("--kind", ana.kind, "source-sensitivity|overlap-decay|copy-vs-synonym|zeroshot")
      ->required();
  ana_cmd->add_option("--challenge", ana.challenge, "challenge set path")->required();
  ana_cmd->add_option("--scores", ana.scores, "directory of score TSVs")->required();
  ana_cmd->add_option("--taxonomy", ana.taxonomy, "phenomenon taxonomy TSV")->required();
  ana_cmd->add_option("--out", ana.out, "output directory")->required();
  ana_cmd->add_option("--format", ana.format, "jsonl|tsv");
  ana_cmd->add_option("--phenomenon", ana.phenomenon, "phenomenon for zeroshot");
  ana_cmd->add_option("--wmt-pairs", ana.wmt, "WMT langpairs for zeroshot");
  ana_cmd->add_option("--min-side", ana.min_side, "zeroshot reporting guard");
  ana_cmd->add_option("--pair", ana.pairs, "copy-vs-synonym pair '<copy-leaf>:<synonym-leaf>'");

  SubsampleArgs sub;
  CLI::App* sub_cmd = app.add_subcommand("subsample", "stratified per-phenomenon cap");
  sub_cmd->add_option("--challenge", sub.challenge, "challenge set path")->required();
  sub_cmd->add_option("--taxonomy", sub.taxonomy, "phenomenon taxonomy TSV")->required();
  sub_cmd->add_option("--out", sub.out, "output challenge set path")->required();
  sub_cmd->add_option("--format", sub.format, "jsonl|tsv");
  sub_cmd->add_option("--cap", sub.cap, "per-phenomenon cap");
  sub_cmd->add_option("--seed", sub.seed, "run seed")->required();

  ValidateArgs val;
  CLI::App* val_cmd = app.add_subcommand("validate", "check a challenge set against the invariants");
  val_cmd->add_option("--challenge", val.challenge, "challenge set path")->required();
  val_cmd->add_option("--taxonomy", val.taxonomy, "phenomenon taxonomy TSV")->required();
  val_cmd->add_option("--format", val.format, "jsonl|tsv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (score_cmd->parsed()) return cmd_score_baselines(score);
    if (eval_cmd->parsed()) return cmd_evaluate(eval);
    if (ana_cmd->parsed()) return cmd_analyze(ana);
    if (sub_cmd->parsed()) return cmd_subsample(sub);
    if (val_cmd->parsed()) return cmd_validate(val);
  } catch (const ParseError& e) {
    std::cerr << red("error: ") << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << red("error: ") << e.what() << "\n";
    return kExitData;
  } catch (const std::runtime_error& e) {
    std::cerr << red("error: ") << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << red("internal error: ") << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
