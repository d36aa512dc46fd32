// Batch front end for the span-level fallacy scorer. Machine-readable output
// goes to stdout (or --out); human summaries go to stderr so that redirected
// output stays parseable. Identical inputs and flags produce byte-identical
// output: nothing here writes timestamps, hostnames or absolute paths.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "faleval/baseline.hpp"
#include "faleval/corpus.hpp"
#include "faleval/dataset_io.hpp"
#include "faleval/normalize.hpp"
#include "faleval/scoring.hpp"
#include "faleval/taxonomy.hpp"

namespace {

using faleval::AggMode;
using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> parse_levels(const std::string& s) {
  if (s == "all") return {0, 1, 2};
  if (s == "0") return {0};
  if (s == "1") return {1};
  if (s == "2") return {2};
  throw CLI::ValidationError("--level", "must be 0, 1, 2 or all");
}

AggMode parse_agg(const std::string& s) {
  auto m = faleval::agg_mode_from_string(s);
  if (!m) throw CLI::ValidationError("--agg", "must be macro or micro");
  return *m;
}

void write_payload(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << payload;
}

// Shared flags. Not every subcommand honours every field; the ones whose
// machine output is itself a JSONL data file (baseline, normalize, import)
// ignore --format.
struct CommonOpts {
  std::string dataset;
  std::string pred;
  std::string model_out;
  std::string level = "all";
  std::string agg = "macro";
  std::string format = "json";
  std::string out;
  std::uint64_t seed = faleval::kDefaultBaselineSeed;
  bool multi_label = false;
  std::string taxonomy;
};

// Builtin inventory unless the user supplied an alternative as JSONL.
faleval::Taxonomy load_taxonomy(const CommonOpts& o) {
  return o.taxonomy.empty() ? faleval::Taxonomy::builtin()
                            : faleval::Taxonomy::from_file(o.taxonomy);
}

void add_taxonomy_flag(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--taxonomy", o.taxonomy,
                  "label inventory JSONL (defaults to the builtin)")
      ->envname("FALEVAL_TAXONOMY");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "machine output format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->envname("FALEVAL_FORMAT");
  cmd->add_option("--out", o.out, "write machine output to this file")
      ->envname("FALEVAL_OUT");
}

CLI::Option* add_dataset_flag(CLI::App* cmd, CommonOpts& o) {
  return cmd->add_option("--dataset", o.dataset, "dataset JSONL")
      ->envname("FALEVAL_DATASET");
}

int check_gold(const std::vector<faleval::CorpusDocument>& corpus,
               const faleval::Taxonomy& tax) {
  std::size_t count = 0;
  for (const auto& cd : corpus)
    for (const auto& v : faleval::validate(cd.doc, cd.gold, tax)) {
      std::cerr << "violation: " << v.doc_id << ": " << v.code << ": "
                << v.detail << "\n";
      ++count;
    }
  if (count) std::cerr << count << " gold violation(s)\n";
  return count ? 1 : 0;
}

faleval::PredictionMap predictions_from_model_outputs(
    const std::string& path, const std::vector<faleval::CorpusDocument>& corpus,
    const faleval::Taxonomy& tax, bool multi_label, std::size_t* unknown) {
  faleval::ModelOutputMap outputs = faleval::load_model_outputs(path, corpus);
  std::map<std::string, std::size_t> sentence_counts;
  for (const auto& cd : corpus)
    sentence_counts[cd.doc.doc_id] = cd.doc.sentence_count();

  faleval::PredictionMap preds;
  for (const auto& [doc_id, rows] : outputs) {
    std::vector<faleval::SentenceVerdict> verdicts;
    verdicts.reserve(rows.size());
    for (const auto& row : rows)
      verdicts.push_back(
          faleval::resolve_sentence(tax, row.sentence_index, row.raw_output));
    try {
      faleval::GroupedPrediction g = faleval::group_spans(
          tax, verdicts, sentence_counts.at(doc_id), multi_label);
      if (unknown) *unknown += g.unknown_spans;
      preds.emplace(doc_id, std::move(g.prediction));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("document '" + doc_id + "': " + e.what());
    }
  }
  return preds;
}

// --- score ------------------------------------------------------------------

std::string render_score_report(const faleval::CorpusScore& report,
                                const std::vector<int>& levels,
                                const std::string& format) {
  if (format == "tsv") {
    std::ostringstream out;
    out << "doc_id\tlevel\tprecision\trecall\tf1\tmean_f1\n";
    for (const auto& d : report.documents)
      for (int level : levels) {
        const auto& t = d.triples.at(level);
        out << d.doc_id << "\t" << level << "\t" << fmt(t.precision) << "\t"
            << fmt(t.recall) << "\t" << fmt(t.f1) << "\t\n";
      }
    for (int level : levels) {
      if (!report.aggregate.count(level)) continue;
      const auto& a = report.aggregate.at(level);
      out << "ALL\t" << level << "\t" << fmt(a.triple.precision) << "\t"
          << fmt(a.triple.recall) << "\t" << fmt(a.triple.f1) << "\t"
          << fmt(a.mean_f1) << "\n";
    }
    return out.str();
  }

  ordered_json j;
  j["levels"] = levels;
  j["agg"] = std::string(faleval::to_string(report.mode));
  ordered_json docs = ordered_json::array();
  for (const auto& d : report.documents) {
    ordered_json dj;
    dj["doc_id"] = d.doc_id;
    ordered_json by_level;
    for (int level : levels) {
      const auto& t = d.triples.at(level);
      ordered_json tj;
      tj["precision"] = t.precision;
      tj["recall"] = t.recall;
      tj["f1"] = t.f1;
      by_level[std::to_string(level)] = std::move(tj);
    }
    dj["levels"] = std::move(by_level);
    docs.push_back(std::move(dj));
  }
  j["documents"] = std::move(docs);
  ordered_json agg;
  for (int level : levels) {
    if (!report.aggregate.count(level)) continue;
    const auto& a = report.aggregate.at(level);
    ordered_json aj;
    aj["precision"] = a.triple.precision;
    aj["recall"] = a.triple.recall;
    aj["f1"] = a.triple.f1;
    aj["mean_f1"] = a.mean_f1;
    agg[std::to_string(level)] = std::move(aj);
  }
  j["aggregate"] = std::move(agg);
  return j.dump(2) + "\n";
}

int cmd_score(const CommonOpts& o) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  auto corpus = faleval::load_dataset(o.dataset, tax);
  if (int rc = check_gold(corpus, tax)) return rc;

  std::size_t unknown = 0;
  faleval::PredictionMap preds;
  if (!o.pred.empty())
    preds = faleval::load_predictions(o.pred, corpus, tax);
  else
    preds = predictions_from_model_outputs(o.model_out, corpus, tax,
                                           o.multi_label, &unknown);

  faleval::ScoreOptions opts;
  opts.levels = parse_levels(o.level);
  opts.mode = parse_agg(o.agg);
  faleval::CorpusScore report = faleval::score_corpus(corpus, preds, tax, opts);

  write_payload(o.out, render_score_report(report, opts.levels, o.format));
  std::cerr << "scored " << report.documents.size() << " document(s), level "
            << o.level << ", " << o.agg << " aggregation";
  if (!o.model_out.empty())
    std::cerr << "; " << unknown << " unknown span(s) in model output";
  std::cerr << "\n";
  return 0;
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const CommonOpts& o) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  auto corpus = faleval::load_dataset(o.dataset, tax);

  std::vector<faleval::Violation> violations;
  for (const auto& cd : corpus)
    for (auto& v : faleval::validate(cd.doc, cd.gold, tax))
      violations.push_back(std::move(v));
  if (!o.pred.empty()) {
    // The prediction loader throws on structural problems; anything it
    // accepts passes entry-level validation too, but run it for symmetry.
    faleval::PredictionMap preds =
        faleval::load_predictions(o.pred, corpus, tax);
    for (const auto& cd : corpus) {
      auto it = preds.find(cd.doc.doc_id);
      if (it == preds.end()) continue;
      for (auto& v : faleval::validate(cd.doc, it->second, tax))
        violations.push_back(std::move(v));
    }
  }

  std::string payload;
  if (o.format == "tsv") {
    std::ostringstream out;
    out << "doc_id\tcode\tdetail\n";
    for (const auto& v : violations)
      out << v.doc_id << "\t" << v.code << "\t" << v.detail << "\n";
    payload = out.str();
  } else {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& v : violations) {
      ordered_json r;
      r["doc_id"] = v.doc_id;
      r["code"] = v.code;
      r["detail"] = v.detail;
      rows.push_back(std::move(r));
    }
    j["violations"] = std::move(rows);
    payload = j.dump(2) + "\n";
  }
  write_payload(o.out, payload);
  std::cerr << violations.size() << " violation(s) in "
            << corpus.size() << " document(s)\n";
  return violations.empty() ? 0 : 1;
}

// --- baseline ---------------------------------------------------------------

int cmd_baseline(const CommonOpts& o) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  auto corpus = faleval::load_dataset(o.dataset, tax);
  faleval::BaselineConfig cfg;
  cfg.seed = o.seed;
  faleval::PredictionMap preds;
  std::size_t entries = 0;
  for (const auto& cd : corpus) {
    faleval::Prediction p = faleval::random_prediction(cd.doc, tax, cfg);
    entries += p.entries.size();
    preds.emplace(cd.doc.doc_id, std::move(p));
  }
  std::ostringstream out;
  faleval::write_predictions(out, preds);
  write_payload(o.out, out.str());
  std::cerr << "baseline predictions for " << corpus.size()
            << " document(s), seed " << o.seed << ", " << entries
            << " entries\n";
  return 0;
}

// --- normalize --------------------------------------------------------------

int cmd_normalize(const CommonOpts& o) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  auto corpus = faleval::load_dataset(o.dataset, tax);
  std::size_t unknown = 0;
  faleval::PredictionMap preds = predictions_from_model_outputs(
      o.model_out, corpus, tax, o.multi_label, &unknown);
  std::ostringstream out;
  faleval::write_predictions(out, preds);
  write_payload(o.out, out.str());
  std::cerr << "normalized raw outputs for " << preds.size()
            << " document(s); " << unknown << " unknown span(s)\n";
  return 0;
}

// --- compare-metrics --------------------------------------------------------

int cmd_compare_metrics(const CommonOpts& o) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  auto corpus = faleval::load_dataset(o.dataset, tax);
  if (int rc = check_gold(corpus, tax)) return rc;
  faleval::PredictionMap preds =
      faleval::load_predictions(o.pred, corpus, tax);
  const std::vector<int> levels = parse_levels(o.level);

  struct Row {
    std::string doc_id;
    int level;
    double precision, recall, legacy_precision, legacy_recall;
    bool diverges, legacy_exceeds_one;
  };
  std::vector<Row> rows;
  std::size_t divergent = 0;
  static const faleval::Prediction kEmpty;
  for (const auto& cd : corpus) {
    auto it = preds.find(cd.doc.doc_id);
    const faleval::Prediction& p =
        it == preds.end() ? kEmpty : it->second;
    for (int level : levels) {
      const faleval::Prediction pp = faleval::project(p, level, tax);
      const faleval::GoldStandard pg = faleval::project(cd.gold, level, tax);
      Row r;
      r.doc_id = cd.doc.doc_id;
      r.level = level;
      r.precision = faleval::precision(pp, pg);
      r.recall = faleval::recall(pp, pg);
      r.legacy_precision = faleval::legacy_sum_precision(pp, pg);
      r.legacy_recall = faleval::legacy_sum_recall(pp, pg);
      r.diverges = std::abs(r.precision - r.legacy_precision) > 1e-9 ||
                   std::abs(r.recall - r.legacy_recall) > 1e-9;
      r.legacy_exceeds_one =
          r.legacy_precision > 1.0 || r.legacy_recall > 1.0;
      if (r.diverges) ++divergent;
      rows.push_back(std::move(r));
    }
  }

  std::string payload;
  if (o.format == "tsv") {
    std::ostringstream out;
    out << "doc_id\tlevel\tprecision\trecall\tlegacy_sum_precision"
           "\tlegacy_sum_recall\tdiverges\tlegacy_exceeds_one\n";
    for (const auto& r : rows)
      out << r.doc_id << "\t" << r.level << "\t" << fmt(r.precision) << "\t"
          << fmt(r.recall) << "\t" << fmt(r.legacy_precision) << "\t"
          << fmt(r.legacy_recall) << "\t" << (r.diverges ? 1 : 0) << "\t"
          << (r.legacy_exceeds_one ? 1 : 0) << "\n";
    payload = out.str();
  } else {
    ordered_json j;
    j["levels"] = levels;
    ordered_json out_rows = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json rj;
      rj["doc_id"] = r.doc_id;
      rj["level"] = r.level;
      rj["precision"] = r.precision;
      rj["recall"] = r.recall;
      rj["legacy_sum_precision"] = r.legacy_precision;
      rj["legacy_sum_recall"] = r.legacy_recall;
      rj["diverges"] = r.diverges;
      rj["legacy_exceeds_one"] = r.legacy_exceeds_one;
      out_rows.push_back(std::move(rj));
    }
    j["documents"] = std::move(out_rows);
    payload = j.dump(2) + "\n";
  }
  write_payload(o.out, payload);
  std::cerr << "compared metric families on " << corpus.size()
            << " document(s); " << divergent << " row(s) diverge\n";
  return 0;
}

// --- cross ------------------------------------------------------------------

int cmd_cross(const CommonOpts& o, const std::vector<std::string>& set_paths) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  std::vector<std::pair<std::string, faleval::AnnotationSet>> sets;
  for (const auto& path : set_paths) {
    auto corpus = faleval::load_dataset(path, tax);
    if (int rc = check_gold(corpus, tax)) return rc;
    faleval::AnnotationSet set;
    for (auto& cd : corpus)
      set.emplace_back(cd.doc.doc_id, std::move(cd.gold));
    sets.emplace_back(path, std::move(set));
  }
  const std::vector<int> levels = parse_levels(o.level);
  const AggMode mode = parse_agg(o.agg);

  struct Cell {
    int level;
    faleval::CrossCell cell;
  };
  std::vector<Cell> cells;
  for (int level : levels)
    for (auto& c : faleval::cross_compare(sets, level, tax, mode))
      cells.push_back({level, std::move(c)});

  std::string payload;
  if (o.format == "tsv") {
    std::ostringstream out;
    out << "gold\tpred\tlevel\tprecision\trecall\tf1\tmean_f1\n";
    for (const auto& c : cells)
      out << c.cell.gold_name << "\t" << c.cell.pred_name << "\t" << c.level
          << "\t" << fmt(c.cell.scores.triple.precision) << "\t"
          << fmt(c.cell.scores.triple.recall) << "\t"
          << fmt(c.cell.scores.triple.f1) << "\t"
          << fmt(c.cell.scores.mean_f1) << "\n";
    payload = out.str();
  } else {
    ordered_json j;
    j["levels"] = levels;
    j["agg"] = o.agg;
    ordered_json rows = ordered_json::array();
    for (const auto& c : cells) {
      ordered_json cj;
      cj["gold"] = c.cell.gold_name;
      cj["pred"] = c.cell.pred_name;
      cj["level"] = c.level;
      cj["precision"] = c.cell.scores.triple.precision;
      cj["recall"] = c.cell.scores.triple.recall;
      cj["f1"] = c.cell.scores.triple.f1;
      cj["mean_f1"] = c.cell.scores.mean_f1;
      rows.push_back(std::move(cj));
    }
    j["cells"] = std::move(rows);
    payload = j.dump(2) + "\n";
  }
  write_payload(o.out, payload);
  std::cerr << sets.size() << " annotation set(s), " << cells.size()
            << " cell(s)\n";
  return 0;
}

// --- import -----------------------------------------------------------------

int cmd_import(const CommonOpts& o, const std::string& input) {
  const faleval::Taxonomy tax = load_taxonomy(o);
  faleval::ImportStats stats;
  auto corpus = faleval::import_char_annotations(input, tax, &stats);
  std::ostringstream out;
  faleval::write_dataset(out, corpus);
  write_payload(o.out, out.str());
  std::cerr << "imported " << stats.documents << " document(s), "
            << stats.entries << " gold entr(ies); dropped "
            << stats.dropped_bare_no_fallacy
            << " bare no-fallacy span(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Scores span-level fallacy annotations against disjunctive gold "
      "standards: alternative labels per span, optional no-fallacy readings, "
      "three taxonomy levels."};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> cross_sets;
  std::string import_input;

  CLI::App* score = app.add_subcommand(
      "score", "score predictions or raw model outputs against a dataset");
  add_dataset_flag(score, opts)->required();
  auto* score_pred =
      score->add_option("--pred", opts.pred, "prediction JSONL")
          ->envname("FALEVAL_PRED");
  auto* score_model =
      score->add_option("--model-out", opts.model_out,
                        "raw per-sentence model output JSONL")
          ->envname("FALEVAL_MODEL_OUT");
  score_pred->excludes(score_model);
  score->add_option("--level", opts.level, "taxonomy level: 0, 1, 2 or all")
      ->envname("FALEVAL_LEVEL");
  score->add_option("--agg", opts.agg, "aggregation across documents")
      ->check(CLI::IsMember({"macro", "micro"}))
      ->envname("FALEVAL_AGG");
  score->add_flag("--multi-label", opts.multi_label,
                  "emit one span per label the output mentions");
  add_taxonomy_flag(score, opts);
  add_output_flags(score, opts);

  CLI::App* validate = app.add_subcommand(
      "validate", "structural checks on a dataset and optional predictions");
  add_dataset_flag(validate, opts)->required();
  validate->add_option("--pred", opts.pred, "prediction JSONL")
      ->envname("FALEVAL_PRED");
  add_taxonomy_flag(validate, opts);
  add_output_flags(validate, opts);

  CLI::App* baseline = app.add_subcommand(
      "baseline", "uniform random predictions over the label inventory");
  add_dataset_flag(baseline, opts)->required();
  baseline->add_option("--seed", opts.seed, "baseline RNG seed")
      ->envname("FALEVAL_SEED");
  add_taxonomy_flag(baseline, opts);
  baseline->add_option("--out", opts.out, "write predictions to this file")
      ->envname("FALEVAL_OUT");

  CLI::App* normalize = app.add_subcommand(
      "normalize", "map raw per-sentence model output to span predictions");
  add_dataset_flag(normalize, opts)->required();
  normalize
      ->add_option("--model-out", opts.model_out,
                   "raw per-sentence model output JSONL")
      ->required()
      ->envname("FALEVAL_MODEL_OUT");
  normalize->add_flag("--multi-label", opts.multi_label,
                      "emit one span per label the output mentions");
  add_taxonomy_flag(normalize, opts);
  normalize->add_option("--out", opts.out, "write predictions to this file")
      ->envname("FALEVAL_OUT");

  CLI::App* compare = app.add_subcommand(
      "compare-metrics",
      "best-match scores next to the sum-based legacy family, per document");
  add_dataset_flag(compare, opts)->required();
  compare->add_option("--pred", opts.pred, "prediction JSONL")
      ->required()
      ->envname("FALEVAL_PRED");
  compare->add_option("--level", opts.level, "taxonomy level: 0, 1, 2 or all")
      ->envname("FALEVAL_LEVEL");
  add_taxonomy_flag(compare, opts);
  add_output_flags(compare, opts);

  CLI::App* cross = app.add_subcommand(
      "cross", "score every ordered pair of annotation sets");
  cross
      ->add_option("sets", cross_sets,
                   "two or more dataset files over the same doc_ids")
      ->required()
      ->expected(2, -1);
  cross->add_option("--level", opts.level, "taxonomy level: 0, 1, 2 or all")
      ->envname("FALEVAL_LEVEL");
  cross->add_option("--agg", opts.agg, "aggregation across documents")
      ->check(CLI::IsMember({"macro", "micro"}))
      ->envname("FALEVAL_AGG");
  add_taxonomy_flag(cross, opts);
  add_output_flags(cross, opts);

  CLI::App* import_cmd = app.add_subcommand(
      "import", "convert published char-offset annotations to a dataset");
  import_cmd->add_option("input", import_input, "char-offset JSONL")
      ->required();
  add_taxonomy_flag(import_cmd, opts);
  import_cmd->add_option("--out", opts.out, "write the dataset to this file")
      ->envname("FALEVAL_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(score)) {
      if (opts.pred.empty() && opts.model_out.empty()) {
        std::cerr << "score: needs --pred or --model-out\n";
        return 2;
      }
      return cmd_score(opts);
    }
    if (app.got_subcommand(validate)) return cmd_validate(opts);
    if (app.got_subcommand(baseline)) return cmd_baseline(opts);
    if (app.got_subcommand(normalize)) return cmd_normalize(opts);
    if (app.got_subcommand(compare)) return cmd_compare_metrics(opts);
    if (app.got_subcommand(cross)) return cmd_cross(opts, cross_sets);
    if (app.got_subcommand(import_cmd)) return cmd_import(opts, import_input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
