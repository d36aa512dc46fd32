#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faleval/annotation.hpp"
#include "faleval/span.hpp"
#include "faleval/taxonomy.hpp"

namespace faleval {

// Overlap-weighted agreement between one predicted span and one gold entry:
// (|p ∩ g| / h) if the gold label set admits the predicted label, else 0.
// h is the normalizing length (the prediction's length for precision, the
// gold span's for recall) and must be >= 1.
double comparison_score(const SpanRef& pred_span, std::string_view pred_label,
                        const GoldEntry& gold, std::size_t h);

// Precision: each predicted entry earns its best agreement against any gold
// entry, normalized by the prediction's own length. Exact duplicates in P
// compete for gold slots: k copies of one (span, label) with only m gold
// entries of that exact span admitting the label score min(k, m) between
// them, so surplus copies earn nothing. Empty P scores 1.
double precision(const Prediction& pred, const GoldStandard& gold);

// Recall: every required gold entry earns its best agreement against any
// predicted entry, normalized by the gold span's length. Gold entries that
// admit "nothing" are not required; moreover a required entry also accepts
// the labels an optional entry with the exactly equal span admits — when one
// annotator allowed "l1 or nothing" where another insisted on l2, producing
// l1 satisfies that span too. Empty required set scores 1.
double recall(const Prediction& pred, const GoldStandard& gold);

// Harmonic mean; 0 when both inputs are 0.
double f1(double precision, double recall);

struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

ScoreTriple score(const Prediction& pred, const GoldStandard& gold);

// Raw sums and denominators behind precision/recall, for pooled (micro)
// aggregation across documents.
struct ScoreParts {
  double precision_sum = 0.0;
  std::size_t pred_count = 0;
  double recall_sum = 0.0;
  std::size_t required_count = 0;

  double precision() const;
  double recall() const;
  ScoreTriple triple() const;
};

ScoreParts score_parts(const Prediction& pred, const GoldStandard& gold);

// Best agreement per required gold entry, in entry order of
// required_entries(gold). Sums to recall_sum.
std::vector<double> recall_contributions(const Prediction& pred,
                                         const GoldStandard& gold);

// --- Taxonomy levels -------------------------------------------------------
//
// Level 2 scores the full label inventory, level 1 its three categories,
// level 0 only fallacy-vs-nothing. Projection rewrites labels bottom-up and
// never turns the "nothing" alternative into a fallacy, so a span that was
// optional stays optional at every level.

GoldStandard project(const GoldStandard& gold, int level, const Taxonomy& t);
Prediction project(const Prediction& pred, int level, const Taxonomy& t);

ScoreTriple score_at_level(const Prediction& pred, const GoldStandard& gold,
                           int level, const Taxonomy& t);
ScoreParts score_parts_at_level(const Prediction& pred,
                                const GoldStandard& gold, int level,
                                const Taxonomy& t);

// --- Legacy sum-based metrics ---------------------------------------------
//
// The earlier span-metric family used for propaganda-technique scoring:
// contributions are summed over all (pred, gold) pairs instead of taking the
// best match, so one span matched by several others counts repeatedly and
// values may exceed 1. Kept for side-by-side comparison. The legacy
// definition predates optional spans; entries admitting "nothing" count like
// any other. Empty-set conventions mirror the main metrics.

double legacy_sum_precision(const Prediction& pred, const GoldStandard& gold);
double legacy_sum_recall(const Prediction& pred, const GoldStandard& gold);

// --- Aggregation -----------------------------------------------------------

enum class AggMode { kMacro, kMicro };

std::string_view to_string(AggMode m);
std::optional<AggMode> agg_mode_from_string(std::string_view s);

struct AggregateScore {
  // Macro: precision/recall averaged over documents, f1 the harmonic mean
  // of those averages. Micro: sums pooled before dividing; a pooled
  // denominator of 0 keeps the single-document convention (score 1).
  ScoreTriple triple;
  // Mean of per-document F1s, the other common way to average; reported
  // alongside under both modes.
  double mean_f1 = 0.0;
};

// Documents must be non-empty.
AggregateScore aggregate(const std::vector<ScoreParts>& documents,
                         AggMode mode);

// --- Exact-match accounting ------------------------------------------------

// Span-level bookkeeping used for error analysis: how many predicted entries
// reproduce a gold span exactly, and how many of those also carry an
// admitted label. The per-category breakdown buckets exact-span matches by
// the Level-1 category of the matched gold entry's first label (unprojected).
struct CategoryCounts {
  std::size_t exact_span = 0;
  std::size_t exact_span_correct_label = 0;
};

struct ExactMatchCounts {
  std::size_t pred_entries = 0;
  std::size_t exact_span = 0;
  std::size_t exact_span_correct_label = 0;
  // Spans the normalizer could not map to any label; supplied by the caller
  // because canonical predictions cannot express them.
  std::size_t unknown_spans = 0;
  std::map<Level1, CategoryCounts> by_category;
};

ExactMatchCounts exact_match_report(const Prediction& pred,
                                    const GoldStandard& gold,
                                    const Taxonomy& taxonomy, int level = 2,
                                    std::size_t unknown_spans = 0);

// --- Annotator cross-comparison -------------------------------------------

// Reads a gold-shaped annotation set as if it were a prediction: one entry
// per (span, non-"nothing" label). The "nothing" alternatives are dropped;
// a prediction cannot assert them.
Prediction flatten_to_prediction(const GoldStandard& gold);

struct CrossCell {
  std::string gold_name;
  std::string pred_name;
  AggregateScore scores;
};

// Scores every ordered pair of annotation sets (including an=an diagonal)
// over the shared documents. All sets must cover the same doc_ids; entries
// are keyed by doc_id. Cells come back in (gold, pred) input order.
using AnnotationSet =
    std::vector<std::pair<std::string /*doc_id*/, GoldStandard>>;

std::vector<CrossCell> cross_compare(
    const std::vector<std::pair<std::string, AnnotationSet>>& sets, int level,
    const Taxonomy& taxonomy, AggMode mode);

}  // namespace faleval
