#include "faleval/scoring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace faleval {

double comparison_score(const SpanRef& pred_span, std::string_view pred_label,
                        const GoldEntry& gold, std::size_t h) {
  if (h == 0) return 0.0;
  if (!gold_admits(gold, pred_label)) return 0.0;
  return static_cast<double>(overlap(pred_span, gold.span)) /
         static_cast<double>(h);
}

namespace {

void check_level(int level) {
  if (level < 0 || level > 2)
    throw std::invalid_argument("taxonomy level must be 0, 1 or 2");
}

// Required entries with their admitted sets widened by same-span optional
// entries: when one annotator marked a span "l1 or nothing" and another
// required l2 on the exactly equal span, predicting l1 satisfies the span.
std::vector<GoldEntry> effective_required(const GoldStandard& gold) {
  std::vector<GoldEntry> out;
  for (const auto& g : gold.entries) {
    if (g.optional_no_fallacy) continue;
    GoldEntry widened = g;
    for (const auto& o : gold.entries) {
      if (!o.optional_no_fallacy || o.span != g.span) continue;
      for (const auto& label : o.labels)
        if (!gold_admits(widened, label)) widened.labels.push_back(label);
    }
    out.push_back(std::move(widened));
  }
  return out;
}

// Numerator of precision. Exact duplicates in P are grouped; a group of k
// copies of (span, label) takes min(k, m) when m gold entries with exactly
// that span admit the label (each such match is a full 1.0), and surplus
// copies take nothing. Groups with no exact-span slot fall back to the plain
// best-overlap score per copy.
double precision_total(const Prediction& pred, const GoldStandard& gold) {
  std::map<std::pair<SpanRef, std::string>, std::size_t> groups;
  for (const auto& p : pred.entries) ++groups[{p.span, p.label}];

  double total = 0.0;
  for (const auto& [key, k] : groups) {
    const auto& [span, label] = key;
    std::size_t m = 0;
    for (const auto& g : gold.entries)
      if (g.span == span && gold_admits(g, label)) ++m;
    if (m > 0) {
      total += static_cast<double>(std::min(k, m));
    } else {
      double best = 0.0;
      for (const auto& g : gold.entries)
        best = std::max(best, comparison_score(span, label, g, span.length()));
      total += static_cast<double>(k) * best;
    }
  }
  return total;
}

}  // namespace

double precision(const Prediction& pred, const GoldStandard& gold) {
  if (pred.entries.empty()) return 1.0;
  return precision_total(pred, gold) /
         static_cast<double>(pred.entries.size());
}

std::vector<double> recall_contributions(const Prediction& pred,
                                         const GoldStandard& gold) {
  std::vector<double> out;
  for (const auto& g : effective_required(gold)) {
    double best = 0.0;
    for (const auto& p : pred.entries)
      best = std::max(best,
                      comparison_score(p.span, p.label, g, g.span.length()));
    out.push_back(best);
  }
  return out;
}

double recall(const Prediction& pred, const GoldStandard& gold) {
  const std::vector<double> c = recall_contributions(pred, gold);
  if (c.empty()) return 1.0;
  double sum = 0.0;
  for (double v : c) sum += v;
  return sum / static_cast<double>(c.size());
}

double f1(double precision, double recall) {
  const double s = precision + recall;
  if (s == 0.0) return 0.0;
  return 2.0 * precision * recall / s;
}

double ScoreParts::precision() const {
  if (pred_count == 0) return 1.0;
  return precision_sum / static_cast<double>(pred_count);
}

double ScoreParts::recall() const {
  if (required_count == 0) return 1.0;
  return recall_sum / static_cast<double>(required_count);
}

ScoreTriple ScoreParts::triple() const {
  const double p = precision();
  const double r = recall();
  return {p, r, f1(p, r)};
}

ScoreParts score_parts(const Prediction& pred, const GoldStandard& gold) {
  ScoreParts parts;
  parts.precision_sum = precision_total(pred, gold);
  parts.pred_count = pred.entries.size();
  const std::vector<double> c = recall_contributions(pred, gold);
  for (double v : c) parts.recall_sum += v;
  parts.required_count = c.size();
  return parts;
}

ScoreTriple score(const Prediction& pred, const GoldStandard& gold) {
  return score_parts(pred, gold).triple();
}

namespace {

std::string project_label(const std::string& label, int level,
                          const Taxonomy& t) {
  if (level == 2) return label;
  auto i = t.find(label);
  if (!i)
    throw std::invalid_argument("cannot project unknown label '" + label +
                                "'");
  if (level == 1) return std::string(to_string(t.category(*i)));
  return std::string(kLevel0Label);
}

}  // namespace

GoldStandard project(const GoldStandard& gold, int level, const Taxonomy& t) {
  check_level(level);
  GoldStandard out;
  out.entries.reserve(gold.entries.size());
  for (const auto& g : gold.entries) {
    GoldEntry e;
    e.span = g.span;
    e.optional_no_fallacy = g.optional_no_fallacy;
    for (const auto& label : g.labels) {
      std::string projected = project_label(label, level, t);
      if (!gold_admits(e, projected)) e.labels.push_back(std::move(projected));
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

Prediction project(const Prediction& pred, int level, const Taxonomy& t) {
  check_level(level);
  Prediction out;
  out.entries.reserve(pred.entries.size());
  for (const auto& p : pred.entries)
    out.entries.push_back({p.span, project_label(p.label, level, t)});
  return out;
}

ScoreTriple score_at_level(const Prediction& pred, const GoldStandard& gold,
                           int level, const Taxonomy& t) {
  return score(project(pred, level, t), project(gold, level, t));
}

ScoreParts score_parts_at_level(const Prediction& pred,
                                const GoldStandard& gold, int level,
                                const Taxonomy& t) {
  return score_parts(project(pred, level, t), project(gold, level, t));
}

double legacy_sum_precision(const Prediction& pred, const GoldStandard& gold) {
  if (pred.entries.empty()) return 1.0;
  double total = 0.0;
  for (const auto& p : pred.entries)
    for (const auto& g : gold.entries)
      total += comparison_score(p.span, p.label, g, p.span.length());
  return total / static_cast<double>(pred.entries.size());
}

double legacy_sum_recall(const Prediction& pred, const GoldStandard& gold) {
  if (gold.entries.empty()) return 1.0;
  double total = 0.0;
  for (const auto& g : gold.entries)
    for (const auto& p : pred.entries)
      total += comparison_score(p.span, p.label, g, g.span.length());
  return total / static_cast<double>(gold.entries.size());
}

std::string_view to_string(AggMode m) {
  return m == AggMode::kMacro ? "macro" : "micro";
}

std::optional<AggMode> agg_mode_from_string(std::string_view s) {
  if (s == "macro") return AggMode::kMacro;
  if (s == "micro") return AggMode::kMicro;
  return std::nullopt;
}

AggregateScore aggregate(const std::vector<ScoreParts>& documents,
                         AggMode mode) {
  if (documents.empty())
    throw std::invalid_argument("aggregate: document list is empty");
  const double n = static_cast<double>(documents.size());

  AggregateScore out;
  double f1_sum = 0.0;
  for (const auto& d : documents) f1_sum += d.triple().f1;
  out.mean_f1 = f1_sum / n;

  if (mode == AggMode::kMacro) {
    double p = 0.0, r = 0.0;
    for (const auto& d : documents) {
      p += d.precision();
      r += d.recall();
    }
    p /= n;
    r /= n;
    out.triple = {p, r, f1(p, r)};
  } else {
    ScoreParts pooled;
    for (const auto& d : documents) {
      pooled.precision_sum += d.precision_sum;
      pooled.pred_count += d.pred_count;
      pooled.recall_sum += d.recall_sum;
      pooled.required_count += d.required_count;
    }
    out.triple = pooled.triple();
  }
  return out;
}

ExactMatchCounts exact_match_report(const Prediction& pred,
                                    const GoldStandard& gold,
                                    const Taxonomy& taxonomy, int level,
                                    std::size_t unknown_spans) {
  check_level(level);
  ExactMatchCounts out;
  out.pred_entries = pred.entries.size();
  out.unknown_spans = unknown_spans;

  const Prediction pp = project(pred, level, taxonomy);
  const GoldStandard pg = project(gold, level, taxonomy);

  for (const auto& p : pp.entries) {
    bool any_span = false;
    bool correct = false;
    std::size_t matched = 0;  // index of the entry backing the category bucket
    for (std::size_t gi = 0; gi < pg.entries.size(); ++gi) {
      if (pg.entries[gi].span != p.span) continue;
      if (!any_span) {
        any_span = true;
        matched = gi;
      }
      if (!correct && gold_admits(pg.entries[gi], p.label)) {
        correct = true;
        matched = gi;
      }
    }
    if (!any_span) continue;
    ++out.exact_span;
    if (correct) ++out.exact_span_correct_label;

    const GoldEntry& orig = gold.entries[matched];
    if (orig.labels.empty()) continue;
    if (auto idx = taxonomy.find(orig.labels[0])) {
      CategoryCounts& bucket = out.by_category[taxonomy.category(*idx)];
      ++bucket.exact_span;
      if (correct) ++bucket.exact_span_correct_label;
    }
  }
  return out;
}

Prediction flatten_to_prediction(const GoldStandard& gold) {
  Prediction out;
  for (const auto& g : gold.entries)
    for (const auto& label : g.labels)
      out.entries.push_back({g.span, label});
  return out;
}

std::vector<CrossCell> cross_compare(
    const std::vector<std::pair<std::string, AnnotationSet>>& sets, int level,
    const Taxonomy& taxonomy, AggMode mode) {
  check_level(level);
  if (sets.empty())
    throw std::invalid_argument("cross_compare: no annotation sets");

  std::vector<std::map<std::string, const GoldStandard*>> by_doc(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (const auto& [doc_id, standard] : sets[i].second)
      if (!by_doc[i].emplace(doc_id, &standard).second)
        throw std::invalid_argument("cross_compare: set '" + sets[i].first +
                                    "' annotates '" + doc_id + "' twice");

  std::vector<std::string> doc_ids;
  for (const auto& [doc_id, standard] : by_doc[0]) doc_ids.push_back(doc_id);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<std::string> ids;
    for (const auto& [doc_id, standard] : by_doc[i]) ids.push_back(doc_id);
    if (ids != doc_ids)
      throw std::invalid_argument(
          "cross_compare: annotation sets cover different documents");
  }

  std::vector<CrossCell> cells;
  for (std::size_t gi = 0; gi < sets.size(); ++gi) {
    for (std::size_t pi = 0; pi < sets.size(); ++pi) {
      std::vector<ScoreParts> parts;
      parts.reserve(doc_ids.size());
      for (const auto& doc_id : doc_ids)
        parts.push_back(score_parts_at_level(
            flatten_to_prediction(*by_doc[pi].at(doc_id)),
            *by_doc[gi].at(doc_id), level, taxonomy));
      cells.push_back(
          {sets[gi].first, sets[pi].first, aggregate(parts, mode)});
    }
  }
  return cells;
}

}  // namespace faleval
