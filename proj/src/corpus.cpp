#include "faleval/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace faleval {

namespace {

DocumentScores score_one(const CorpusDocument& cd, const Prediction* pred,
                         const Taxonomy& taxonomy, const ScoreOptions& opts) {
  static const Prediction kEmpty;
  const Prediction& p = pred ? *pred : kEmpty;
  DocumentScores out;
  out.doc_id = cd.doc.doc_id;
  for (int level : opts.levels) {
    const ScoreParts parts = score_parts_at_level(p, cd.gold, level, taxonomy);
    out.parts[level] = parts;
    out.triples[level] = parts.triple();
  }
  return out;
}

std::vector<std::size_t> sorted_order(
    const std::vector<CorpusDocument>& corpus) {
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return corpus[a].doc.doc_id < corpus[b].doc.doc_id;
                   });
  return order;
}

std::vector<const Prediction*> prediction_slots(
    const std::vector<CorpusDocument>& corpus,
    const std::vector<std::size_t>& order, const PredictionMap& predictions) {
  std::vector<const Prediction*> slots(order.size(), nullptr);
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto it = predictions.find(corpus[order[k]].doc.doc_id);
    if (it != predictions.end()) slots[k] = &it->second;
  }
  return slots;
}

// The serial fold over already-sorted per-document results. Shared by both
// paths so their arithmetic (and therefore every bit of the output) agrees.
CorpusScore fold(std::vector<DocumentScores> docs, const ScoreOptions& opts) {
  CorpusScore out;
  out.mode = opts.mode;
  out.documents = std::move(docs);
  if (out.documents.empty()) return out;
  for (int level : opts.levels) {
    std::vector<ScoreParts> parts;
    parts.reserve(out.documents.size());
    for (const auto& d : out.documents) parts.push_back(d.parts.at(level));
    out.aggregate[level] = aggregate(parts, opts.mode);
  }
  return out;
}

}  // namespace

CorpusScore score_corpus_serial(const std::vector<CorpusDocument>& corpus,
                                const PredictionMap& predictions,
                                const Taxonomy& taxonomy,
                                const ScoreOptions& opts) {
  const auto order = sorted_order(corpus);
  const auto slots = prediction_slots(corpus, order, predictions);
  std::vector<DocumentScores> docs(corpus.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    docs[k] = score_one(corpus[order[k]], slots[k], taxonomy, opts);
  return fold(std::move(docs), opts);
}

CorpusScore score_corpus(const std::vector<CorpusDocument>& corpus,
                         const PredictionMap& predictions,
                         const Taxonomy& taxonomy, const ScoreOptions& opts) {
  const auto order = sorted_order(corpus);
  const auto slots = prediction_slots(corpus, order, predictions);
  std::vector<DocumentScores> docs(corpus.size());
  // Documents are independent; every iteration writes only its own slot, so
  // the result cannot depend on the schedule or thread count.
  const std::int64_t n = static_cast<std::int64_t>(order.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::int64_t k = 0; k < n; ++k)
    docs[static_cast<std::size_t>(k)] = score_one(
        corpus[order[static_cast<std::size_t>(k)]],
        slots[static_cast<std::size_t>(k)], taxonomy, opts);
  return fold(std::move(docs), opts);
}

}  // namespace faleval
