#pragma once

#include <map>
#include <string>
#include <vector>

#include "faleval/annotation.hpp"
#include "faleval/scoring.hpp"

namespace faleval {

struct CorpusDocument {
  Document doc;
  GoldStandard gold;
};

// Predictions keyed by doc_id. Documents with no entry score as an empty
// prediction (the model asserted nothing).
using PredictionMap = std::map<std::string, Prediction>;

struct ScoreOptions {
  std::vector<int> levels = {0, 1, 2};
  AggMode mode = AggMode::kMacro;
};

struct DocumentScores {
  std::string doc_id;
  // Keyed by level.
  std::map<int, ScoreParts> parts;
  std::map<int, ScoreTriple> triples;
};

struct CorpusScore {
  AggMode mode = AggMode::kMacro;
  std::vector<DocumentScores> documents;  // sorted by doc_id
  std::map<int, AggregateScore> aggregate;
};

// Scores every document at every requested level and aggregates. Documents
// are independent, so the hot loop is OpenMP-parallel; per-document results
// land in pre-sized slots and the final fold runs serially in doc_id order,
// which makes the output identical run-to-run and thread-count-independent.
CorpusScore score_corpus(const std::vector<CorpusDocument>& corpus,
                         const PredictionMap& predictions,
                         const Taxonomy& taxonomy, const ScoreOptions& opts);

// Plain-loop reference implementation; must produce bit-identical results.
CorpusScore score_corpus_serial(const std::vector<CorpusDocument>& corpus,
                                const PredictionMap& predictions,
                                const Taxonomy& taxonomy,
                                const ScoreOptions& opts);

}  // namespace faleval
