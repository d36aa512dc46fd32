#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "faleval/corpus.hpp"
#include "faleval/taxonomy.hpp"

namespace faleval {

// All files are line-delimited UTF-8: one JSON record per line, no record
// spanning lines, key order fixed by the writers so equal inputs serialize
// byte-identically.
//
//   dataset      {"doc_id", "sentences": [...], "source"?,
//                 "gold": [{"start", "end", "labels": [...]}]}
//   predictions  {"doc_id", "predictions": [{"start", "end", "label"}]}
//   model output {"doc_id", "sentence_index", "raw_output"}
//
// Gold label lists may contain "nothing" alongside real labels to mark the
// span as optional. Label strings resolve through the taxonomy (aliases and
// case/punctuation variants are accepted); anything unresolvable is a hard
// error naming the line.

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& path, std::size_t line, const std::string& what);
};

std::vector<CorpusDocument> load_dataset(const std::string& path,
                                         const Taxonomy& taxonomy);
void write_dataset(std::ostream& out, const std::vector<CorpusDocument>& corpus);
void write_dataset(const std::string& path,
                   const std::vector<CorpusDocument>& corpus);

// Loading validates doc ids against the corpus, resolves labels and checks
// span bounds; documents absent from the file get no entry (callers treat
// that as an empty prediction).
PredictionMap load_predictions(const std::string& path,
                               const std::vector<CorpusDocument>& corpus,
                               const Taxonomy& taxonomy);
void write_predictions(std::ostream& out, const PredictionMap& predictions);
void write_predictions(const std::string& path,
                       const PredictionMap& predictions);

// Raw per-sentence outputs, one row per (doc, sentence). Rows may arrive in
// any order; they come back grouped per document and sorted by sentence
// index. Indices are range-checked here; coverage (no gap, no duplicate) is
// enforced when the rows are grouped into spans.
struct ModelOutputRow {
  std::size_t sentence_index = 0;
  std::string raw_output;
};
using ModelOutputMap = std::map<std::string, std::vector<ModelOutputRow>>;

ModelOutputMap load_model_outputs(const std::string& path,
                                  const std::vector<CorpusDocument>& corpus);
void write_model_outputs(std::ostream& out, const ModelOutputMap& outputs);
void write_model_outputs(const std::string& path,
                         const ModelOutputMap& outputs);

// --- Import shim for published char-offset data ----------------------------
//
// Converts the published distribution format, one JSON record per line:
//   {"text": "...", "labels": [[char_start, char_end, "label"], ...]}
// Free text is split into sentences with a deterministic splitter; each char
// span maps to the smallest covering sentence span. Rows with an exactly
// equal char span merge into one alternative set (that is how alternatives
// are published); distinct char spans remain separate entries even when they
// land on the same sentences. "nothing"/"no fallacy" rows mark their span
// optional; a span whose set would be only "nothing" is dropped and counted.

struct ImportStats {
  std::size_t documents = 0;
  std::size_t entries = 0;
  std::size_t dropped_bare_no_fallacy = 0;
};

std::vector<CorpusDocument> import_char_annotations(const std::string& path,
                                                    const Taxonomy& taxonomy,
                                                    ImportStats* stats = nullptr);

// The splitter behind the shim: sentence boundaries after terminal
// punctuation or newlines. Returns [start, end) char ranges covering every
// non-blank stretch of the text, in order.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(
    const std::string& text);

}  // namespace faleval
