#pragma once

#include <string>
#include <vector>

#include "faleval/span.hpp"
#include "faleval/taxonomy.hpp"

namespace faleval {

struct Document {
  std::string doc_id;
  std::vector<std::string> sentences;
  std::string source;  // free-form provenance tag, may be empty

  std::size_t sentence_count() const { return sentences.size(); }
};

// One gold annotation: a span plus the set of labels an annotator may use
// for it. `optional_no_fallacy` records that the set also admits "nothing",
// i.e. leaving the span unannotated is equally acceptable. `labels` holds
// canonical names and is never empty in valid data; the same span may occur
// in several entries, in which case each entry must be matched separately.
struct GoldEntry {
  SpanRef span;
  std::vector<std::string> labels;
  bool optional_no_fallacy = false;
};

struct GoldStandard {
  std::vector<GoldEntry> entries;
};

// One predicted annotation: exactly one label per span.
struct PredEntry {
  SpanRef span;
  std::string label;
};

struct Prediction {
  std::vector<PredEntry> entries;
};

// Entries a system is actually required to find: those without the
// no-fallacy alternative. Recall is measured against this subset only.
GoldStandard required_entries(const GoldStandard& gold);

// Does the entry's label set admit this label?
bool gold_admits(const GoldEntry& gold, std::string_view label);

struct Violation {
  std::string doc_id;
  std::string code;    // stable machine code, e.g. "span-out-of-range"
  std::string detail;  // human-readable specifics
};

// Structural checks; violations are returned, not thrown, so callers can
// report all of them at once. Codes: span-out-of-range, span-empty,
// empty-label-set, bare-no-fallacy, unknown-label, duplicate-label.
std::vector<Violation> validate(const Document& doc, const GoldStandard& gold,
                                const Taxonomy& taxonomy);
std::vector<Violation> validate(const Document& doc, const Prediction& pred,
                                const Taxonomy& taxonomy);

}  // namespace faleval
