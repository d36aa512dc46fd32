#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "faleval/annotation.hpp"
#include "faleval/taxonomy.hpp"

namespace faleval {

// What one raw model output for one sentence resolved to.
enum class VerdictKind { kLabel, kNoFallacy, kUnknown };

struct SentenceVerdict {
  std::size_t sentence_index = 0;
  VerdictKind kind = VerdictKind::kUnknown;
  // Set when kind == kLabel: the longest-match label, plus every label whose
  // name occurs in the output (inventory order) for multi-label use.
  std::optional<std::size_t> label;
  std::vector<std::size_t> all_labels;
};

// Maps one raw per-sentence output to a verdict. Label names win over
// no-fallacy cues; the cue list ("not part of a fallacious argument",
// "no fallacy", "none") matches as whole-token sequences of the normalized
// text so that e.g. "nonetheless" cannot fire "none". Anything else is
// unknown and will be counted, not scored.
SentenceVerdict resolve_sentence(const Taxonomy& taxonomy,
                                 std::size_t sentence_index,
                                 std::string_view raw_output);

struct GroupedPrediction {
  Prediction prediction;
  // Maximal unknown runs (spans, not sentences), kept for error analysis.
  std::size_t unknown_spans = 0;
};

// Fuses consecutive same-label verdicts into spans: a maximal run of
// sentences with the same label becomes one PredEntry, no-fallacy runs
// produce nothing, unknown runs only bump the counter. Verdicts must cover
// sentence indices 0..n-1 exactly once in order; gaps or duplicates throw
// std::invalid_argument. With multi_label, each label a sentence matched
// gets its own per-label run-length pass, so entries of different labels
// may overlap.
GroupedPrediction group_spans(const Taxonomy& taxonomy,
                              const std::vector<SentenceVerdict>& verdicts,
                              std::size_t sentence_count,
                              bool multi_label = false);

// Convenience: resolve + group for a document's raw outputs, one string per
// sentence.
GroupedPrediction normalize_outputs(const Taxonomy& taxonomy,
                                    const std::vector<std::string>& raw,
                                    bool multi_label = false);

// Replaces URLs, e-mail addresses and phone numbers with [URL], [EMAIL],
// [PHONE]. Idempotent: cleaning cleaned text is a no-op.
std::string clean_text(const std::string& text);

}  // namespace faleval
