#include "faleval/annotation.hpp"

#include <algorithm>

namespace faleval {

GoldStandard required_entries(const GoldStandard& gold) {
  GoldStandard out;
  for (const auto& e : gold.entries)
    if (!e.optional_no_fallacy) out.entries.push_back(e);
  return out;
}

bool gold_admits(const GoldEntry& gold, std::string_view label) {
  return std::find(gold.labels.begin(), gold.labels.end(), label) !=
         gold.labels.end();
}

namespace {

std::string span_text(SpanRef s) {
  return "[" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
}

void check_span(const Document& doc, SpanRef s,
                std::vector<Violation>& out) {
  if (s.start >= s.end) {
    out.push_back({doc.doc_id, "span-empty",
                   "span " + span_text(s) + " covers no sentence"});
  } else if (s.end > doc.sentence_count()) {
    out.push_back({doc.doc_id, "span-out-of-range",
                   "span " + span_text(s) + " exceeds the " +
                       std::to_string(doc.sentence_count()) +
                       " sentences of the document"});
  }
}

}  // namespace

std::vector<Violation> validate(const Document& doc, const GoldStandard& gold,
                                const Taxonomy& taxonomy) {
  std::vector<Violation> out;
  for (const auto& e : gold.entries) {
    check_span(doc, e.span, out);
    if (e.labels.empty()) {
      out.push_back({doc.doc_id,
                     e.optional_no_fallacy ? "bare-no-fallacy"
                                           : "empty-label-set",
                     "entry at " + span_text(e.span) +
                         (e.optional_no_fallacy
                              ? " admits only the no-fallacy reading"
                              : " has no labels")});
      continue;
    }
    bool dup_reported = false;
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      const std::string& label = e.labels[i];
      if (!taxonomy.find(label))
        out.push_back({doc.doc_id, "unknown-label",
                       "label '" + label + "' at " + span_text(e.span) +
                           " is not in the inventory"});
      if (!dup_reported &&
          std::count(e.labels.begin(), e.labels.begin() + i, label)) {
        out.push_back({doc.doc_id, "duplicate-label",
                       "label '" + label + "' repeats at " +
                           span_text(e.span)});
        dup_reported = true;
      }
    }
  }
  return out;
}

std::vector<Violation> validate(const Document& doc, const Prediction& pred,
                                const Taxonomy& taxonomy) {
  std::vector<Violation> out;
  for (const auto& e : pred.entries) {
    check_span(doc, e.span, out);
    if (!taxonomy.find(e.label))
      out.push_back({doc.doc_id, "unknown-label",
                     "label '" + e.label + "' at " + span_text(e.span) +
                         " is not in the inventory"});
  }
  return out;
}

}  // namespace faleval
