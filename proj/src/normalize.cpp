#include "faleval/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace faleval {

namespace {

std::vector<std::string> tokens_of(std::string_view raw) {
  std::istringstream in(normalize_for_match(raw));
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool has_token_sequence(const std::vector<std::string>& tokens,
                        const std::vector<std::string>& cue) {
  if (cue.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + cue.size() <= tokens.size(); ++i)
    if (std::equal(cue.begin(), cue.end(), tokens.begin() + i)) return true;
  return false;
}

}  // namespace

SentenceVerdict resolve_sentence(const Taxonomy& taxonomy,
                                 std::size_t sentence_index,
                                 std::string_view raw_output) {
  SentenceVerdict v;
  v.sentence_index = sentence_index;
  v.all_labels = taxonomy.match_all_labels(raw_output);
  if (!v.all_labels.empty()) {
    v.kind = VerdictKind::kLabel;
    v.label = taxonomy.match_label_text(raw_output);
    return v;
  }

  // Whole-token sequences so that "nonetheless" cannot trigger "none".
  static const std::vector<std::vector<std::string>> kCues = {
      {"not", "part", "of", "a", "fallacious", "argument"},
      {"no", "fallacy"},
      {"none"},
  };
  const std::vector<std::string> tokens = tokens_of(raw_output);
  for (const auto& cue : kCues)
    if (has_token_sequence(tokens, cue)) {
      v.kind = VerdictKind::kNoFallacy;
      return v;
    }

  v.kind = VerdictKind::kUnknown;
  return v;
}

GroupedPrediction group_spans(const Taxonomy& taxonomy,
                              const std::vector<SentenceVerdict>& verdicts,
                              std::size_t sentence_count, bool multi_label) {
  if (verdicts.size() != sentence_count)
    throw std::invalid_argument(
        "group_spans: " + std::to_string(verdicts.size()) +
        " verdicts do not cover " + std::to_string(sentence_count) +
        " sentences");
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    if (verdicts[i].sentence_index != i)
      throw std::invalid_argument(
          "group_spans: verdict " + std::to_string(i) +
          " refers to sentence " +
          std::to_string(verdicts[i].sentence_index) +
          "; indices must be 0..n-1 in order");

  const std::size_t n = verdicts.size();
  GroupedPrediction out;

  for (std::size_t i = 0; i < n;) {
    if (verdicts[i].kind != VerdictKind::kUnknown) {
      ++i;
      continue;
    }
    ++out.unknown_spans;
    while (i < n && verdicts[i].kind == VerdictKind::kUnknown) ++i;
  }

  if (!multi_label) {
    for (std::size_t i = 0; i < n;) {
      if (verdicts[i].kind != VerdictKind::kLabel) {
        ++i;
        continue;
      }
      const std::size_t label = *verdicts[i].label;
      std::size_t j = i + 1;
      while (j < n && verdicts[j].kind == VerdictKind::kLabel &&
             *verdicts[j].label == label)
        ++j;
      out.prediction.entries.push_back({{i, j}, taxonomy.name(label)});
      i = j;
    }
    return out;
  }

  auto carries = [&](std::size_t i, std::size_t label) {
    return verdicts[i].kind == VerdictKind::kLabel &&
           std::count(verdicts[i].all_labels.begin(),
                      verdicts[i].all_labels.end(), label) > 0;
  };
  for (std::size_t label = 0; label < taxonomy.size(); ++label) {
    for (std::size_t i = 0; i < n;) {
      if (!carries(i, label)) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < n && carries(j, label)) ++j;
      out.prediction.entries.push_back({{i, j}, taxonomy.name(label)});
      i = j;
    }
  }
  return out;
}

GroupedPrediction normalize_outputs(const Taxonomy& taxonomy,
                                    const std::vector<std::string>& raw,
                                    bool multi_label) {
  std::vector<SentenceVerdict> verdicts;
  verdicts.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    verdicts.push_back(resolve_sentence(taxonomy, i, raw[i]));
  return group_spans(taxonomy, verdicts, raw.size(), multi_label);
}

namespace {

// Replaces every match that passes `keep` with `placeholder`.
template <typename Keep>
std::string replace_matching(const std::string& s, const std::regex& re,
                             const char* placeholder, Keep keep) {
  std::string out;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re);
       it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    if (!keep(m.str())) continue;
    out.append(s, last, static_cast<std::size_t>(m.position()) - last);
    out += placeholder;
    last = static_cast<std::size_t>(m.position() + m.length());
  }
  out.append(s, last, std::string::npos);
  return out;
}

}  // namespace

std::string clean_text(const std::string& text) {
  static const std::regex kUrl(R"(https?://\S+|www\.\S+)");
  static const std::regex kEmail(
      R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})");
  // Candidate digit runs with phone punctuation; only runs with at least
  // seven digits count, so years and page numbers survive.
  static const std::regex kPhone(R"(\+?\d[\d\s().-]*\d)");

  auto always = [](const std::string&) { return true; };
  std::string s = replace_matching(text, kUrl, "[URL]", always);
  s = replace_matching(s, kEmail, "[EMAIL]", always);
  s = replace_matching(s, kPhone, "[PHONE]", [](const std::string& m) {
    return std::count_if(m.begin(), m.end(), [](unsigned char c) {
             return std::isdigit(c) != 0;
           }) >= 7;
  });
  return s;
}

}  // namespace faleval
