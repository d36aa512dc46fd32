#include "faleval/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace faleval {

std::string_view to_string(Level1 c) {
  switch (c) {
    case Level1::kEmotion: return "emotion";
    case Level1::kLogic: return "logic";
    case Level1::kCredibility: return "credibility";
  }
  return "emotion";
}

std::optional<Level1> level1_from_string(std::string_view s) {
  const std::string n = normalize_for_match(s);
  if (n == "emotion") return Level1::kEmotion;
  if (n == "logic") return Level1::kLogic;
  if (n == "credibility") return Level1::kCredibility;
  return std::nullopt;
}

std::string normalize_for_match(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_space = true;
    }
  }
  return out;
}

namespace {

// The default inventory: six emotion, ten logic, seven credibility labels.
// Aliases cover the naming variants that occur in circulated data and model
// output; matching happens on normalized text, so punctuation variants like
// "appeal to (false) authority" need no separate spelling.
const std::vector<LabelRecord>& builtin_records() {
  static const std::vector<LabelRecord> records = {
      {"appeal to anger", Level1::kEmotion, {}},
      {"appeal to fear", Level1::kEmotion, {}},
      {"appeal to pity", Level1::kEmotion, {}},
      {"appeal to positive emotion", Level1::kEmotion, {}},
      {"appeal to ridicule", Level1::kEmotion, {}},
      {"appeal to worse problems",
       Level1::kEmotion,
       {"appeal to worse problem", "relative privation"}},
      {"causal oversimplification", Level1::kLogic, {}},
      {"circular reasoning", Level1::kLogic, {"begging the question"}},
      {"equivocation", Level1::kLogic, {}},
      {"fallacy of division", Level1::kLogic, {}},
      {"false analogy", Level1::kLogic, {}},
      {"false causality", Level1::kLogic, {}},
      {"false dilemma", Level1::kLogic, {}},
      {"hasty generalization", Level1::kLogic, {}},
      {"slippery slope", Level1::kLogic, {}},
      {"straw man", Level1::kLogic, {"strawman", "strawman fallacy"}},
      {"ad hominem", Level1::kCredibility, {"abusive ad hominem"}},
      {"ad populum", Level1::kCredibility, {}},
      {"appeal to false authority",
       Level1::kCredibility,
       {"appeal to authority", "appeal to (false) authority"}},
      {"appeal to nature", Level1::kCredibility, {}},
      {"appeal to tradition", Level1::kCredibility, {}},
      {"guilt by association", Level1::kCredibility, {}},
      {"tu quoque", Level1::kCredibility, {}},
  };
  return records;
}

}  // namespace

const Taxonomy& Taxonomy::builtin() {
  static const Taxonomy t = Taxonomy::from_records(builtin_records());
  return t;
}

Taxonomy Taxonomy::from_records(std::vector<LabelRecord> records) {
  Taxonomy t;
  t.records_ = std::move(records);
  t.match_names_.resize(t.records_.size());
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < t.records_.size(); ++i) {
    const LabelRecord& r = t.records_[i];
    const std::string canon = normalize_for_match(r.canonical);
    if (canon.empty())
      throw std::invalid_argument("taxonomy: blank canonical name");
    if (canon == normalize_for_match(kNoFallacyToken))
      throw std::invalid_argument(
          "taxonomy: canonical name collides with the no-fallacy token");
    if (std::count(seen.begin(), seen.end(), canon))
      throw std::invalid_argument("taxonomy: duplicate label '" + canon + "'");
    seen.push_back(canon);

    auto& names = t.match_names_[i];
    names.push_back(canon);
    for (const auto& alias : r.aliases) {
      std::string n = normalize_for_match(alias);
      if (n.empty()) continue;
      if (!std::count(names.begin(), names.end(), n)) names.push_back(n);
    }
  }
  return t;
}

Taxonomy Taxonomy::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("taxonomy: cannot open " + path);
  std::vector<LabelRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("taxonomy: " + path + " line " +
                               std::to_string(line_no) + ": " + e.what());
    }
    LabelRecord r;
    r.canonical = j.at("canonical_name").get<std::string>();
    auto cat = level1_from_string(j.at("level1").get<std::string>());
    if (!cat)
      throw std::runtime_error("taxonomy: " + path + " line " +
                               std::to_string(line_no) +
                               ": unknown level1 category");
    r.category = *cat;
    if (j.contains("aliases"))
      for (const auto& a : j.at("aliases"))
        r.aliases.push_back(a.get<std::string>());
    records.push_back(std::move(r));
  }
  return from_records(std::move(records));
}

std::optional<std::size_t> Taxonomy::find(std::string_view canonical) const {
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (records_[i].canonical == canonical) return i;
  return std::nullopt;
}

std::optional<std::size_t> Taxonomy::resolve(std::string_view label) const {
  const std::string n = normalize_for_match(label);
  if (n.empty()) return std::nullopt;
  for (std::size_t i = 0; i < records_.size(); ++i)
    for (const auto& name : match_names_[i])
      if (name == n) return i;
  return std::nullopt;
}

std::optional<std::size_t> Taxonomy::match_label_text(
    std::string_view text) const {
  const std::string n = normalize_for_match(text);
  if (n.empty()) return std::nullopt;
  std::optional<std::size_t> best;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    for (const auto& name : match_names_[i]) {
      if (name.size() <= best_len) continue;  // earlier record wins ties
      if (n.find(name) != std::string::npos) {
        best = i;
        best_len = name.size();
      }
    }
  }
  return best;
}

std::vector<std::size_t> Taxonomy::match_all_labels(
    std::string_view text) const {
  const std::string n = normalize_for_match(text);
  std::vector<std::size_t> out;
  if (n.empty()) return out;
  for (std::size_t i = 0; i < records_.size(); ++i)
    for (const auto& name : match_names_[i])
      if (n.find(name) != std::string::npos) {
        out.push_back(i);
        break;
      }
  return out;
}

std::size_t Taxonomy::count_in_category(Level1 c) const {
  std::size_t n = 0;
  for (const auto& r : records_)
    if (r.category == c) ++n;
  return n;
}

}  // namespace faleval
