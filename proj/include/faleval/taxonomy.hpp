#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faleval {

// Level-1 category of a fallacy: the appeal it abuses.
enum class Level1 { kEmotion, kLogic, kCredibility };

std::string_view to_string(Level1 c);
std::optional<Level1> level1_from_string(std::string_view s);

// One fallacy type. `canonical` is the lower-case identity used in all files
// and reports; `aliases` are alternative surface names that resolve to it.
struct LabelRecord {
  std::string canonical;
  Level1 category = Level1::kEmotion;
  std::vector<std::string> aliases;
};

// Token that marks "this span may also be read as not fallacious" in gold
// label sets. It is not a label: predictions can never carry it.
inline constexpr std::string_view kNoFallacyToken = "nothing";

// Names of the coarser levels a label can be projected to.
inline constexpr std::string_view kLevel0Label = "fallacy";

// Lower-cases, maps every non-alphanumeric byte to a space and collapses
// whitespace runs. ASCII-only on purpose: label names are ASCII and model
// output beyond that cannot affect matching.
std::string normalize_for_match(std::string_view text);

// The label inventory. Data-driven: the default 23-record table ships both
// compiled in and as data/taxonomy.jsonl; extending the file needs no code
// change. Indices are stable inventory order (file order) and are used as
// tie-breakers when matching.
class Taxonomy {
 public:
  static const Taxonomy& builtin();
  static Taxonomy from_file(const std::string& path);
  static Taxonomy from_records(std::vector<LabelRecord> records);

  std::size_t size() const { return records_.size(); }
  const std::vector<LabelRecord>& records() const { return records_; }
  const LabelRecord& record(std::size_t i) const { return records_[i]; }
  const std::string& name(std::size_t i) const { return records_[i].canonical; }
  Level1 category(std::size_t i) const { return records_[i].category; }

  // Exact canonical-name lookup (input already canonical).
  std::optional<std::size_t> find(std::string_view canonical) const;

  // Resolves a label string as it appears in data files: canonical name or
  // alias, compared on normalized form.
  std::optional<std::size_t> resolve(std::string_view label) const;

  // Finds the label whose canonical name or alias occurs as a contiguous
  // substring of normalize_for_match(text). Longest occurring name wins;
  // ties break by inventory order. nullopt when no name occurs.
  std::optional<std::size_t> match_label_text(std::string_view text) const;

  // All labels with at least one occurring name, in inventory order.
  std::vector<std::size_t> match_all_labels(std::string_view text) const;

  std::size_t count_in_category(Level1 c) const;

 private:
  Taxonomy() = default;

  std::vector<LabelRecord> records_;
  // Parallel to records_: every normalized name for record i, canonical first.
  std::vector<std::vector<std::string>> match_names_;
};

}  // namespace faleval
