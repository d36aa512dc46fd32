#pragma once

#include <compare>
#include <cstddef>

namespace faleval {

// Half-open range [start, end) over document atoms. Atoms are sentence
// indices everywhere in the pipeline; the scoring code never looks inside
// them, so tests may reuse the same machinery with character offsets.
struct SpanRef {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool contains(std::size_t atom) const { return atom >= start && atom < end; }

  auto operator<=>(const SpanRef&) const = default;
};

// Number of atoms shared by two spans.
inline std::size_t overlap(const SpanRef& a, const SpanRef& b) {
  const std::size_t lo = a.start > b.start ? a.start : b.start;
  const std::size_t hi = a.end < b.end ? a.end : b.end;
  return hi > lo ? hi - lo : 0;
}

}  // namespace faleval
