#include "faleval/baseline.hpp"

#include "faleval/detail/rng.hpp"

namespace faleval {

std::size_t random_outcome(const Taxonomy& taxonomy, std::uint64_t seed,
                           std::string_view doc_id,
                           std::size_t sentence_index) {
  // Mix the seed through SplitMix64 before xoring the doc hash so that
  // nearby seeds give unrelated streams; each sentence then gets its own
  // generator, which makes the draw independent of evaluation order.
  const std::uint64_t base =
      detail::SplitMix64(seed).next() ^ detail::fnv1a64(doc_id);
  detail::SplitMix64 g(base +
                       static_cast<std::uint64_t>(sentence_index) *
                           0x9e3779b97f4a7c15ull);
  return static_cast<std::size_t>(g.bounded(taxonomy.size() + 1));
}

Prediction random_prediction(const Document& doc, const Taxonomy& taxonomy,
                             const BaselineConfig& config) {
  const std::size_t none = taxonomy.size();
  Prediction out;
  const std::size_t n = doc.sentence_count();
  for (std::size_t i = 0; i < n;) {
    const std::size_t outcome =
        random_outcome(taxonomy, config.seed, doc.doc_id, i);
    if (outcome == none) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n &&
           random_outcome(taxonomy, config.seed, doc.doc_id, j) == outcome)
      ++j;
    out.entries.push_back({{i, j}, taxonomy.name(outcome)});
    i = j;
  }
  return out;
}

}  // namespace faleval
