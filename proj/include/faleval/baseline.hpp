#pragma once

#include <cstdint>

#include "faleval/annotation.hpp"
#include "faleval/normalize.hpp"
#include "faleval/taxonomy.hpp"

namespace faleval {

// Fixed default so that published baseline numbers are reproducible without
// remembering a seed.
inline constexpr std::uint64_t kDefaultBaselineSeed = 2024;

struct BaselineConfig {
  std::uint64_t seed = kDefaultBaselineSeed;
};

// Draws one outcome per sentence, i.i.d. uniform over the inventory plus
// "no fallacy" (24 outcomes with the default 23-label inventory), then fuses
// runs exactly like the normalizer, so single-sentence spans dominate but
// equal adjacent draws merge. The stream depends only on (seed, doc_id):
// documents can be generated in any order or in parallel with identical
// results.
Prediction random_prediction(const Document& doc, const Taxonomy& taxonomy,
                             const BaselineConfig& config);

// The per-sentence outcome before grouping: label index, or size() for
// "no fallacy". Exposed for distribution tests.
std::size_t random_outcome(const Taxonomy& taxonomy, std::uint64_t seed,
                           std::string_view doc_id, std::size_t sentence_index);

}  // namespace faleval
