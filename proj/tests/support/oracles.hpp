#pragma once

// Independent reference implementations used only by tests. Everything here
// is written the dumbest possible way (direct transliteration, quadratic
// scans) so that disagreement with the library points at the library.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "faleval/annotation.hpp"
#include "faleval/detail/rng.hpp"
#include "faleval/span.hpp"

namespace faleval::test {

inline bool admits(const GoldEntry& g, const std::string& label) {
  return std::find(g.labels.begin(), g.labels.end(), label) != g.labels.end();
}

inline double pair_score(const PredEntry& p, const GoldEntry& g,
                         std::size_t h) {
  if (!admits(g, p.label)) return 0.0;
  return static_cast<double>(overlap(p.span, g.span)) / static_cast<double>(h);
}

// The plain best-match formulas, no duplicate handling of any kind.
inline double plain_precision(const Prediction& pred, const GoldStandard& gold) {
  if (pred.entries.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& p : pred.entries) {
    double best = 0.0;
    for (const auto& g : gold.entries)
      best = std::max(best, pair_score(p, g, p.span.length()));
    sum += best;
  }
  return sum / static_cast<double>(pred.entries.size());
}

// Recall oracle. A required entry additionally accepts every label that an
// optional entry with the exactly equal span admits: if one annotator
// allowed "nothing or l1" on a span and another insisted on l2, producing
// l1 satisfies the span as well.
inline double oracle_recall(const Prediction& pred, const GoldStandard& gold) {
  std::vector<GoldEntry> required;
  for (const auto& g : gold.entries) {
    if (g.optional_no_fallacy) continue;
    GoldEntry eff = g;
    for (const auto& o : gold.entries) {
      if (!o.optional_no_fallacy || !(o.span == g.span)) continue;
      for (const auto& l : o.labels)
        if (!std::count(eff.labels.begin(), eff.labels.end(), l))
          eff.labels.push_back(l);
    }
    required.push_back(std::move(eff));
  }
  if (required.empty()) return 1.0;
  double sum = 0.0;
  for (const GoldEntry& g : required) {
    double best = 0.0;
    for (const auto& p : pred.entries)
      best = std::max(best, pair_score(p, g, g.span.length()));
    sum += best;
  }
  return sum / static_cast<double>(required.size());
}

// Classic set-based precision/recall over (atom, label) decisions. Only
// meaningful when every span is a single atom and every gold set a single
// label; used to check that the overlap metric collapses to the standard one.
inline double set_precision(const Prediction& pred, const GoldStandard& gold) {
  if (pred.entries.empty()) return 1.0;
  std::size_t tp = 0;
  for (const auto& p : pred.entries) {
    for (const auto& g : gold.entries) {
      if (g.span == p.span && admits(g, p.label)) {
        ++tp;
        break;
      }
    }
  }
  return static_cast<double>(tp) / static_cast<double>(pred.entries.size());
}

inline double set_recall(const Prediction& pred, const GoldStandard& gold) {
  std::size_t required = 0, tp = 0;
  for (const auto& g : gold.entries) {
    if (g.optional_no_fallacy) continue;
    ++required;
    for (const auto& p : pred.entries) {
      if (g.span == p.span && admits(g, p.label)) {
        ++tp;
        break;
      }
    }
  }
  if (required == 0) return 1.0;
  return static_cast<double>(tp) / static_cast<double>(required);
}

// Maximal runs of equal values, found by checking every candidate range
// against the definition instead of scanning once.
template <typename T>
std::vector<std::pair<std::size_t, std::size_t>> brute_force_runs(
    const std::vector<T>& xs) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      bool uniform = true;
      for (std::size_t k = i; k < j; ++k)
        if (!(xs[k] == xs[i])) uniform = false;
      const bool left_ok = i == 0 || !(xs[i - 1] == xs[i]);
      const bool right_ok = j == n || !(xs[j] == xs[i]);
      if (uniform && left_ok && right_ok) runs.emplace_back(i, j);
    }
  }
  return runs;
}

// --- Random instance generation -------------------------------------------

struct InstanceConfig {
  std::size_t max_sentences = 6;
  std::size_t max_labels = 4;    // distinct label names drawn from label0..
  std::size_t max_gold = 4;      // entries
  std::size_t max_pred = 4;
  bool singleton_spans = false;  // every span one atom
  bool singleton_sets = false;   // every gold set one label, no "nothing"
  bool allow_optional = true;    // gold sets may include "nothing"
  bool allow_duplicate_preds = true;
};

struct Instance {
  std::size_t sentences = 1;
  GoldStandard gold;
  Prediction pred;
};

inline std::string nth_label(std::size_t i) {
  return "label" + std::to_string(i);
}

inline Instance random_instance(faleval::detail::SplitMix64& rng,
                                const InstanceConfig& cfg) {
  Instance inst;
  inst.sentences = 1 + rng.bounded(cfg.max_sentences);
  const std::size_t labels = 1 + rng.bounded(cfg.max_labels);

  auto random_span = [&] {
    SpanRef s;
    if (cfg.singleton_spans) {
      s.start = rng.bounded(inst.sentences);
      s.end = s.start + 1;
    } else {
      s.start = rng.bounded(inst.sentences);
      s.end = s.start + 1 + rng.bounded(inst.sentences - s.start);
    }
    return s;
  };

  const std::size_t gold_n = rng.bounded(cfg.max_gold + 1);
  for (std::size_t i = 0; i < gold_n; ++i) {
    GoldEntry g;
    g.span = random_span();
    if (cfg.singleton_sets) {
      g.labels.push_back(nth_label(rng.bounded(labels)));
    } else {
      const std::size_t set_n = 1 + rng.bounded(std::min<std::size_t>(labels, 3));
      for (std::size_t k = 0; k < set_n; ++k) {
        std::string l = nth_label(rng.bounded(labels));
        if (!std::count(g.labels.begin(), g.labels.end(), l))
          g.labels.push_back(l);
      }
      if (cfg.allow_optional && rng.bounded(4) == 0)
        g.optional_no_fallacy = true;
    }
    inst.gold.entries.push_back(std::move(g));
  }

  const std::size_t pred_n = rng.bounded(cfg.max_pred + 1);
  for (std::size_t i = 0; i < pred_n; ++i) {
    PredEntry p;
    p.span = random_span();
    p.label = nth_label(rng.bounded(labels));
    if (!cfg.allow_duplicate_preds) {
      bool dup = false;
      for (const auto& q : inst.pred.entries)
        if (q.span == p.span && q.label == p.label) dup = true;
      if (dup) continue;
    }
    inst.pred.entries.push_back(std::move(p));
  }
  return inst;
}

// Conditions under which the best-match and sum-based families provably
// agree: singleton label sets, no optional spans, no same-label overlap
// within either side, and at most one cross-overlapping same-label partner
// per span on either side.
inline bool sum_equivalence_conditions_hold(const Instance& inst) {
  for (const auto& g : inst.gold.entries)
    if (g.labels.size() != 1 || g.optional_no_fallacy) return false;
  const auto& gs = inst.gold.entries;
  const auto& ps = inst.pred.entries;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (gs[i].labels == gs[j].labels && overlap(gs[i].span, gs[j].span) > 0)
        return false;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (ps[i].label == ps[j].label && overlap(ps[i].span, ps[j].span) > 0)
        return false;
  for (const auto& g : gs) {
    std::size_t partners = 0;
    for (const auto& p : ps)
      if (admits(g, p.label) && overlap(g.span, p.span) > 0) ++partners;
    if (partners > 1) return false;
  }
  for (const auto& p : ps) {
    std::size_t partners = 0;
    for (const auto& g : gs)
      if (admits(g, p.label) && overlap(g.span, p.span) > 0) ++partners;
    if (partners > 1) return false;
  }
  return true;
}

}  // namespace faleval::test
