#pragma once

// Hand-computed edge-case catalog for the disjunctive span metrics. Every
// case scores one small prediction against one small gold standard on a
// three-sentence document; expected values were worked out by hand from the
// metric definitions and are exact binary fractions except 2/3.
//
// Families:
//   0.*  optional first span plus two required ones
//   1.*  a single optional span
//   2.*  a single required span
//   3.*  empty gold standard
//   4.*  one optional and one required span, disjoint
//   5.*  a single optional two-sentence span
//   6.*  optional two-sentence span overlapping a required one
//   7.*  two required spans that overlap
//   8.*  distinct labels of one category, scored after projection (level 1/0)
//   9.*  same span required and optional at once, projected (level 1/0)
//  10.*  same span carrying two required labels
//  11.*  same span required with one label, optional with another
//
// Cases 8.* and 9.* hold at level 1 and level 0 alike (their two labels
// share a category, so both projections merge them); all others hold at
// level 2.

#include <string>
#include <vector>

#include "faleval/annotation.hpp"

namespace faleval::test {

struct GoldenCase {
  std::string id;
  int level;
  GoldStandard gold;
  Prediction pred;
  double recall;
  double precision;
};

inline const std::vector<GoldenCase>& golden_cases() {
  // Two labels from one category (emotion) so projection merges them, plus
  // two from elsewhere that stay distinct at every level.
  static const std::string A = "appeal to fear";    // emotion
  static const std::string B = "appeal to pity";    // emotion
  static const std::string C = "ad populum";        // credibility
  static const std::string D = "equivocation";      // logic

  static const auto span = [](std::size_t a, std::size_t b) {
    return SpanRef{a, b};
  };
  static const auto gold = [](SpanRef s, std::vector<std::string> ls,
                              bool optional = false) {
    return GoldEntry{s, std::move(ls), optional};
  };
  static const auto pred = [](SpanRef s, std::string l) {
    return PredEntry{s, std::move(l)};
  };

  static const std::vector<GoldenCase> cases = [] {
    std::vector<GoldenCase> v;
    const SpanRef s0 = span(0, 1), s1 = span(1, 2), s2 = span(2, 3);
    const SpanRef s01 = span(0, 2);

    const GoldStandard g0{{gold(s0, {A}, true), gold(s1, {B}), gold(s2, {C})}};
    v.push_back({"0.1", 2, g0, {{pred(s1, B)}}, 0.5, 1.0});
    v.push_back({"0.2", 2, g0, {{pred(s0, A), pred(s1, B)}}, 0.5, 1.0});
    v.push_back({"0.3", 2, g0, {{pred(s1, B), pred(s2, D)}}, 0.5, 0.5});
    v.push_back({"0.4", 2, g0, {{pred(s0, A), pred(s1, B), pred(s2, D)}}, 0.5,
                 2.0 / 3.0});

    const GoldStandard g1{{gold(s0, {A}, true)}};
    v.push_back({"1.1", 2, g1, {{pred(s0, A)}}, 1.0, 1.0});
    v.push_back({"1.2", 2, g1, {{pred(s0, C)}}, 1.0, 0.0});
    v.push_back({"1.3", 2, g1, {}, 1.0, 1.0});
    v.push_back({"1.4", 2, g1, {{pred(s1, A)}}, 1.0, 0.0});
    v.push_back({"1.5", 2, g1, {{pred(s01, C)}}, 1.0, 0.0});

    const GoldStandard g2{{gold(s0, {A})}};
    v.push_back({"2.1", 2, g2, {{pred(s0, A)}}, 1.0, 1.0});
    v.push_back({"2.2", 2, g2, {{pred(s0, C)}}, 0.0, 0.0});
    v.push_back({"2.3", 2, g2, {{pred(s1, A)}}, 0.0, 0.0});
    v.push_back({"2.4", 2, g2, {}, 0.0, 1.0});

    const GoldStandard g3{};
    v.push_back({"3.1", 2, g3, {{pred(s0, A)}}, 1.0, 0.0});
    v.push_back({"3.2", 2, g3, {}, 1.0, 1.0});

    const GoldStandard g4{{gold(s0, {A}, true), gold(s1, {B})}};
    v.push_back({"4.1", 2, g4, {{pred(s0, A)}}, 0.0, 1.0});
    v.push_back({"4.2", 2, g4, {{pred(s0, C)}}, 0.0, 0.0});
    v.push_back({"4.3", 2, g4, {{pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"4.4", 2, g4, {{pred(s1, C)}}, 0.0, 0.0});

    const GoldStandard g5{{gold(s01, {A}, true)}};
    v.push_back({"5.1", 2, g5, {{pred(s01, A)}}, 1.0, 1.0});
    v.push_back({"5.2", 2, g5, {}, 1.0, 1.0});
    v.push_back({"5.3", 2, g5, {{pred(s0, A)}}, 1.0, 1.0});
    v.push_back({"5.4", 2, g5, {{pred(s01, C)}}, 1.0, 0.0});
    v.push_back({"5.5", 2, g5, {{pred(s1, C)}}, 1.0, 0.0});

    const GoldStandard g6{{gold(s01, {A}, true), gold(s1, {B})}};
    v.push_back({"6.1", 2, g6, {{pred(s01, A), pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"6.2", 2, g6, {{pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"6.3", 2, g6, {{pred(s01, A)}}, 0.0, 1.0});
    v.push_back({"6.4", 2, g6, {}, 0.0, 1.0});
    v.push_back({"6.5", 2, g6, {{pred(s0, A), pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"6.6", 2, g6, {{pred(s0, A)}}, 0.0, 1.0});
    v.push_back({"6.7", 2, g6, {{pred(s1, C)}}, 0.0, 0.0});

    const GoldStandard g7{{gold(s01, {A}), gold(s1, {B})}};
    v.push_back({"7.1", 2, g7, {{pred(s01, A), pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"7.2", 2, g7, {{pred(s1, B)}}, 0.5, 1.0});
    v.push_back({"7.3", 2, g7, {{pred(s01, A)}}, 0.5, 1.0});
    v.push_back({"7.4", 2, g7, {}, 0.0, 1.0});
    v.push_back({"7.5", 2, g7, {{pred(s0, A), pred(s1, B)}}, 0.75, 1.0});
    v.push_back({"7.6", 2, g7, {{pred(s0, A)}}, 0.25, 1.0});
    v.push_back({"7.7", 2, g7, {{pred(s1, C)}}, 0.0, 0.0});

    // Both gold labels are emotion, so at level 1/0 they read "same label".
    const GoldStandard g8{{gold(s01, {A}), gold(s1, {B})}};
    v.push_back({"8.1", 1, g8, {{pred(s01, A), pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"8.2", 1, g8, {{pred(s1, B)}}, 0.75, 1.0});
    v.push_back({"8.3", 1, g8, {{pred(s01, A)}}, 1.0, 1.0});
    v.push_back({"8.4", 1, g8, {{pred(s1, A), pred(s1, B)}}, 0.75, 0.5});
    v.push_back({"8.5", 1, g8, {{pred(s0, A), pred(s1, B)}}, 0.75, 1.0});
    v.push_back({"8.6", 1, g8, {{pred(s0, A)}}, 0.25, 1.0});
    v.push_back({"8.7", 1, g8, {{pred(s0, B)}}, 0.25, 1.0});

    const GoldStandard g9{{gold(s1, {A}, true), gold(s1, {B})}};
    v.push_back({"9.1", 1, g9, {{pred(s1, A), pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"9.2", 1, g9, {{pred(s1, A)}}, 1.0, 1.0});
    v.push_back({"9.3", 1, g9, {{pred(s1, B)}}, 1.0, 1.0});
    v.push_back({"9.4", 1, g9, {{pred(s01, A)}}, 1.0, 0.5});
    v.push_back({"9.5", 1, g9, {}, 0.0, 1.0});
    v.push_back({"9.6", 1, g9, {{pred(s0, A)}}, 0.0, 0.0});

    const GoldStandard g10{{gold(s0, {A}), gold(s0, {B})}};
    v.push_back({"10.1", 2, g10, {{pred(s0, A)}}, 0.5, 1.0});
    v.push_back({"10.2", 2, g10, {{pred(s0, C)}}, 0.0, 0.0});
    v.push_back({"10.3", 2, g10, {{pred(s1, A)}}, 0.0, 0.0});
    v.push_back({"10.4", 2, g10, {}, 0.0, 1.0});
    v.push_back({"10.5", 2, g10, {{pred(s0, A), pred(s0, B)}}, 1.0, 1.0});

    // The optional twin makes producing its label count for the required one.
    const GoldStandard g11{{gold(s0, {A}, true), gold(s0, {B})}};
    v.push_back({"11.1", 2, g11, {{pred(s0, A)}}, 1.0, 1.0});
    v.push_back({"11.2", 2, g11, {{pred(s0, C)}}, 0.0, 0.0});
    v.push_back({"11.3", 2, g11, {{pred(s1, A)}}, 0.0, 0.0});
    v.push_back({"11.4", 2, g11, {}, 0.0, 1.0});
    v.push_back({"11.5", 2, g11, {{pred(s0, A), pred(s0, B)}}, 1.0, 1.0});
    return v;
  }();
  return cases;
}

// The three-sentence document every case runs on.
inline Document golden_document(std::string doc_id) {
  Document d;
  d.doc_id = std::move(doc_id);
  d.sentences = {"Lorem ipsum dolor sit amet.", "Ut enim ad minim veniam.",
                 "Sed do eiusmod tempor incididunt."};
  return d;
}

}  // namespace faleval::test
