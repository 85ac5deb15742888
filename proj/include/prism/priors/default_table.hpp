#pragma once

#include "prism/priors/priors.hpp"

namespace prism {

// Shipped per-type baseline distributions over the default vocabulary
// {neutral, happy, consoling, frustration, anger, fear}. Authored values on
// the 0.05 grid: Thinking rows concentrate on neutral, Feeling rows spread
// mass over happy/consoling, and ET rows carry extra frustration/anger.
inline PriorTable default_prior_table() {
  struct Row {
    const char* code;
    std::array<double, 6> dist;
  };
  static constexpr Row kRows[] = {
      {"ISTJ", {0.40, 0.10, 0.10, 0.15, 0.15, 0.10}},
      {"ISTP", {0.40, 0.10, 0.05, 0.15, 0.15, 0.15}},
      {"INTJ", {0.40, 0.10, 0.10, 0.15, 0.10, 0.15}},
      {"INTP", {0.35, 0.15, 0.10, 0.15, 0.10, 0.15}},
      {"ESTJ", {0.30, 0.10, 0.05, 0.25, 0.20, 0.10}},
      {"ESTP", {0.30, 0.15, 0.05, 0.20, 0.20, 0.10}},
      {"ENTJ", {0.30, 0.10, 0.05, 0.25, 0.20, 0.10}},
      {"ENTP", {0.30, 0.15, 0.10, 0.20, 0.15, 0.10}},
      {"ISFJ", {0.20, 0.20, 0.25, 0.10, 0.05, 0.20}},
      {"ISFP", {0.20, 0.25, 0.20, 0.10, 0.05, 0.20}},
      {"INFJ", {0.15, 0.20, 0.25, 0.10, 0.10, 0.20}},
      {"INFP", {0.15, 0.25, 0.20, 0.10, 0.10, 0.20}},
      {"ESFJ", {0.15, 0.25, 0.25, 0.10, 0.10, 0.15}},
      {"ESFP", {0.10, 0.30, 0.20, 0.15, 0.10, 0.15}},
      {"ENFJ", {0.10, 0.25, 0.25, 0.15, 0.10, 0.15}},
      {"ENFP", {0.10, 0.30, 0.20, 0.15, 0.10, 0.15}},
  };

  PriorTable table;
  table.labels = default_vocabulary().labels();
  for (const Row& row : kRows) {
    const int idx = parse_mbti(row.code).index();
    PriorEntry entry;
    entry.distribution.assign(row.dist.begin(), row.dist.end());
    entry.entropy_bits = affective_entropy(entry.distribution);
    entry.support_count = 0;  // authored, not estimated
    table.entries[idx] = entry;
  }
  return table;
}

}  // namespace prism
