#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "prism/core/types.hpp"
#include "prism/policy/lexicon.hpp"

namespace prism {

struct AnalyzedMessage {
  ValenceArousal va;
  double y = 0.0;
};

namespace detail {
inline std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string> word_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char raw : text) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c) || raw == '_') {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}
}  // namespace detail

// The analyzer Phi: case-insensitive whole-word matching of lexicon terms;
// every matched occurrence contributes its label's VA anchor. No matches
// yields the neutral ((0,0), 0). The opinion observation is the valence.
inline AnalyzedMessage analyze_message(const std::string& text, const EmotionLexicon& lexicon) {
  AnalyzedMessage out;
  double sum_v = 0.0, sum_a = 0.0;
  std::size_t matches = 0;

  const auto tokens = detail::word_tokens(text);
  for (const auto& token : tokens) {
    for (std::size_t k = 0; k < lexicon.size(); ++k) {
      const auto& entry = lexicon.at(k);
      for (const auto& term : entry.terms) {
        if (token == detail::lower(term)) {
          sum_v += entry.anchor.valence;
          sum_a += entry.anchor.arousal;
          ++matches;
        }
      }
    }
  }
  if (matches > 0) {
    out.va.valence = sum_v / static_cast<double>(matches);
    out.va.arousal = sum_a / static_cast<double>(matches);
    out.y = out.va.valence;
  }
  return out;
}

}  // namespace prism
