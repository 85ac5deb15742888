#pragma once

#include <string>
#include <vector>

#include "prism/core/vocabulary.hpp"
#include "prism/errors.hpp"

namespace prism {

// Per-emotion grounding for message synthesis and analysis: the VA anchor,
// phrase templates for the stochastic policy ({topic} is substituted), and
// whole-word terms the analyzer matches in free text.
struct LexiconEntry {
  EmotionAnchor anchor;
  std::vector<std::string> templates;
  std::vector<std::string> terms;
};

class EmotionLexicon {
 public:
  EmotionLexicon() = default;

  EmotionLexicon(Vocabulary vocab, std::vector<LexiconEntry> entries)
      : vocab_(std::move(vocab)), entries_(std::move(entries)) {
    if (entries_.size() != vocab_.size()) {
      throw ConfigError("lexicon must cover the full configured vocabulary");
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (entries_[k].anchor.label != vocab_.at(k).label) {
        throw ConfigError("lexicon entry " + std::to_string(k) + " does not match vocabulary order");
      }
      if (entries_[k].templates.empty() || entries_[k].terms.empty()) {
        throw ConfigError("lexicon entry \"" + entries_[k].anchor.label +
                          "\" needs at least one template and one term");
      }
    }
  }

  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t size() const { return entries_.size(); }
  const LexiconEntry& at(std::size_t k) const { return entries_.at(k); }
  std::vector<double> valences() const { return vocab_.valences(); }

 private:
  Vocabulary vocab_;
  std::vector<LexiconEntry> entries_;
};

// Generic lexicon for custom vocabularies: one bland template per label and
// the label itself as the only term.
inline EmotionLexicon generic_lexicon(const Vocabulary& vocab) {
  std::vector<LexiconEntry> entries;
  entries.reserve(vocab.size());
  for (const auto& anchor : vocab.anchors()) {
    entries.push_back({anchor,
                       {"Feeling " + anchor.label + " about {topic}."},
                       {anchor.label}});
  }
  return EmotionLexicon(vocab, std::move(entries));
}

// Shipped lexicon for the default vocabulary. Terms are disjoint across
// labels so the analyzer's matches are unambiguous.
inline EmotionLexicon default_lexicon() {
  Vocabulary vocab = default_vocabulary();
  std::vector<LexiconEntry> entries = {
      {vocab.at(0),
       {"Noted. Keeping an eye on {topic}.", "No strong view on {topic} yet, staying neutral.",
        "Observing {topic} for now."},
       {"neutral", "noted", "observing", "fine"}},
      {vocab.at(1),
       {"Honestly this is great news about {topic}!", "So glad to see {topic} turning out well.",
        "I love where {topic} is heading."},
       {"happy", "great", "glad", "love", "wonderful"}},
      {vocab.at(2),
       {"Stay safe everyone, we can get through {topic} together.",
        "Sending support to anyone hit by {topic}.",
        "Take comfort, we will handle {topic} as a community."},
       {"consoling", "support", "together", "safe", "comfort"}},
      {vocab.at(3),
       {"So frustrating how {topic} is being handled.",
        "This back-and-forth on {topic} is getting annoying.", "Ugh, {topic} again? Ridiculous."},
       {"frustration", "frustrating", "annoying", "ridiculous", "ugh"}},
      {vocab.at(4),
       {"This is outrageous. {topic} is a disgrace.", "I am furious about {topic}.",
        "Absolutely unacceptable how {topic} was handled."},
       {"anger", "angry", "furious", "outrageous", "unacceptable", "disgrace"}},
      {vocab.at(5),
       {"I am scared about what {topic} means for us.", "Honestly {topic} is terrifying.",
        "Really worried that {topic} gets worse from here."},
       {"fear", "afraid", "scared", "terrifying", "worried", "panic"}},
  };
  return EmotionLexicon(std::move(vocab), std::move(entries));
}

}  // namespace prism
