#pragma once

#include <string>
#include <vector>

#include "prism/errors.hpp"

namespace prism {

// One emotion label with its valence-arousal anchor. The anchors are the
// single source of truth shared by the susceptibility column map, the
// message analyzer and the sentiment score.
struct EmotionAnchor {
  std::string label;
  double valence = 0.0;  // [-1, 1]
  double arousal = 0.0;  // [0, 1]
};

class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<EmotionAnchor> anchors) : anchors_(std::move(anchors)) {
    if (anchors_.empty()) throw ConfigError("emotion vocabulary must not be empty");
    for (const auto& a : anchors_) {
      if (a.label.empty()) throw ConfigError("emotion label must not be empty");
      if (a.valence < -1.0 || a.valence > 1.0)
        throw ConfigError("valence anchor for \"" + a.label + "\" outside [-1,1]");
      if (a.arousal < 0.0 || a.arousal > 1.0)
        throw ConfigError("arousal anchor for \"" + a.label + "\" outside [0,1]");
      for (const auto& b : anchors_) {
        if (&a != &b && a.label == b.label)
          throw ConfigError("duplicate emotion label \"" + a.label + "\"");
      }
    }
  }

  std::size_t size() const { return anchors_.size(); }
  const EmotionAnchor& at(std::size_t k) const { return anchors_.at(k); }
  const std::vector<EmotionAnchor>& anchors() const { return anchors_; }

  // -1 when the label is unknown.
  int index_of(const std::string& label) const {
    for (std::size_t k = 0; k < anchors_.size(); ++k)
      if (anchors_[k].label == label) return static_cast<int>(k);
    return -1;
  }

  std::vector<double> valences() const {
    std::vector<double> v(anchors_.size());
    for (std::size_t k = 0; k < anchors_.size(); ++k) v[k] = anchors_[k].valence;
    return v;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> l(anchors_.size());
    for (std::size_t k = 0; k < anchors_.size(); ++k) l[k] = anchors_[k].label;
    return l;
  }

 private:
  std::vector<EmotionAnchor> anchors_;
};

// Shipped K=6 vocabulary. Neutral anchors at (0,0) so impulses never push
// mass onto it directly.
inline Vocabulary default_vocabulary() {
  return Vocabulary({
      {"neutral", 0.0, 0.0},
      {"happy", 0.8, 0.6},
      {"consoling", 0.6, 0.3},
      {"frustration", -0.6, 0.7},
      {"anger", -0.8, 0.9},
      {"fear", -0.7, 0.8},
  });
}

}  // namespace prism
