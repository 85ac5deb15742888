#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prism/core/types.hpp"
#include "prism/engine/rng.hpp"
#include "prism/errors.hpp"
#include "prism/policy/context.hpp"
#include "prism/policy/lexicon.hpp"

namespace prism {

// Every policy maps a context to a message or throws PolicyError; the engine
// turns policy errors into Silence and logs the incident. The engine fills
// Message::t.
class MessagePolicy {
 public:
  virtual ~MessagePolicy() = default;
  virtual std::string name() const = 0;
  virtual Message generate(const std::string& speaker_id, const PolicyContext& ctx,
                           SubstreamRng& rng) = 0;
};

struct ScriptEntry {
  std::string text;
  ValenceArousal va;
  double y = 0.0;
};

// Replays pre-annotated messages verbatim, one per call per agent. Used by
// tests and reproducible scenarios.
class ScriptedPolicy final : public MessagePolicy {
 public:
  explicit ScriptedPolicy(std::map<std::string, std::vector<ScriptEntry>> scripts)
      : scripts_(std::move(scripts)) {}

  std::string name() const override { return "scripted"; }

  Message generate(const std::string& speaker_id, const PolicyContext& ctx,
                   SubstreamRng& /*rng*/) override {
    (void)ctx;
    auto it = scripts_.find(speaker_id);
    if (it == scripts_.end()) {
      throw PolicyError("no script for agent \"" + speaker_id + "\"");
    }
    std::size_t& cursor = cursors_[speaker_id];
    if (cursor >= it->second.size()) {
      throw PolicyError("script exhausted for agent \"" + speaker_id + "\"");
    }
    const ScriptEntry& entry = it->second[cursor++];
    Message msg;
    msg.speaker_id = speaker_id;
    msg.text = entry.text;
    msg.va = entry.va;
    msg.y = entry.y;
    return msg;
  }

 private:
  std::map<std::string, std::vector<ScriptEntry>> scripts_;
  std::map<std::string, std::size_t> cursors_;
};

// Offline default: samples an emotion label from the agent's current state,
// emits a lexicon template for it, and perturbs the opinion observation by a
// valence-scaled jitter. Fully determined by the RNG substream.
class StochasticPolicy final : public MessagePolicy {
 public:
  StochasticPolicy(EmotionLexicon lexicon, double y_perturb_scale = 0.1)
      : lexicon_(std::move(lexicon)), y_perturb_scale_(y_perturb_scale) {
    if (y_perturb_scale_ < 0.0) throw ConfigError("y_perturb_scale must be >= 0");
  }

  std::string name() const override { return "stochastic"; }

  Message generate(const std::string& speaker_id, const PolicyContext& ctx,
                   SubstreamRng& rng) override {
    const std::size_t label = rng.categorical(ctx.emotion.components());
    const LexiconEntry& entry = lexicon_.at(label);

    const std::size_t t_idx =
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(entry.templates.size())) %
        entry.templates.size();
    std::string text = entry.templates[t_idx];
    const std::string placeholder = "{topic}";
    for (std::size_t pos = text.find(placeholder); pos != std::string::npos;
         pos = text.find(placeholder, pos)) {
      text.replace(pos, placeholder.size(), ctx.topic);
      pos += ctx.topic.size();
    }

    Message msg;
    msg.speaker_id = speaker_id;
    msg.text = std::move(text);
    msg.va = {entry.anchor.valence, entry.anchor.arousal};
    const double jitter = y_perturb_scale_ * entry.anchor.valence * rng.uniform();
    msg.y = std::clamp(ctx.belief_mean + jitter, -1.0, 1.0);
    return msg;
  }

 private:
  EmotionLexicon lexicon_;
  double y_perturb_scale_;
};

}  // namespace prism
