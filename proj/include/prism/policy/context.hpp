#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "prism/core/mbti.hpp"
#include "prism/core/types.hpp"
#include "prism/core/vocabulary.hpp"

namespace prism {

// Immutable snapshot handed to a policy: the bounded history window, the
// current (projected) emotional state, the persona, the opinion belief and
// the discussion topic.
struct PolicyContext {
  std::vector<Message> history;  // already truncated to the window
  EmotionVector emotion;
  MbtiProfile profile;
  double belief_mean = 0.0;
  std::string topic;
};

// Fixed per-type style instruction blocks. Authored from the usual archetype
// sketches; each block names its code so all 16 are pairwise distinct.
inline const std::string& style_block(const MbtiProfile& profile) {
  static const std::array<std::string, 16> blocks = [] {
    std::array<std::string, 16> b{};
    auto set = [&](const char* code, const std::string& text) {
      b[parse_mbti(code).index()] = text;
    };
    set("ESTJ", "You are ESTJ: a blunt organizer. Be assertive and directive, push for concrete action, low patience for vagueness. Medium-length, declarative sentences.");
    set("ESTP", "You are ESTP: a fast-moving pragmatist. React quickly, favor bold concrete moves, keep it punchy and informal.");
    set("ESFJ", "You are ESFJ: a warm coordinator. Be sociable and encouraging, check on others, keep the group aligned. Friendly, chatty tone.");
    set("ESFP", "You are ESFP: an upbeat performer. Be expressive and spontaneous, lighten the mood, speak in vivid informal bursts.");
    set("ENTJ", "You are ENTJ: a commanding strategist. Argue from efficiency, state conclusions first, challenge weak reasoning directly. Assertive and terse.");
    set("ENTP", "You are ENTP: a provocative debater. Poke holes in claims, raise contrarian what-ifs, enjoy the argument. Quick, clever, slightly combative.");
    set("ENFJ", "You are ENFJ: an empathetic mobilizer. Rally people around shared values, acknowledge feelings before facts, speak warmly and fluently.");
    set("ENFP", "You are ENFP: an enthusiastic idealist. Brainstorm out loud, connect ideas, express emotion openly. Energetic and digressive.");
    set("ISTJ", "You are ISTJ: a methodical record-keeper. Stick to verified facts, cite specifics, avoid emotional language. Short, measured sentences.");
    set("ISTP", "You are ISTP: a detached troubleshooter. Comment only when something concrete needs fixing, minimal words, dry tone.");
    set("ISFJ", "You are ISFJ: a quiet caretaker. Reassure gently, recall practical details that help others, modest and polite phrasing.");
    set("ISFP", "You are ISFP: a soft-spoken observer. Share personal impressions rather than arguments, gentle and understated.");
    set("INTJ", "You are INTJ: a reserved systems thinker. Offer structural analysis, long-range implications, little small talk. Precise and impersonal.");
    set("INTP", "You are INTP: an analytical skeptic. Dissect definitions and logic, qualify claims carefully, tangents welcome. Detached tone.");
    set("INFJ", "You are INFJ: a principled counselor. Interpret what events mean for people, speak carefully and sincerely, seek common ground.");
    set("INFP", "You are INFP: a gentle mediator. Defend values over facts, soothe conflict, reflective and earnest phrasing.");
    return b;
  }();
  return blocks[profile.index()];
}

namespace detail {
inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}
inline std::string signed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f", v);
  return buf;
}
}  // namespace detail

// Deterministic prompt document: serialized history window, then the state
// section (top-2 emotion labels with intensities, topic, opinion), then the
// persona block. Identical inputs produce byte-identical output.
inline std::string assemble_context(const PolicyContext& ctx, const Vocabulary& vocab) {
  std::string doc;

  if (!ctx.history.empty()) {
    doc += "[history]\n";
    for (const auto& msg : ctx.history) {
      doc += msg.speaker_id;
      doc += ": ";
      doc += msg.text;
      doc += "\n";
    }
  }

  // Top-2 nonzero components, mass descending, vocabulary order on ties.
  std::vector<std::size_t> order(vocab.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ctx.emotion[a] > ctx.emotion[b];
  });
  doc += "[state] topic: " + ctx.topic + "; feeling: ";
  std::size_t shown = 0;
  for (std::size_t i = 0; i < order.size() && shown < 2; ++i) {
    const double mass = ctx.emotion[order[i]];
    if (mass <= 0.0) break;
    if (shown) doc += ", ";
    doc += vocab.at(order[i]).label + " (" + detail::fixed2(mass) + ")";
    ++shown;
  }
  doc += "; opinion: " + detail::signed2(ctx.belief_mean) + "\n";

  doc += "[persona] " + style_block(ctx.profile) + "\n";
  return doc;
}

}  // namespace prism
