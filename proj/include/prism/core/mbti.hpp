#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "prism/errors.hpp"

namespace prism {

enum class Attitude : uint8_t { E, I };
enum class PerceivingFn : uint8_t { S, N };
enum class JudgingFn : uint8_t { T, F };
enum class Lifestyle : uint8_t { J, P };

// One of the 16 MBTI types, held as its four dichotomy axes so ablation
// switches can read each axis independently.
struct MbtiProfile {
  Attitude attitude = Attitude::E;
  PerceivingFn perceiving_fn = PerceivingFn::S;
  JudgingFn judging_fn = JudgingFn::T;
  Lifestyle lifestyle = Lifestyle::J;

  bool operator==(const MbtiProfile&) const = default;

  std::string code() const {
    std::string s(4, '?');
    s[0] = attitude == Attitude::E ? 'E' : 'I';
    s[1] = perceiving_fn == PerceivingFn::S ? 'S' : 'N';
    s[2] = judging_fn == JudgingFn::T ? 'T' : 'F';
    s[3] = lifestyle == Lifestyle::J ? 'J' : 'P';
    return s;
  }

  // Dense index in [0, 16), stable across runs (E/S/T/J = 0 bits).
  int index() const {
    return (attitude == Attitude::I ? 8 : 0) |
           (perceiving_fn == PerceivingFn::N ? 4 : 0) |
           (judging_fn == JudgingFn::F ? 2 : 0) |
           (lifestyle == Lifestyle::P ? 1 : 0);
  }

  static MbtiProfile from_index(int idx) {
    MbtiProfile p;
    p.attitude = (idx & 8) ? Attitude::I : Attitude::E;
    p.perceiving_fn = (idx & 4) ? PerceivingFn::N : PerceivingFn::S;
    p.judging_fn = (idx & 2) ? JudgingFn::F : JudgingFn::T;
    p.lifestyle = (idx & 1) ? Lifestyle::P : Lifestyle::J;
    return p;
  }
};

inline MbtiProfile parse_mbti(std::string_view code) {
  if (code.size() != 4) {
    throw DomainError("mbti code must be 4 letters, got \"" + std::string(code) + "\"");
  }
  auto up = [](char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); };
  auto bad = [&](int pos) -> DomainError {
    return DomainError("invalid mbti letter '" + std::string(1, code[pos - 1]) +
                       "' at position " + std::to_string(pos) + " in \"" + std::string(code) + "\"");
  };
  MbtiProfile p;
  switch (up(code[0])) {
    case 'E': p.attitude = Attitude::E; break;
    case 'I': p.attitude = Attitude::I; break;
    default: throw bad(1);
  }
  switch (up(code[1])) {
    case 'S': p.perceiving_fn = PerceivingFn::S; break;
    case 'N': p.perceiving_fn = PerceivingFn::N; break;
    default: throw bad(2);
  }
  switch (up(code[2])) {
    case 'T': p.judging_fn = JudgingFn::T; break;
    case 'F': p.judging_fn = JudgingFn::F; break;
    default: throw bad(3);
  }
  switch (up(code[3])) {
    case 'J': p.lifestyle = Lifestyle::J; break;
    case 'P': p.lifestyle = Lifestyle::P; break;
    default: throw bad(4);
  }
  return p;
}

// All 16 profiles in index order.
inline const std::array<MbtiProfile, 16>& all_mbti_profiles() {
  static const std::array<MbtiProfile, 16> profiles = [] {
    std::array<MbtiProfile, 16> a{};
    for (int i = 0; i < 16; ++i) a[i] = MbtiProfile::from_index(i);
    return a;
  }();
  return profiles;
}

}  // namespace prism
