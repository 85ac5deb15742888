#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "prism/core/mbti.hpp"
#include "prism/core/params.hpp"
#include "prism/core/types.hpp"
#include "prism/core/vocabulary.hpp"

using namespace prism;

TEST_CASE("parse_mbti maps letters to axes") {
  const MbtiProfile entj = parse_mbti("ENTJ");
  CHECK(entj.attitude == Attitude::E);
  CHECK(entj.perceiving_fn == PerceivingFn::N);
  CHECK(entj.judging_fn == JudgingFn::T);
  CHECK(entj.lifestyle == Lifestyle::J);

  const MbtiProfile istp = parse_mbti("istp");
  CHECK(istp.attitude == Attitude::I);
  CHECK(istp.perceiving_fn == PerceivingFn::S);
  CHECK(istp.judging_fn == JudgingFn::T);
  CHECK(istp.lifestyle == Lifestyle::P);
}

TEST_CASE("parse_mbti rejects invalid letters naming the position") {
  CHECK_THROWS_WITH(parse_mbti("ENTX"), Catch::Matchers::ContainsSubstring("position 4"));
  CHECK_THROWS_WITH(parse_mbti("XNTJ"), Catch::Matchers::ContainsSubstring("position 1"));
  CHECK_THROWS_WITH(parse_mbti("EXTJ"), Catch::Matchers::ContainsSubstring("position 2"));
  CHECK_THROWS_WITH(parse_mbti("ENXJ"), Catch::Matchers::ContainsSubstring("position 3"));
  CHECK_THROWS_AS(parse_mbti("EN"), DomainError);
  CHECK_THROWS_AS(parse_mbti("ENTJP"), DomainError);
}

TEST_CASE("parse round-trips the code on all 16 types") {
  std::set<std::string> codes;
  for (const auto& profile : all_mbti_profiles()) {
    const std::string code = profile.code();
    codes.insert(code);
    CHECK(parse_mbti(code) == profile);
    CHECK(MbtiProfile::from_index(profile.index()) == profile);
  }
  CHECK(codes.size() == 16);
}

TEST_CASE("EmotionVector enforces the simplex invariant") {
  CHECK_NOTHROW(EmotionVector({0.5, 0.3, 0.2}));
  CHECK_THROWS_AS(EmotionVector({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(EmotionVector({0.7, -0.2, 0.5}), DomainError);
  const EmotionVector u = EmotionVector::uniform(4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(u[i] == Catch::Approx(0.25));
}

TEST_CASE("SocialGraph rejects self-loops and bad weights") {
  SocialGraph g(3);
  CHECK_NOTHROW(g.add_edge(0, 1, 0.5));
  CHECK_THROWS_AS(g.add_edge(1, 1, 0.5), ConfigError);
  CHECK_THROWS_AS(g.add_edge(0, 2, 1.5), ConfigError);
  CHECK_THROWS_AS(g.add_edge(0, 5, 0.5), ConfigError);
  CHECK(g.weight(0, 1) == 0.5);
  CHECK(g.weight(1, 0) == 0.0);
}

namespace {
DynamicsDefaults shipped() { return DynamicsDefaults{}; }
}  // namespace

TEST_CASE("synthesize_params applies the dichotomy multipliers") {
  const Vocabulary vocab = default_vocabulary();

  SECTION("stiffness: J above P on matched pairs") {
    const AgentParams intj = synthesize_params(parse_mbti("INTJ"), shipped(), vocab);
    const AgentParams intp = synthesize_params(parse_mbti("INTP"), shipped(), vocab);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      CHECK(intj.theta_diag[i] > intp.theta_diag[i]);
    }
  }

  SECTION("susceptibility: F spectral norm above T") {
    const AgentParams enfj = synthesize_params(parse_mbti("ENFJ"), shipped(), vocab);
    const AgentParams entj = synthesize_params(parse_mbti("ENTJ"), shipped(), vocab);
    CHECK(psi_spectral_norm(enfj.psi) > psi_spectral_norm(entj.psi));
  }

  SECTION("threshold: I above E") {
    const AgentParams istj = synthesize_params(parse_mbti("ISTJ"), shipped(), vocab);
    const AgentParams estj = synthesize_params(parse_mbti("ESTJ"), shipped(), vocab);
    CHECK(istj.gamma > estj.gamma);
  }

  SECTION("uniform baseline without priors, prior baseline when given") {
    const AgentParams p = synthesize_params(parse_mbti("ENTJ"), shipped(), vocab);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      CHECK(p.mu[i] == Catch::Approx(1.0 / 6.0));
    }
    const EmotionVector mu({0.5, 0.1, 0.1, 0.1, 0.1, 0.1});
    const AgentParams q = synthesize_params(parse_mbti("ENTJ"), shipped(), vocab, &mu);
    CHECK(q.mu == mu);
  }

  SECTION("non-positive bases are config errors") {
    DynamicsDefaults bad = shipped();
    bad.theta0 = 0.0;
    CHECK_THROWS_AS(synthesize_params(parse_mbti("ENTJ"), bad, vocab), ConfigError);
    bad = shipped();
    bad.psi0 = -0.1;
    CHECK_THROWS_AS(synthesize_params(parse_mbti("ENTJ"), bad, vocab), ConfigError);
  }

  SECTION("multiplier misordering is a config error") {
    DynamicsDefaults bad = shipped();
    bad.jp = {0.7, 1.5};  // m_P > m_J
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
}

TEST_CASE("synthesize_params is pure") {
  const Vocabulary vocab = default_vocabulary();
  const AgentParams a = synthesize_params(parse_mbti("INFP"), shipped(), vocab);
  const AgentParams b = synthesize_params(parse_mbti("INFP"), shipped(), vocab);
  CHECK(a.theta_diag == b.theta_diag);
  CHECK(a.sigma_diag == b.sigma_diag);
  CHECK(a.psi == b.psi);
  CHECK(a.gamma == b.gamma);
  CHECK(a.mu == b.mu);
}

TEST_CASE("orderings hold across the full type enumeration") {
  const Vocabulary vocab = default_vocabulary();
  std::vector<AgentParams> params;
  for (const auto& profile : all_mbti_profiles()) {
    params.push_back(synthesize_params(profile, shipped(), vocab));
  }

  SECTION("every (F, T) pair satisfies the spectral norm ordering") {
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        const auto pi = MbtiProfile::from_index(i);
        const auto pj = MbtiProfile::from_index(j);
        if (pi.judging_fn == JudgingFn::F && pj.judging_fn == JudgingFn::T) {
          CHECK(psi_spectral_norm(params[i].psi) > psi_spectral_norm(params[j].psi));
        }
      }
    }
  }

  SECTION("matched (J, P) pairs satisfy the stiffness ordering") {
    for (int i = 0; i < 16; ++i) {
      const auto profile = MbtiProfile::from_index(i);
      if (profile.lifestyle != Lifestyle::J) continue;
      MbtiProfile partner = profile;
      partner.lifestyle = Lifestyle::P;
      const auto& theta_j = params[i].theta_diag;
      const auto& theta_p = params[partner.index()].theta_diag;
      const double min_j = *std::min_element(theta_j.begin(), theta_j.end());
      const double max_p = *std::max_element(theta_p.begin(), theta_p.end());
      CHECK(min_j > max_p);
    }
  }
}

TEST_CASE("psi_spectral_norm matches the closed 2x2 case") {
  // Psi = [[3, 0], [0, 4]]: Gram = diag(9, 16), norm 4.
  std::vector<std::array<double, 2>> psi = {{3.0, 0.0}, {0.0, 4.0}};
  CHECK(psi_spectral_norm(psi) == Catch::Approx(4.0));
  // Rank-one Psi = [[1, 1], [1, 1]]: norm 2.
  psi = {{1.0, 1.0}, {1.0, 1.0}};
  CHECK(psi_spectral_norm(psi) == Catch::Approx(2.0));
}

TEST_CASE("neutralize_axes replaces a pair with its geometric mean") {
  const DynamicsDefaults base = shipped();
  const DynamicsDefaults cut = neutralize_axes(base, {DichotomyAxis::TF});
  CHECK(cut.tf.first == Catch::Approx(std::sqrt(base.tf.first * base.tf.second)));
  CHECK(cut.tf.first == cut.tf.second);
  CHECK(cut.jp.first == base.jp.first);  // other axes untouched

  const Vocabulary vocab = default_vocabulary();
  const double n_f = psi_spectral_norm(synthesize_params(parse_mbti("INFP"), cut, vocab).psi);
  const double n_t = psi_spectral_norm(synthesize_params(parse_mbti("ESTJ"), cut, vocab).psi);
  CHECK(n_f == Catch::Approx(n_t).margin(1e-12));
}

TEST_CASE("parse_axis accepts both spellings") {
  CHECK(parse_axis("TF") == DichotomyAxis::TF);
  CHECK(parse_axis("T/F") == DichotomyAxis::TF);
  CHECK_THROWS_AS(parse_axis("XY"), ConfigError);
}

TEST_CASE("vocabulary validation") {
  CHECK_THROWS_AS(Vocabulary(std::vector<EmotionAnchor>{}), ConfigError);
  CHECK_THROWS_AS(Vocabulary({{"a", 2.0, 0.5}}), ConfigError);
  CHECK_THROWS_AS(Vocabulary({{"a", 0.0, -0.5}}), ConfigError);
  CHECK_THROWS_AS(Vocabulary({{"a", 0.0, 0.0}, {"a", 0.1, 0.1}}), ConfigError);
  const Vocabulary v = default_vocabulary();
  CHECK(v.size() == 6);
  CHECK(v.index_of("anger") == 4);
  CHECK(v.index_of("bliss") == -1);
}
