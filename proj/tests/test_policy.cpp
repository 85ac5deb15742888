#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "prism/policy/analyzer.hpp"
#include "prism/policy/context.hpp"
#include "prism/policy/lexicon.hpp"
#include "prism/policy/policy.hpp"
#include "prism/policy/remote.hpp"

using namespace prism;

namespace {
PolicyContext make_ctx(const std::string& mbti, std::vector<double> emotion,
                       std::vector<Message> history = {}, double belief = 0.0) {
  PolicyContext ctx;
  ctx.history = std::move(history);
  ctx.emotion = EmotionVector(std::move(emotion));
  ctx.profile = parse_mbti(mbti);
  ctx.belief_mean = belief;
  ctx.topic = "the flood warning";
  return ctx;
}
}  // namespace

TEST_CASE("assemble_context renders the three sections deterministically") {
  const Vocabulary vocab = default_vocabulary();

  SECTION("empty history leaves only state and persona sections") {
    const std::string doc = assemble_context(make_ctx("INTJ", {1, 0, 0, 0, 0, 0}), vocab);
    CHECK(doc.find("[history]") == std::string::npos);
    CHECK(doc.find("[state]") != std::string::npos);
    CHECK(doc.find("[persona]") != std::string::npos);
  }

  SECTION("identical inputs give byte-identical documents") {
    const auto ctx = make_ctx("ENFP", {0.1, 0.4, 0.2, 0.1, 0.1, 0.1},
                              {Message{"a01", "hello there", {0.2, 0.3}, 0.1, 1.0}}, 0.35);
    CHECK(assemble_context(ctx, vocab) == assemble_context(ctx, vocab));
  }

  SECTION("pure neutral renders neutral (1.00)") {
    const std::string doc = assemble_context(make_ctx("ISTJ", {1, 0, 0, 0, 0, 0}), vocab);
    CHECK(doc.find("neutral (1.00)") != std::string::npos);
  }

  SECTION("top-2 labels by mass with two decimals") {
    const std::string doc =
        assemble_context(make_ctx("ISTJ", {0.21, 0.62, 0.17, 0.0, 0.0, 0.0}), vocab);
    CHECK(doc.find("happy (0.62), neutral (0.21)") != std::string::npos);
    CHECK(doc.find("consoling") == std::string::npos);
  }

  SECTION("history window serializes speaker and text") {
    const auto ctx = make_ctx("ENTP", {1, 0, 0, 0, 0, 0},
                              {Message{"a07", "pumps are failing", {-0.8, 0.9}, -0.8, 2.0}});
    const std::string doc = assemble_context(ctx, vocab);
    CHECK(doc.find("a07: pumps are failing") != std::string::npos);
  }

  SECTION("belief renders signed with two decimals") {
    const std::string doc = assemble_context(make_ctx("INTJ", {1, 0, 0, 0, 0, 0}, {}, -0.4), vocab);
    CHECK(doc.find("opinion: -0.40") != std::string::npos);
  }
}

TEST_CASE("style blocks are distinct across all 16 types") {
  std::set<std::string> blocks;
  for (const auto& profile : all_mbti_profiles()) blocks.insert(style_block(profile));
  CHECK(blocks.size() == 16);

  const Vocabulary vocab = default_vocabulary();
  std::set<std::string> docs;
  for (const auto& profile : all_mbti_profiles()) {
    docs.insert(assemble_context(make_ctx(profile.code(), {1, 0, 0, 0, 0, 0}), vocab));
  }
  CHECK(docs.size() == 16);
}

TEST_CASE("scripted policy replays entries verbatim then errors") {
  ScriptedPolicy policy({{"a01", {{"take cover now", {-0.9, 0.8}, -0.8}}}});
  SubstreamRng rng(1, 0, 0, RngPurpose::Policy);
  const auto ctx = make_ctx("ENTJ", {1, 0, 0, 0, 0, 0});

  const Message msg = policy.generate("a01", ctx, rng);
  CHECK(msg.text == "take cover now");
  CHECK(msg.va.valence == Catch::Approx(-0.9));
  CHECK(msg.va.arousal == Catch::Approx(0.8));
  CHECK(msg.y == Catch::Approx(-0.8));

  CHECK_THROWS_AS(policy.generate("a01", ctx, rng), PolicyError);
  CHECK_THROWS_AS(policy.generate("a02", ctx, rng), PolicyError);
}

TEST_CASE("stochastic policy") {
  const EmotionLexicon lexicon = default_lexicon();

  SECTION("a point mass always emits that label's template and VA") {
    StochasticPolicy policy(lexicon, 0.0);
    const auto ctx = make_ctx("ESTP", {0, 0, 0, 0, 1, 0});  // anger
    for (int i = 0; i < 20; ++i) {
      SubstreamRng rng(9, 3, static_cast<std::uint64_t>(i), RngPurpose::Policy);
      const Message msg = policy.generate("a03", ctx, rng);
      CHECK(msg.va.valence == Catch::Approx(-0.8));
      CHECK(msg.va.arousal == Catch::Approx(0.9));
      const AnalyzedMessage reread = analyze_message(msg.text, lexicon);
      CHECK(reread.va.valence == Catch::Approx(-0.8));
    }
  }

  SECTION("uniform state yields near-uniform label frequencies") {
    StochasticPolicy policy(lexicon, 0.0);
    const auto ctx = make_ctx("ESTP", std::vector<double>(6, 1.0 / 6.0));
    std::map<double, int> counts;  // keyed by emitted valence anchor
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      SubstreamRng rng(123, 0, static_cast<std::uint64_t>(i), RngPurpose::Policy);
      counts[policy.generate("x", ctx, rng).va.valence] += 1;
    }
    // Valence anchors are distinct across the six labels.
    CHECK(counts.size() == 6);
    for (const auto& [valence, count] : counts) {
      (void)valence;
      CHECK(std::abs(count / static_cast<double>(draws) - 1.0 / 6.0) < 0.02);
    }
  }

  SECTION("zero perturbation passes the belief through as y") {
    StochasticPolicy policy(lexicon, 0.0);
    const auto ctx = make_ctx("ISFP", {0, 1, 0, 0, 0, 0}, {}, 0.5);
    SubstreamRng rng(4, 1, 0, RngPurpose::Policy);
    CHECK(policy.generate("a05", ctx, rng).y == Catch::Approx(0.5));
  }

  SECTION("same substream state reproduces the identical message") {
    StochasticPolicy policy(lexicon, 0.1);
    const auto ctx = make_ctx("ENFJ", {0.2, 0.2, 0.2, 0.2, 0.1, 0.1}, {}, 0.2);
    SubstreamRng r1(77, 2, 5, RngPurpose::Policy);
    SubstreamRng r2(77, 2, 5, RngPurpose::Policy);
    const Message a = policy.generate("a02", ctx, r1);
    const Message b = policy.generate("a02", ctx, r2);
    CHECK(a.text == b.text);
    CHECK(a.y == b.y);
  }

  SECTION("topic placeholder is substituted") {
    StochasticPolicy policy(lexicon, 0.0);
    const auto ctx = make_ctx("ENFJ", {0, 1, 0, 0, 0, 0});
    SubstreamRng rng(5, 0, 0, RngPurpose::Policy);
    const Message msg = policy.generate("a01", ctx, rng);
    CHECK(msg.text.find("{topic}") == std::string::npos);
    CHECK(msg.text.find("the flood warning") != std::string::npos);
  }
}

TEST_CASE("analyze_message") {
  const EmotionLexicon lexicon = default_lexicon();

  SECTION("empty text maps to the neutral origin") {
    const AnalyzedMessage a = analyze_message("", lexicon);
    CHECK(a.va.valence == 0.0);
    CHECK(a.va.arousal == 0.0);
    CHECK(a.y == 0.0);
  }

  SECTION("single matched term takes its anchor") {
    const AnalyzedMessage a = analyze_message("I am FURIOUS today", lexicon);
    CHECK(a.va.valence == Catch::Approx(-0.8));
    CHECK(a.va.arousal == Catch::Approx(0.9));
    CHECK(a.y == Catch::Approx(-0.8));
  }

  SECTION("two matched terms average") {
    // anger anchor (-0.8, 0.9) and consoling anchor (0.6, 0.3).
    const AnalyzedMessage a = analyze_message("furious but we offer support", lexicon);
    CHECK(a.va.valence == Catch::Approx((-0.8 + 0.6) / 2.0));
    CHECK(a.va.arousal == Catch::Approx((0.9 + 0.3) / 2.0));
    CHECK(a.y == Catch::Approx(a.va.valence));
  }

  SECTION("matching is whole-word: substrings do not match") {
    const AnalyzedMessage a = analyze_message("the supporter arrived", lexicon);
    CHECK(a.va.valence == 0.0);  // "support" must not match inside "supporter"
  }

  SECTION("repeated occurrences each count") {
    const AnalyzedMessage twice = analyze_message("great great", lexicon);
    const AnalyzedMessage once = analyze_message("great", lexicon);
    CHECK(twice.va.valence == Catch::Approx(once.va.valence));
  }

  SECTION("outputs stay inside the VA box on arbitrary text") {
    const char* samples[] = {"FURIOUS terrifying great ugh support noted",
                             "no lexicon words here", "a1 b2 _x_ !!!", "panic panic panic"};
    for (const char* text : samples) {
      const AnalyzedMessage a = analyze_message(text, lexicon);
      CHECK(a.va.valence >= -1.0);
      CHECK(a.va.valence <= 1.0);
      CHECK(a.va.arousal >= 0.0);
      CHECK(a.va.arousal <= 1.0);
    }
  }
}

TEST_CASE("lexicon must cover the vocabulary") {
  const Vocabulary vocab = default_vocabulary();
  std::vector<LexiconEntry> too_few = {{vocab.at(0), {"t"}, {"x"}}};
  CHECK_THROWS_AS(EmotionLexicon(vocab, too_few), ConfigError);
  CHECK_NOTHROW(generic_lexicon(vocab));
  CHECK(generic_lexicon(vocab).size() == vocab.size());
}

namespace {
struct StubServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit StubServer(httplib::Server::Handler handler) {
    server.Post("/v1/chat/completions", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~StubServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions"; }
};

RemoteEndpointConfig fast_endpoint(const std::string& url) {
  RemoteEndpointConfig cfg;
  cfg.url = url;
  cfg.timeout_ms = 2000;
  cfg.retries = 0;
  return cfg;
}
}  // namespace

TEST_CASE("remote policy against a local stub") {
  const EmotionLexicon lexicon = default_lexicon();
  const auto ctx = make_ctx("ENTP", {1, 0, 0, 0, 0, 0}, {}, 0.1);

  SECTION("well-formed response carries analyzer VA") {
    std::atomic<int> hits{0};
    StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
      hits.fetch_add(1);
      const auto body = nlohmann::json::parse(req.body);
      REQUIRE(body.contains("messages"));
      REQUIRE(body["messages"].size() == 2);
      res.set_content(
          R"({"choices": [{"message": {"content": "I am worried about the flooding"}}]})",
          "application/json");
    });
    RemotePolicy policy(fast_endpoint(stub.url()), lexicon);
    SubstreamRng rng(1, 0, 0, RngPurpose::Policy);
    const Message msg = policy.generate("a01", ctx, rng);
    CHECK(msg.text == "I am worried about the flooding");
    CHECK(msg.va.valence == Catch::Approx(-0.7));  // "worried" is a fear term
    CHECK(msg.va.arousal == Catch::Approx(0.8));
    CHECK(msg.y == Catch::Approx(-0.7));
    CHECK(hits.load() == 1);
  }

  SECTION("unreachable endpoint raises PolicyError after retries") {
    RemoteEndpointConfig cfg = fast_endpoint("http://127.0.0.1:1/v1/chat/completions");
    cfg.timeout_ms = 200;
    cfg.retries = 1;
    RemotePolicy policy(cfg, lexicon);
    SubstreamRng rng(1, 0, 0, RngPurpose::Policy);
    CHECK_THROWS_AS(policy.generate("a01", ctx, rng), PolicyError);
  }

  SECTION("empty choices is a protocol error") {
    StubServer stub([](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"choices": []})", "application/json");
    });
    RemotePolicy policy(fast_endpoint(stub.url()), lexicon);
    SubstreamRng rng(1, 0, 0, RngPurpose::Policy);
    CHECK_THROWS_AS(policy.generate("a01", ctx, rng), ProtocolError);
  }

  SECTION("non-json body is a protocol error") {
    StubServer stub([](const httplib::Request&, httplib::Response& res) {
      res.set_content("plain text", "text/plain");
    });
    RemotePolicy policy(fast_endpoint(stub.url()), lexicon);
    SubstreamRng rng(1, 0, 0, RngPurpose::Policy);
    CHECK_THROWS_AS(policy.generate("a01", ctx, rng), ProtocolError);
  }

  SECTION("https urls are rejected at config time") {
    RemoteEndpointConfig cfg = fast_endpoint("https://example.com/v1");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
