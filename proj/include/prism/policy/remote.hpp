#pragma once

#include <cstdlib>
#include <optional>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "prism/errors.hpp"
#include "prism/policy/analyzer.hpp"
#include "prism/policy/policy.hpp"

namespace prism {

// Chat-completion endpoint settings. The API key is read from the named
// environment variable at request time; an unset variable just means no
// Authorization header (local stubs do not need one).
struct RemoteEndpointConfig {
  std::string url;  // http://host:port/path
  std::string model = "default";
  std::string api_key_env;
  int timeout_ms = 10000;
  int retries = 2;  // additional attempts after the first
  double temperature = 0.7;

  void validate() const {
    if (url.rfind("http://", 0) != 0) {
      throw ConfigError("remote endpoint url must start with http:// (got \"" + url + "\")");
    }
    if (timeout_ms <= 0) throw ConfigError("remote timeout_ms must be > 0");
    if (retries < 0) throw ConfigError("remote retries must be >= 0");
  }
};

namespace detail {
struct ParsedUrl {
  std::string host;
  int port = 80;
  std::string path = "/";
};

inline ParsedUrl parse_http_url(const std::string& url) {
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) throw ConfigError("unsupported url scheme in \"" + url + "\"");
  std::string rest = url.substr(scheme.size());
  ParsedUrl out;
  const auto slash = rest.find('/');
  std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : rest.substr(slash);
  const auto colon = authority.find(':');
  if (colon == std::string::npos) {
    out.host = authority;
  } else {
    out.host = authority.substr(0, colon);
    out.port = std::stoi(authority.substr(colon + 1));
  }
  if (out.host.empty()) throw ConfigError("empty host in url \"" + url + "\"");
  return out;
}
}  // namespace detail

// Sends the assembled context to a chat-completion endpoint and runs the
// analyzer over the returned text. Network failures exhaust the retry budget
// and then surface as PolicyError (the engine degrades that to Silence);
// a reply that is not valid chat-completion JSON is a ProtocolError.
class RemotePolicy final : public MessagePolicy {
 public:
  RemotePolicy(RemoteEndpointConfig config, EmotionLexicon lexicon)
      : config_(std::move(config)), lexicon_(std::move(lexicon)) {
    config_.validate();
    parsed_ = detail::parse_http_url(config_.url);
  }

  std::string name() const override { return "remote"; }

  Message generate(const std::string& speaker_id, const PolicyContext& ctx,
                   SubstreamRng& /*rng*/) override {
    const std::string doc = assemble_context(ctx, lexicon_.vocabulary());
    nlohmann::json request = {
        {"model", config_.model},
        {"messages",
         {{{"role", "system"}, {"content", doc}},
          {{"role", "user"}, {"content", "Reply to the discussion with one short message."}}}},
        {"temperature", config_.temperature},
    };
    const std::string body = request.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
      httplib::Client client(parsed_.host, parsed_.port);
      client.set_connection_timeout(0, config_.timeout_ms * 1000);
      client.set_read_timeout(0, config_.timeout_ms * 1000);
      client.set_write_timeout(0, config_.timeout_ms * 1000);

      httplib::Headers headers;
      if (!config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str())) {
          headers.emplace("Authorization", std::string("Bearer ") + key);
        }
      }

      auto res = client.Post(parsed_.path, headers, body, "application/json");
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_error = "http status " + std::to_string(res->status);
        continue;
      }
      return parse_response(res->body, speaker_id);
    }
    throw PolicyError("remote endpoint \"" + config_.url + "\" failed after " +
                      std::to_string(config_.retries + 1) + " attempt(s); last error: " +
                      last_error);
  }

 private:
  Message parse_response(const std::string& body, const std::string& speaker_id) const {
    nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) throw ProtocolError("remote response is not valid JSON");
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
      throw ProtocolError("remote response has no choices");
    }
    const auto& first = j["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string()) {
      throw ProtocolError("remote response choice has no message content");
    }
    Message msg;
    msg.speaker_id = speaker_id;
    msg.text = first["message"]["content"].get<std::string>();
    const AnalyzedMessage analyzed = analyze_message(msg.text, lexicon_);
    msg.va = analyzed.va;
    msg.y = analyzed.y;
    return msg;
  }

  RemoteEndpointConfig config_;
  EmotionLexicon lexicon_;
  detail::ParsedUrl parsed_;
};

}  // namespace prism
