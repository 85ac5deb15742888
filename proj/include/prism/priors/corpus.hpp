#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/core/mbti.hpp"
#include "prism/core/vocabulary.hpp"
#include "prism/errors.hpp"

namespace prism {

// One annotated corpus line. text and sentiment are optional in the wire
// format and kept only for diagnostics; estimation needs the counts.
struct AnnotatedRecord {
  MbtiProfile author_type;
  int emotion = 0;  // index into the configured vocabulary
  std::optional<std::string> text;
  std::optional<double> sentiment;  // [-1, 1]
};

struct RejectedLine {
  std::size_t line_number = 0;  // 1-based
  std::string reason;
};

// Validated records grouped into per-(type, emotion) counts.
struct AnnotatedCorpus {
  std::array<std::vector<std::int64_t>, 16> counts{};  // [type index][emotion index]
  std::size_t record_count = 0;
  std::vector<RejectedLine> rejects;

  explicit AnnotatedCorpus(std::size_t k = 0) {
    for (auto& row : counts) row.assign(k, 0);
  }

  std::int64_t type_total(int type_index) const {
    std::int64_t n = 0;
    for (std::int64_t c : counts[type_index]) n += c;
    return n;
  }
};

// Reads JSONL records, one per line. Blank lines are skipped. Malformed or
// invalid lines are collected as rejects; more than 50% rejects is a hard
// failure since the counts would be dominated by noise.
inline AnnotatedCorpus ingest_corpus(std::istream& stream, const Vocabulary& vocab) {
  AnnotatedCorpus corpus(vocab.size());
  std::string line;
  std::size_t line_number = 0;
  std::size_t considered = 0;

  while (std::getline(stream, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++considered;

    auto reject = [&](const std::string& reason) {
      corpus.rejects.push_back({line_number, reason});
    };

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      reject("not a JSON object");
      continue;
    }
    if (!j.contains("author_type") || !j["author_type"].is_string()) {
      reject("missing string field \"author_type\"");
      continue;
    }
    if (!j.contains("emotion") || !j["emotion"].is_string()) {
      reject("missing string field \"emotion\"");
      continue;
    }

    MbtiProfile profile;
    try {
      profile = parse_mbti(j["author_type"].get<std::string>());
    } catch (const DomainError& e) {
      reject(e.what());
      continue;
    }

    const std::string emotion = j["emotion"].get<std::string>();
    const int k = vocab.index_of(emotion);
    if (k < 0) {
      reject("emotion \"" + emotion + "\" is not in the configured vocabulary");
      continue;
    }

    if (j.contains("sentiment")) {
      if (!j["sentiment"].is_number()) {
        reject("\"sentiment\" must be a number");
        continue;
      }
      const double s = j["sentiment"].get<double>();
      if (s < -1.0 || s > 1.0) {
        reject("\"sentiment\" outside [-1,1]");
        continue;
      }
    }

    corpus.counts[profile.index()][static_cast<std::size_t>(k)] += 1;
    corpus.record_count += 1;
  }

  if (considered > 0 && corpus.rejects.size() * 2 > considered) {
    throw ConfigError("corpus rejected " + std::to_string(corpus.rejects.size()) + " of " +
                      std::to_string(considered) + " lines (>50%); first reject at line " +
                      std::to_string(corpus.rejects.front().line_number) + ": " +
                      corpus.rejects.front().reason);
  }
  return corpus;
}

}  // namespace prism
