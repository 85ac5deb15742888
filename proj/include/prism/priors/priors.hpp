#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/core/mbti.hpp"
#include "prism/core/types.hpp"
#include "prism/core/vocabulary.hpp"
#include "prism/errors.hpp"
#include "prism/priors/corpus.hpp"

namespace prism {

struct PriorEntry {
  std::vector<double> distribution;  // ordered by the configured vocabulary
  double entropy_bits = 0.0;
  std::int64_t support_count = 0;
};

// Per-type smoothed emotion distributions, indexed by MbtiProfile::index().
struct PriorTable {
  std::vector<std::string> labels;
  std::array<PriorEntry, 16> entries{};

  const PriorEntry& for_profile(const MbtiProfile& p) const { return entries[p.index()]; }
  EmotionVector mu(const MbtiProfile& p) const { return EmotionVector(entries[p.index()].distribution); }
};

// Shannon entropy in bits, with 0 log 0 := 0.
inline double affective_entropy(const std::vector<double>& dist) {
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("entropy input has invalid component");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw DomainError("entropy input is not normalized (sum=" + std::to_string(sum) + ")");
  }
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Additive smoothing: (N(e_k, T) + alpha) / (sum_j N(e_j, T) + K alpha).
// Every type gets a row, so types absent from the corpus come out uniform.
inline PriorTable estimate_priors(const AnnotatedCorpus& corpus, const Vocabulary& vocab,
                                  double alpha = 1.0) {
  if (!(alpha > 0.0)) throw ConfigError("smoothing alpha must be > 0");
  const std::size_t k = vocab.size();
  PriorTable table;
  table.labels = vocab.labels();
  for (int t = 0; t < 16; ++t) {
    const std::int64_t total = corpus.type_total(t);
    PriorEntry entry;
    entry.distribution.resize(k);
    const double denom = static_cast<double>(total) + static_cast<double>(k) * alpha;
    for (std::size_t i = 0; i < k; ++i) {
      entry.distribution[i] = (static_cast<double>(corpus.counts[t][i]) + alpha) / denom;
    }
    entry.support_count = total;
    entry.entropy_bits = affective_entropy(entry.distribution);
    table.entries[t] = entry;
  }
  return table;
}

struct QuantizeDetail {
  std::vector<double> first_snapped;  // multiples of epsilon, first pass
  std::vector<double> snapped;        // multiples of epsilon (final pass, pre-normalization)
  double z = 0.0;                     // normalization mass of the final pass
  std::vector<double> quantized;      // snapped / z
  int iterations = 0;
};

// Probability coarse-graining: snap each component to the nearest multiple
// of epsilon (ties away from zero), renormalize, and repeat until the result
// stops moving. A single pass is not idempotent whenever the snapped mass
// differs from 1; iterating restores the fixed-point contract without
// changing any on-grid result. Converges in <= 3 passes in practice.
inline QuantizeDetail quantize_distribution_detail(const std::vector<double>& dist,
                                                   double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw ConfigError("quantization epsilon must lie in (0,1)");
  }
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("quantization input has invalid component");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw DomainError("quantization input is not normalized (sum=" + std::to_string(sum) + ")");
  }

  // Nearest grid multiple with ties half-away-from-zero. The division can
  // put a mathematically exact half a few ulps off 0.5, so ties are detected
  // with a small tolerance to keep the rule platform-independent.
  auto snap_steps = [epsilon](double x) {
    const double q = x / epsilon;
    const double fl = std::floor(q);
    if (std::abs((q - fl) - 0.5) <= 1e-9) return fl + 1.0;
    return std::round(q);
  };

  constexpr int kMaxPasses = 64;
  QuantizeDetail out;
  std::vector<double> current = dist;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::vector<double> snapped(current.size());
    double z = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      snapped[i] = epsilon * snap_steps(current[i]);
      z += snapped[i];
    }
    if (z <= 0.0) {
      throw QuantizeError(
          "all components snapped to zero (Z=0); choose a smaller epsilon than " +
          std::to_string(epsilon));
    }
    std::vector<double> next(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) next[i] = snapped[i] / z;
    if (pass == 0) out.first_snapped = snapped;

    double delta = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) delta = std::max(delta, std::abs(next[i] - current[i]));
    out.snapped = std::move(snapped);
    out.z = z;
    out.iterations = pass + 1;
    if (delta <= 1e-15) {
      out.quantized = current;
      return out;
    }
    current = std::move(next);
    out.quantized = current;
  }
  return out;  // capped; empirically unreachable
}

inline std::vector<double> quantize_distribution(const std::vector<double>& dist, double epsilon) {
  return quantize_distribution_detail(dist, epsilon).quantized;
}

// Quantized copy of a whole table (the estimate -> quantize pipeline order).
inline PriorTable quantize_table(const PriorTable& table, double epsilon) {
  PriorTable out = table;
  for (auto& entry : out.entries) {
    entry.distribution = quantize_distribution(entry.distribution, epsilon);
    entry.entropy_bits = affective_entropy(entry.distribution);
  }
  return out;
}

inline nlohmann::json prior_table_to_json(const PriorTable& table) {
  nlohmann::json j = nlohmann::json::object();
  for (int t = 0; t < 16; ++t) {
    const auto code = MbtiProfile::from_index(t).code();
    j[code] = {{"distribution", table.entries[t].distribution},
               {"entropy_bits", table.entries[t].entropy_bits},
               {"support_count", table.entries[t].support_count}};
  }
  return j;
}

inline PriorTable prior_table_from_json(const nlohmann::json& j, const Vocabulary& vocab) {
  if (!j.is_object()) throw ConfigError("prior table must be a JSON object keyed by type code");
  PriorTable table;
  table.labels = vocab.labels();
  for (int t = 0; t < 16; ++t) {
    const auto code = MbtiProfile::from_index(t).code();
    if (!j.contains(code)) throw ConfigError("prior table is missing type \"" + code + "\"");
    const auto& e = j[code];
    PriorEntry entry;
    entry.distribution = e.at("distribution").get<std::vector<double>>();
    if (entry.distribution.size() != vocab.size()) {
      throw ConfigError("prior distribution for " + code + " has " +
                        std::to_string(entry.distribution.size()) + " entries, vocabulary has " +
                        std::to_string(vocab.size()));
    }
    entry.entropy_bits = e.value("entropy_bits", affective_entropy(entry.distribution));
    entry.support_count = e.value("support_count", std::int64_t{0});
    table.entries[t] = entry;
  }
  return table;
}

struct PriorReport {
  nlohmann::json json;
  std::string text;
};

// Per-type rows plus the T-versus-F entropy summary the priors exist to
// expose.
inline PriorReport prior_report(const PriorTable& table) {
  double sum_t = 0.0, sum_f = 0.0;
  for (int t = 0; t < 16; ++t) {
    const auto profile = MbtiProfile::from_index(t);
    (profile.judging_fn == JudgingFn::T ? sum_t : sum_f) += table.entries[t].entropy_bits;
  }
  const double mean_t = sum_t / 8.0;
  const double mean_f = sum_f / 8.0;

  PriorReport report;
  report.json = {{"types", prior_table_to_json(table)},
                 {"summary",
                  {{"mean_entropy_bits_T", mean_t},
                   {"mean_entropy_bits_F", mean_f},
                   {"entropy_gap_F_minus_T", mean_f - mean_t}}}};

  std::ostringstream os;
  os << "Per-type emotion priors\n";
  os << "=======================\n";
  os << std::fixed << std::setprecision(4);
  for (int t = 0; t < 16; ++t) {
    const auto profile = MbtiProfile::from_index(t);
    const auto& entry = table.entries[t];
    os << profile.code() << "  H=" << entry.entropy_bits << " bits  n=" << entry.support_count
       << "  [";
    for (std::size_t i = 0; i < entry.distribution.size(); ++i) {
      if (i) os << ", ";
      os << table.labels[i] << "=" << std::setprecision(3) << entry.distribution[i]
         << std::setprecision(4);
    }
    os << "]\n";
  }
  os << "\nGroup summary: mean H(T)=" << mean_t << " bits, mean H(F)=" << mean_f
     << " bits, gap(F-T)=" << (mean_f - mean_t) << "\n";
  report.text = os.str();
  return report;
}

}  // namespace prism
