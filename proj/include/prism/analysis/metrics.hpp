#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/analysis/stats.hpp"
#include "prism/core/mbti.hpp"
#include "prism/engine/engine.hpp"
#include "prism/errors.hpp"
#include "prism/policy/lexicon.hpp"

namespace prism {

// Scalar sentiment of an emotion distribution: its dot product with the
// lexicon's per-emotion valence anchors. In [-1,1] for on-simplex input.
inline double sentiment_score(const std::vector<double>& emotion, const EmotionLexicon& lexicon) {
  if (emotion.size() != lexicon.size()) throw DomainError("sentiment_score dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < emotion.size(); ++k) {
    s += emotion[k] * lexicon.at(k).anchor.valence;
  }
  return s;
}

// One scalar series on a strictly increasing time grid.
struct SentimentSeries {
  std::vector<double> times;
  std::vector<double> values;

  void validate() const {
    if (times.size() != values.size()) throw DomainError("series times/values length mismatch");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (!(times[i] > times[i - 1])) throw DomainError("series times must be strictly increasing");
    }
  }
};

namespace metrics_detail {
inline double interpolate(const SentimentSeries& s, double t) {
  const auto& ts = s.times;
  auto upper = std::upper_bound(ts.begin(), ts.end(), t);
  if (upper == ts.begin()) return s.values.front();
  if (upper == ts.end()) return s.values.back();
  const std::size_t hi = static_cast<std::size_t>(upper - ts.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return s.values[lo] * (1.0 - w) + s.values[hi] * w;
}
}  // namespace metrics_detail

// Mean absolute difference over the sim grid points that fall inside the
// reference's time span; the reference is linearly resampled onto them.
inline double polarity_mae(const SentimentSeries& sim, const SentimentSeries& ref) {
  sim.validate();
  ref.validate();
  if (sim.times.empty() || ref.times.empty()) throw DomainError("polarity_mae needs non-empty series");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < sim.times.size(); ++i) {
    const double t = sim.times[i];
    if (t < ref.times.front() - 1e-12 || t > ref.times.back() + 1e-12) continue;
    sum += std::abs(sim.values[i] - metrics_detail::interpolate(ref, t));
    ++count;
  }
  if (count == 0) throw DomainError("polarity_mae: series time ranges do not overlap");
  return sum / static_cast<double>(count);
}

// Parses a trajectory JSONL stream back into records (the analysis-side view
// of the engine output).
inline std::vector<TrajectoryRecord> parse_trajectory_jsonl(std::istream& in) {
  std::vector<TrajectoryRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw IoError("trajectory line " + std::to_string(line_number) + " is not a JSON object");
    }
    TrajectoryRecord rec;
    try {
      rec.t = j.at("t").get<double>();
      rec.agent_id = j.at("agent_id").get<std::string>();
      rec.mbti = j.at("mbti").get<std::string>();
      rec.emotion = j.at("emotion").get<std::vector<double>>();
      rec.belief_mean = j.at("belief_mean").get<double>();
      rec.belief_precision = j.at("belief_precision").get<double>();
      rec.activated = j.at("activated").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw IoError("trajectory line " + std::to_string(line_number) + ": " + e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

enum class GroupingMode { All, ByType, ByAxis };

struct Grouping {
  GroupingMode mode = GroupingMode::All;
  int axis_position = 2;  // 0..3 within the code; TF lives at position 2

  // "all", "type", "axis:EI" / "axis:SN" / "axis:TF" / "axis:JP"
  static Grouping parse(const std::string& spec) {
    Grouping g;
    if (spec == "all") {
      g.mode = GroupingMode::All;
    } else if (spec == "type") {
      g.mode = GroupingMode::ByType;
    } else if (spec.rfind("axis:", 0) == 0) {
      g.mode = GroupingMode::ByAxis;
      const std::string axis = spec.substr(5);
      if (axis == "EI") g.axis_position = 0;
      else if (axis == "SN") g.axis_position = 1;
      else if (axis == "TF") g.axis_position = 2;
      else if (axis == "JP") g.axis_position = 3;
      else throw ConfigError("unknown grouping axis \"" + axis + "\"");
    } else {
      throw ConfigError("unknown grouping \"" + spec + "\" (expected all, type or axis:XY)");
    }
    return g;
  }

  std::string group_of(const TrajectoryRecord& rec) const {
    switch (mode) {
      case GroupingMode::All: return "all";
      case GroupingMode::ByType: return rec.mbti;
      case GroupingMode::ByAxis: return std::string(1, rec.mbti.at(static_cast<std::size_t>(axis_position)));
    }
    return "all";
  }
};

// Per-group mean sentiment series. Group value at time t is the arithmetic
// mean of the member agents' sentiment scores at t.
inline std::map<std::string, SentimentSeries> group_trajectories(
    const std::vector<TrajectoryRecord>& records, const Grouping& grouping,
    const EmotionLexicon& lexicon) {
  if (records.empty()) throw DomainError("empty trajectory");
  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> acc;
  for (const auto& rec : records) {
    auto& cell = acc[grouping.group_of(rec)][rec.t];
    cell.first += sentiment_score(rec.emotion, lexicon);
    cell.second += 1;
  }
  std::map<std::string, SentimentSeries> out;
  for (auto& [group, by_time] : acc) {
    SentimentSeries series;
    for (auto& [t, cell] : by_time) {
      series.times.push_back(t);
      series.values.push_back(cell.first / static_cast<double>(cell.second));
    }
    out[group] = std::move(series);
  }
  return out;
}

inline std::string plot_data_csv(const std::map<std::string, SentimentSeries>& series) {
  std::ostringstream os;
  os << "t,group,mean_sentiment\n";
  os.setf(std::ios::fmtflags(0), std::ios::floatfield);
  os.precision(12);
  for (const auto& [group, s] : series) {
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      os << s.times[i] << "," << group << "," << s.values[i] << "\n";
    }
  }
  return os.str();
}

inline std::map<std::string, SentimentSeries> parse_plot_data_csv(std::istream& in) {
  std::map<std::string, SentimentSeries> out;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty plot-data csv");
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string t_str, group, v_str;
    if (!std::getline(ls, t_str, ',') || !std::getline(ls, group, ',') || !std::getline(ls, v_str)) {
      throw IoError("plot-data csv line " + std::to_string(line_number) + " malformed");
    }
    out[group].times.push_back(std::stod(t_str));
    out[group].values.push_back(std::stod(v_str));
  }
  return out;
}

struct ConsistencyResult {
  std::map<std::string, std::optional<double>> per_agent;  // nullopt when undefined
  double mean = 0.0;
  std::size_t defined_count = 0;
};

// Artifact definition of the consistency metric: Spearman rho between each
// agent's run-averaged emotion vector and its configured baseline centroid,
// averaged over agents with a defined correlation.
inline ConsistencyResult consistency_rho(const std::vector<TrajectoryRecord>& records,
                                         const std::map<std::string, std::vector<double>>& mu_by_agent) {
  if (records.empty()) throw DomainError("empty trajectory");
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
  for (const auto& rec : records) {
    auto& cell = sums[rec.agent_id];
    if (cell.first.empty()) cell.first.assign(rec.emotion.size(), 0.0);
    if (cell.first.size() != rec.emotion.size()) throw DomainError("inconsistent emotion dimension in trajectory");
    for (std::size_t k = 0; k < rec.emotion.size(); ++k) cell.first[k] += rec.emotion[k];
    cell.second += 1;
  }

  ConsistencyResult out;
  double total = 0.0;
  for (auto& [agent_id, cell] : sums) {
    auto it = mu_by_agent.find(agent_id);
    if (it == mu_by_agent.end()) {
      throw DomainError("no baseline centroid for agent \"" + agent_id + "\" (summary missing?)");
    }
    std::vector<double> avg = cell.first;
    for (double& v : avg) v /= static_cast<double>(cell.second);
    try {
      out.per_agent[agent_id] = spearman_rho(avg, it->second).rho;
      total += *out.per_agent[agent_id];
      out.defined_count += 1;
    } catch (const DomainError&) {
      out.per_agent[agent_id] = std::nullopt;  // constant vector (e.g. uniform baseline)
    }
  }
  if (out.defined_count > 0) out.mean = total / static_cast<double>(out.defined_count);
  return out;
}

}  // namespace prism
