#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "prism/errors.hpp"

namespace prism {

// Unconstrained working state of the SDE layer. May leave the simplex
// between projections; that is a distinct semantic state from EmotionVector.
using RawAffect = std::vector<double>;

inline double l2_norm(const RawAffect& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline RawAffect sub(const RawAffect& a, const RawAffect& b) {
  RawAffect out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Point on the probability simplex: components >= 0, sum == 1 within 1e-9.
class EmotionVector {
 public:
  EmotionVector() = default;

  explicit EmotionVector(std::vector<double> components) : c_(std::move(components)) {
    double sum = 0.0;
    for (double x : c_) {
      if (!std::isfinite(x)) throw DomainError("emotion vector has non-finite component");
      if (x < -1e-12) throw DomainError("emotion vector has negative component");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw DomainError("emotion vector does not sum to 1 (sum=" + std::to_string(sum) + ")");
    }
    for (double& x : c_)
      if (x < 0.0) x = 0.0;
  }

  static EmotionVector uniform(std::size_t k) {
    return EmotionVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }

  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t k) const { return c_[k]; }
  const std::vector<double>& components() const { return c_; }
  RawAffect raw() const { return c_; }

  bool operator==(const EmotionVector&) const = default;

 private:
  std::vector<double> c_;
};

struct ValenceArousal {
  double valence = 0.0;  // [-1, 1]
  double arousal = 0.0;  // [0, 1]
};

struct Message {
  std::string speaker_id;
  std::string text;
  ValenceArousal va;
  double y = 0.0;  // scalar opinion observation in [-1, 1]
  double t = 0.0;  // simulation time
};

// Scalar Gaussian opinion estimate.
struct Belief {
  double mean = 0.0;
  double precision = 1.0;  // > 0, non-decreasing over a run
};

struct AgentState {
  RawAffect emotion;  // on the simplex whenever projection is enabled
  Belief belief;
  std::vector<Message> history;
};

// Directed weighted graph over agent indices. G(i,j) in [0,1] is the weight
// agent i assigns to neighbor j; messages from s reach out_neighbors(s).
class SocialGraph {
 public:
  SocialGraph() = default;
  explicit SocialGraph(std::size_t n) : n_(n), adj_(n) {}

  std::size_t node_count() const { return n_; }

  void add_edge(std::size_t from, std::size_t to, double weight) {
    if (from >= n_ || to >= n_) throw ConfigError("graph edge references unknown node");
    if (from == to) throw ConfigError("graph self-loops are not allowed");
    if (weight < 0.0 || weight > 1.0) throw ConfigError("graph edge weight outside [0,1]");
    adj_[from][to] = weight;
  }

  double weight(std::size_t from, std::size_t to) const {
    auto it = adj_[from].find(to);
    return it == adj_[from].end() ? 0.0 : it->second;
  }

  // Neighbors in ascending index order (std::map keeps them sorted).
  const std::map<std::size_t, double>& out_neighbors(std::size_t from) const {
    return adj_[from];
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& m : adj_) c += m.size();
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::map<std::size_t, double>> adj_;
};

}  // namespace prism
