#pragma once

#include <cmath>
#include <set>
#include <string>

#include "prism/core/params.hpp"
#include "prism/core/types.hpp"
#include "prism/errors.hpp"

namespace prism {

// Weights of the interaction impulse terms: structural pressure, emotional
// energy, direct mention.
struct ActivationWeights {
  double w1 = 0.5;
  double w2 = 1.0;
  double w3 = 2.0;

  void validate() const {
    if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) throw ConfigError("activation weights must be >= 0");
  }
};

enum class Action { Reply, Silence };

// U = w1 sum_{j in N_i, j active} G_ij + w2 ||e - mu||_2 + w3 I_mention.
// The structural term generalizes the unweighted active-neighbor count; with
// all edge weights 1 the two coincide. "Active" means activated in the
// previous step.
inline double interaction_impulse(const RawAffect& emotion, const AgentParams& params,
                                  std::size_t agent, const std::set<std::size_t>& active_prev,
                                  const SocialGraph& graph, bool mentioned,
                                  const ActivationWeights& weights) {
  if (agent >= graph.node_count()) throw DomainError("agent is not a graph node");
  double structural = 0.0;
  for (const auto& [neighbor, weight] : graph.out_neighbors(agent)) {
    if (active_prev.count(neighbor)) structural += weight;
  }
  const double energy = l2_norm(sub(emotion, params.mu.raw()));
  return weights.w1 * structural + weights.w2 * energy + weights.w3 * (mentioned ? 1.0 : 0.0);
}

// Reply iff u exceeds the threshold strictly.
inline Action should_activate(double u, double gamma) {
  return u > gamma ? Action::Reply : Action::Silence;
}

// Conjugate Gaussian update of the scalar opinion belief:
// tau' = tau + 1/sigma_obs^2, mu' = (tau mu + y/sigma_obs^2) / tau'.
inline Belief update_belief(const Belief& belief, double y, double obs_noise_var) {
  if (!(obs_noise_var > 0.0)) throw DomainError("observation noise variance must be > 0");
  if (!(belief.precision > 0.0)) throw DomainError("belief precision must be > 0");
  const double obs_precision = 1.0 / obs_noise_var;
  Belief out;
  out.precision = belief.precision + obs_precision;
  out.mean = (belief.precision * belief.mean + obs_precision * y) / out.precision;
  return out;
}

}  // namespace prism
