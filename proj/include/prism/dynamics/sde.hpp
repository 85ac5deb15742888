#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "prism/core/params.hpp"
#include "prism/core/types.hpp"
#include "prism/errors.hpp"

namespace prism {

// K Gaussian increments, each ~ N(0, dt). Produced from an agent-scoped RNG
// substream so draws are reproducible given (seed, agent, step).
struct NoiseIncrement {
  std::vector<double> dw;
};

// One explicit Euler-Maruyama step of the mean-reverting diffusion:
// e + Theta (mu - e) dt + Sigma dW. No projection here; the result is raw
// affect and may leave the simplex.
inline RawAffect drift_diffusion_step(const RawAffect& e, const AgentParams& params, double dt,
                                      const NoiseIncrement& noise) {
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  const std::size_t k = e.size();
  if (params.dim() != k || params.mu.size() != k || noise.dw.size() != k) {
    throw DomainError("drift_diffusion_step dimension mismatch (state " + std::to_string(k) +
                      ", params " + std::to_string(params.dim()) + ", noise " +
                      std::to_string(noise.dw.size()) + ")");
  }
  RawAffect out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = e[i] + params.theta_diag[i] * (params.mu[i] - e[i]) * dt +
             params.sigma_diag[i] * noise.dw[i];
  }
  return out;
}

// Deterministic branch of the between-event solution,
// e(t) = mu + exp(-Theta t)(e0 - mu), componentwise for diagonal Theta.
inline RawAffect analytic_state(const RawAffect& e0, const AgentParams& params, double t) {
  if (t < 0.0) throw DomainError("elapsed time must be >= 0");
  const std::size_t k = e0.size();
  if (params.dim() != k || params.mu.size() != k) {
    throw DomainError("analytic_state dimension mismatch");
  }
  RawAffect out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = params.mu[i] + std::exp(-params.theta_diag[i] * t) * (e0[i] - params.mu[i]);
  }
  return out;
}

// Instantaneous message jump: e + Psi va. Additive, so several messages
// landing within one step accumulate.
inline RawAffect apply_impulse(const RawAffect& e, const std::vector<std::array<double, 2>>& psi,
                               const ValenceArousal& va) {
  if (psi.size() != e.size()) throw DomainError("apply_impulse dimension mismatch");
  RawAffect out(e);
  for (std::size_t i = 0; i < e.size(); ++i) {
    out[i] += psi[i][0] * va.valence + psi[i][1] * va.arousal;
  }
  return out;
}

struct StationaryMoments {
  std::vector<double> mean;
  std::vector<double> variance;
};

// Closed-form stationary law of the unconstrained diffusion: mean mu,
// variance sigma^2 / (2 theta) per component. Validation oracle; only
// meaningful with projection disabled.
inline StationaryMoments stationary_moments(const AgentParams& params) {
  StationaryMoments m;
  m.mean = params.mu.raw();
  m.variance.resize(params.dim());
  for (std::size_t i = 0; i < params.dim(); ++i) {
    if (!(params.theta_diag[i] > 0.0)) {
      throw DomainError("stationary law requires theta > 0 (component " + std::to_string(i) + ")");
    }
    m.variance[i] = params.sigma_diag[i] * params.sigma_diag[i] / (2.0 * params.theta_diag[i]);
  }
  return m;
}

}  // namespace prism
