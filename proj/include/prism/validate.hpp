#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "prism/analysis/stats.hpp"
#include "prism/core/params.hpp"
#include "prism/decision/decision.hpp"
#include "prism/dynamics/sde.hpp"
#include "prism/dynamics/simplex.hpp"
#include "prism/engine/rng.hpp"

namespace prism {

struct OracleResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<OracleResult> results;
  bool all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const OracleResult& r) { return r.pass; });
  }
};

// Deliberate fault injection for negative-control tests: each target makes
// one oracle's subject wrong in a way the oracle must catch.
enum class SabotageTarget { None, Projection, Belief, Wilcoxon, Integrator };

namespace validate_detail {

// Exact projection by brute force over support sets: for every candidate
// support A, the equality-constrained minimizer shifts the kept coordinates
// uniformly; the feasible candidate closest to the input is the projection.
inline std::vector<double> projection_by_enumeration(const std::vector<double>& e) {
  const std::size_t k = e.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        sum += e[i];
        ++count;
      }
    }
    const double shift = (1.0 - sum) / count;
    std::vector<double> cand(k, 0.0);
    bool feasible = true;
    double dist = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        cand[i] = e[i] + shift;
        if (cand[i] < -1e-12) feasible = false;
      }
      const double d = cand[i] - e[i];
      dist += d * d;
    }
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = std::move(cand);
    }
  }
  return best;
}

// Broken projection used only as a sabotage subject.
inline std::vector<double> clamp_renormalize(const std::vector<double>& e) {
  std::vector<double> out(e.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    out[i] = std::max(e[i], 0.0);
    sum += out[i];
  }
  if (sum <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(e.size()));
    return out;
  }
  for (double& x : out) x /= sum;
  return out;
}

// Independent recursive tail-count of sign assignments with |W - mean| >=
// observed deviation.
inline void count_sign_assignments(const std::vector<double>& ranks, std::size_t idx, double w,
                                   double mean, double dev, std::uint64_t& hits) {
  if (idx == ranks.size()) {
    if (std::abs(w - mean) >= dev - 1e-9) ++hits;
    return;
  }
  count_sign_assignments(ranks, idx + 1, w, mean, dev, hits);
  count_sign_assignments(ranks, idx + 1, w + ranks[idx], mean, dev, hits);
}

inline AgentParams scalar_params(std::size_t k, double theta, double sigma,
                                 const std::vector<double>& mu) {
  AgentParams p;
  p.theta_diag.assign(k, theta);
  p.sigma_diag.assign(k, sigma);
  p.psi.assign(k, {0.0, 0.0});
  p.mu = EmotionVector(mu);
  p.gamma = 0.0;
  return p;
}

}  // namespace validate_detail

// Runs the oracle suite. The sweep report (the integrator error at each dt)
// is appended to the convergence oracle's detail string.
inline ValidationReport run_validation(SabotageTarget sabotage = SabotageTarget::None) {
  using namespace validate_detail;
  ValidationReport report;

  // Oracle 1: stationary moments of the unconstrained diffusion.
  {
    const std::size_t k = 6;
    std::vector<double> mu(k, 1.0 / 6.0);
    AgentParams params = scalar_params(k, 1.0, 0.2, mu);
    const double dt = 0.01;
    const std::size_t burn_in = 5000, samples = 50000;
    SubstreamRng rng(20240717ULL, 0, 0, RngPurpose::Diffusion);
    RawAffect e = mu;
    std::vector<double> sum(k, 0.0), sum_sq(k, 0.0);
    const double sqrt_dt = std::sqrt(dt);
    for (std::size_t n = 0; n < burn_in + samples; ++n) {
      NoiseIncrement noise;
      noise.dw.resize(k);
      for (double& w : noise.dw) w = rng.normal() * sqrt_dt;
      e = drift_diffusion_step(e, params, dt, noise);
      if (n >= burn_in) {
        for (std::size_t i = 0; i < k; ++i) {
          sum[i] += e[i];
          sum_sq[i] += e[i] * e[i];
        }
      }
    }
    const StationaryMoments target = stationary_moments(params);
    double worst_mean = 0.0, worst_var_rel = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double mean = sum[i] / samples;
      const double var = sum_sq[i] / samples - mean * mean;
      worst_mean = std::max(worst_mean, std::abs(mean - target.mean[i]));
      worst_var_rel = std::max(worst_var_rel, std::abs(var - target.variance[i]) / target.variance[i]);
    }
    OracleResult r;
    r.name = "ou-stationary-moments";
    r.pass = worst_mean <= 0.03 && worst_var_rel <= 0.25;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |mean err| %.4f (tol 0.03), max var rel err %.3f (tol 0.25)",
                  worst_mean, worst_var_rel);
    r.detail = buf;
    report.results.push_back(r);
  }

  // Oracle 2: simplex projection vs support enumeration.
  {
    SubstreamRng rng(99173ULL, 1, 0, RngPurpose::Diffusion);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t k = 3 + static_cast<std::size_t>(rng.uniform() * 3.0);
      std::vector<double> e(k);
      for (double& x : e) x = rng.uniform() * 3.0 - 1.0;
      const std::vector<double> expected = projection_by_enumeration(e);
      const std::vector<double> got = sabotage == SabotageTarget::Projection
                                          ? clamp_renormalize(e)
                                          : project_simplex(e).raw();
      for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
    }
    OracleResult r;
    r.name = "simplex-projection-qp";
    r.pass = worst <= 1e-6;
    r.detail = "max deviation from enumeration oracle " + std::to_string(worst) + " (tol 1e-6)";
    report.results.push_back(r);
  }

  // Oracle 3: sequential belief updates vs closed-form batch posterior.
  {
    SubstreamRng rng(55ULL, 2, 0, RngPurpose::Diffusion);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 50.0);
      const double var = 0.25 + rng.uniform() * 2.0;
      Belief b{rng.uniform() * 2.0 - 1.0, 0.5 + rng.uniform() * 2.0};
      const Belief b0 = b;
      double sum_y = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double y = rng.uniform() * 2.0 - 1.0;
        sum_y += y;
        b = update_belief(b, y, var);
      }
      if (sabotage == SabotageTarget::Belief) b.mean += 1e-6;
      const double tau_n = b0.precision + static_cast<double>(n) / var;
      const double mu_n = (b0.precision * b0.mean + sum_y / var) / tau_n;
      worst = std::max(worst, std::abs(b.precision - tau_n));
      worst = std::max(worst, std::abs(b.mean - mu_n));
    }
    OracleResult r;
    r.name = "belief-batch-posterior";
    r.pass = worst <= 1e-10;
    r.detail = "max deviation from batch posterior " + std::to_string(worst) + " (tol 1e-10)";
    report.results.push_back(r);
  }

  // Oracle 4: Wilcoxon exact path vs independent sign enumeration.
  {
    SubstreamRng rng(7311ULL, 3, 0, RngPurpose::Diffusion);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 4.0);  // 5..8
      std::vector<double> diffs(n);
      for (double& d : diffs) d = rng.uniform() * 2.0 - 1.0;
      WilcoxonResult got = wilcoxon_signed_rank(diffs);
      if (sabotage == SabotageTarget::Wilcoxon) got.p *= 0.5;

      std::vector<double> abs_d(n);
      for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::abs(diffs[i]);
      const std::vector<double> ranks = average_ranks(abs_d);
      double w_obs = 0.0, total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += ranks[i];
        if (diffs[i] > 0.0) w_obs += ranks[i];
      }
      std::uint64_t hits = 0;
      count_sign_assignments(ranks, 0, 0.0, total / 2.0, std::abs(w_obs - total / 2.0), hits);
      const double expected = static_cast<double>(hits) / std::pow(2.0, static_cast<double>(n));
      worst = std::max(worst, std::abs(got.p - expected));
    }
    // Frozen case: six positive differences.
    const WilcoxonResult all_pos = wilcoxon_signed_rank({0.3, 0.1, 0.8, 0.2, 0.5, 0.9});
    const bool frozen_ok = std::abs(all_pos.p - 0.03125) < 1e-12;
    OracleResult r;
    r.name = "wilcoxon-sign-enumeration";
    r.pass = worst <= 1e-12 && frozen_ok;
    r.detail = "max p deviation " + std::to_string(worst) + "; all-positive n=6 p=" +
               std::to_string(all_pos.p) + " (expect 0.03125)";
    report.results.push_back(r);
  }

  // Oracle 5: Euler stepping converges to the analytic relaxation at first
  // order. Errors are relative to the initial displacement.
  {
    const std::size_t k = 3;
    const std::vector<double> mu{0.5, 0.3, 0.2};
    AgentParams params;
    params.theta_diag = {1.0, 0.5, 2.0};
    params.sigma_diag = {0.0, 0.0, 0.0};
    params.psi.assign(k, {0.0, 0.0});
    params.mu = EmotionVector(mu);
    const RawAffect e0{0.9, 0.05, 0.05};
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(e0[i] - mu[i]));

    std::ostringstream sweep;
    sweep << "dt sweep:";
    std::vector<double> errors;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
      RawAffect e = e0;
      const std::size_t steps = static_cast<std::size_t>(std::llround(1.0 / dt));
      NoiseIncrement zero;
      zero.dw.assign(k, 0.0);
      double max_err = 0.0;
      for (std::size_t n = 0; n < steps; ++n) {
        e = drift_diffusion_step(e, params, dt, zero);
        const RawAffect exact = analytic_state(e0, params, static_cast<double>(n + 1) * dt);
        for (std::size_t i = 0; i < k; ++i) {
          max_err = std::max(max_err, std::abs(e[i] - exact[i]));
        }
      }
      double rel = max_err / scale;
      if (sabotage == SabotageTarget::Integrator) rel += 0.02;
      errors.push_back(rel);
      char buf[64];
      std::snprintf(buf, sizeof(buf), " dt=%g rel_err=%.3e", dt, rel);
      sweep << buf;
    }
    bool pass = errors[2] < 0.01;  // dt = 1e-3 below 1% relative
    for (std::size_t i = 1; i < errors.size(); ++i) {
      if (!(errors[i - 1] / errors[i] >= 1.8)) pass = false;  // halving dt ~halves error
    }
    OracleResult r;
    r.name = "euler-analytic-convergence";
    r.pass = pass;
    r.detail = sweep.str();
    report.results.push_back(r);
  }

  return report;
}

inline std::string validation_table(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& r : report.results) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
  }
  os << (report.all_pass() ? "all oracles passed\n" : "oracle failures detected\n");
  return os.str();
}

}  // namespace prism
