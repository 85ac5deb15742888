#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "prism/core/mbti.hpp"
#include "prism/core/types.hpp"
#include "prism/core/vocabulary.hpp"
#include "prism/errors.hpp"

namespace prism {

// Per-axis multiplier pair. Which side each value applies to is fixed by the
// field name; neutralize() erases the distinction.
struct MultiplierPair {
  double first = 1.0;   // E / S / T / J side
  double second = 1.0;  // I / N / F / P side

  void neutralize() {
    const double g = std::sqrt(first * second);
    first = second = g;
  }
};

// Scalar bases and dichotomy multipliers from which every per-type parameter
// set is synthesized. Shipped values are artifact config, not paper ground
// truth; tests assert orderings only.
struct DynamicsDefaults {
  double theta0 = 0.8;  // stiffness base, 1/time
  double sigma0 = 0.15; // volatility base, per sqrt(time)
  double psi0 = 0.08;   // susceptibility base, dimensionless
  double gamma0 = 0.7;  // activation threshold base

  MultiplierPair ei{0.7, 1.3};  // threshold: m_I > m_E
  MultiplierPair sn{0.8, 1.2};  // volatility
  MultiplierPair tf{0.6, 1.4};  // susceptibility: m_F > m_T
  MultiplierPair jp{1.5, 0.7};  // stiffness: m_J > m_P

  void validate_bases() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw ConfigError(std::string("dynamics base '") + name + "' must be > 0");
    };
    positive(theta0, "theta0");
    positive(sigma0, "sigma0");
    positive(psi0, "psi0");
    positive(gamma0, "gamma0");
    for (const auto* p : {&ei, &sn, &tf, &jp}) {
      if (!(p->first > 0.0) || !(p->second > 0.0))
        throw ConfigError("dichotomy multipliers must be > 0");
    }
  }

  // Full validation of user-supplied values. Neutralized (equal) pairs are
  // produced internally after this check, never accepted from config.
  void validate() const {
    validate_bases();
    if (!(jp.first > jp.second)) throw ConfigError("stiffness multipliers require m_J > m_P");
    if (!(tf.second > tf.first)) throw ConfigError("susceptibility multipliers require m_F > m_T");
    if (!(ei.second > ei.first)) throw ConfigError("threshold multipliers require m_I > m_E");
  }
};

// The per-type dynamical quartet plus activation threshold. Theta and Sigma
// are diagonal by construction; full matrices are rejected at config parse.
struct AgentParams {
  std::vector<double> theta_diag;              // K, strictly positive
  std::vector<double> sigma_diag;              // K, >= 0
  std::vector<std::array<double, 2>> psi;      // K x 2, (valence, arousal) columns
  EmotionVector mu;                            // baseline centroid, on the simplex
  double gamma = 0.0;                          // >= 0

  std::size_t dim() const { return theta_diag.size(); }
};

// Largest singular value of the K x 2 susceptibility matrix, via the 2x2
// Gram matrix eigenvalue in closed form.
inline double psi_spectral_norm(const std::vector<std::array<double, 2>>& psi) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (const auto& row : psi) {
    a += row[0] * row[0];
    b += row[0] * row[1];
    c += row[1] * row[1];
  }
  const double lam = 0.5 * ((a + c) + std::sqrt((a - c) * (a - c) + 4.0 * b * b));
  return std::sqrt(lam);
}

// Builds one type's parameters from the dichotomy multipliers. The valence
// column pushes mass toward same-signed emotions; the arousal column adds
// mass to non-neutral components in proportion to their arousal anchor.
// Pure: identical inputs give identical outputs.
inline AgentParams synthesize_params(const MbtiProfile& profile,
                                     const DynamicsDefaults& base,
                                     const Vocabulary& vocab,
                                     const EmotionVector* mu_prior = nullptr) {
  base.validate_bases();
  const std::size_t k = vocab.size();

  const double m_jp = profile.lifestyle == Lifestyle::J ? base.jp.first : base.jp.second;
  const double m_sn = profile.perceiving_fn == PerceivingFn::S ? base.sn.first : base.sn.second;
  const double m_tf = profile.judging_fn == JudgingFn::T ? base.tf.first : base.tf.second;
  const double m_ei = profile.attitude == Attitude::E ? base.ei.first : base.ei.second;

  AgentParams p;
  p.theta_diag.assign(k, base.theta0 * m_jp);
  p.sigma_diag.assign(k, base.sigma0 * m_sn);
  p.psi.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    p.psi[i] = {base.psi0 * m_tf * vocab.at(i).valence, base.psi0 * m_tf * vocab.at(i).arousal};
  }
  p.gamma = base.gamma0 * m_ei;
  if (mu_prior) {
    if (mu_prior->size() != k) throw ConfigError("prior baseline dimension != vocabulary size");
    p.mu = *mu_prior;
  } else {
    p.mu = EmotionVector::uniform(k);
  }
  return p;
}

// Neutralized copy of the defaults for ablation runs: each listed axis gets
// both multipliers replaced by their geometric mean.
enum class DichotomyAxis { EI, SN, TF, JP };

inline DynamicsDefaults neutralize_axes(DynamicsDefaults base,
                                        const std::vector<DichotomyAxis>& axes) {
  for (DichotomyAxis a : axes) {
    switch (a) {
      case DichotomyAxis::EI: base.ei.neutralize(); break;
      case DichotomyAxis::SN: base.sn.neutralize(); break;
      case DichotomyAxis::TF: base.tf.neutralize(); break;
      case DichotomyAxis::JP: base.jp.neutralize(); break;
    }
  }
  return base;
}

inline DichotomyAxis parse_axis(const std::string& name) {
  if (name == "EI" || name == "E/I") return DichotomyAxis::EI;
  if (name == "SN" || name == "S/N") return DichotomyAxis::SN;
  if (name == "TF" || name == "T/F") return DichotomyAxis::TF;
  if (name == "JP" || name == "J/P") return DichotomyAxis::JP;
  throw ConfigError("unknown dichotomy axis \"" + name + "\" (expected EI, SN, TF or JP)");
}

}  // namespace prism
