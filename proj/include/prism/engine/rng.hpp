#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "prism/errors.hpp"

namespace prism {

// Counter-based substream generator. Each stream is keyed by
// (seed, agent, step, purpose) and produces words by hashing the key with a
// running counter, so any substream can be drawn independently of evaluation
// order or worker count.
namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

enum class RngPurpose : std::uint64_t {
  InitEmotion = 1,
  Diffusion = 2,
  Policy = 3,
  GraphGen = 4,
};

class SubstreamRng {
 public:
  using result_type = std::uint64_t;

  SubstreamRng(std::uint64_t seed, std::uint64_t agent, std::uint64_t step, RngPurpose purpose)
      : key_(mix_key(seed, agent, step, static_cast<std::uint64_t>(purpose))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return detail::splitmix64(key_ ^ (counter_++ * 0xD1B54A32D192ED03ULL)); }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller, self-contained so sequences do not
  // depend on the standard library's distribution implementation.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Marsaglia-Tsang gamma sampler (shape-only); alpha < 1 handled by the
  // boosting identity Gamma(a) = Gamma(a+1) * U^{1/a}.
  double gamma(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("gamma shape must be > 0");
    if (alpha < 1.0) {
      const double u = uniform();
      return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Symmetric Dirichlet(alpha) sample of dimension k.
  std::vector<double> dirichlet(double alpha, std::size_t k) {
    std::vector<double> out(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      out[i] = gamma(alpha);
      sum += out[i];
    }
    if (sum <= 0.0) {
      // Numerically possible only for tiny alpha; fall back to a point mass
      // on a uniformly drawn coordinate, the alpha -> 0 limit.
      const std::size_t pick = static_cast<std::size_t>(uniform() * static_cast<double>(k)) % k;
      std::fill(out.begin(), out.end(), 0.0);
      out[pick] = 1.0;
      return out;
    }
    for (double& x : out) x /= sum;
    return out;
  }

  // Categorical draw from non-negative weights summing to ~1.
  std::size_t categorical(const std::vector<double>& weights) {
    if (weights.empty()) throw DomainError("categorical draw over empty weights");
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw DomainError("categorical weights sum to zero");
    double u = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  static std::uint64_t mix_key(std::uint64_t seed, std::uint64_t agent, std::uint64_t step,
                               std::uint64_t purpose) {
    std::uint64_t k = detail::splitmix64(seed);
    k = detail::splitmix64(k ^ agent);
    k = detail::splitmix64(k ^ step);
    k = detail::splitmix64(k ^ purpose);
    return k;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace prism
