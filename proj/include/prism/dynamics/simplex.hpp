#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "prism/core/types.hpp"
#include "prism/errors.hpp"

namespace prism {

// Euclidean projection onto the probability simplex by sort-and-threshold:
// with u the coordinates sorted descending, find the largest j such that
// u_j + (1 - sum_{i<=j} u_i)/j > 0 and shift the surviving coordinates by
// that amount, clipping the rest to zero.
inline EmotionVector project_simplex(const RawAffect& e) {
  if (e.empty()) throw DomainError("cannot project an empty vector");
  for (double x : e) {
    if (!std::isfinite(x)) throw NumericError("non-finite component in simplex projection input");
  }

  std::vector<double> u(e);
  std::sort(u.begin(), u.end(), std::greater<double>());

  double running = 0.0;
  double tau = u[0] - 1.0;  // the j=0 candidate always qualifies
  for (std::size_t j = 0; j < u.size(); ++j) {
    running += u[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }

  std::vector<double> out(e.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    out[i] = std::max(e[i] - tau, 0.0);
    sum += out[i];
  }
  // Inputs near the double range can overflow the partial sums even though
  // every component is finite.
  if (!std::isfinite(sum) || sum <= 0.0) {
    throw NumericError("numeric overflow in simplex projection");
  }
  // Remove the O(eps) drift so the simplex invariant holds exactly enough
  // for downstream checks at 1e-9.
  if (std::abs(sum - 1.0) > 1e-15) {
    for (double& x : out) x /= sum;
  }
  return EmotionVector(std::move(out));
}

}  // namespace prism
