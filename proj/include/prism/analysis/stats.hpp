#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "prism/errors.hpp"

namespace prism {

// Fractional (average) ranks, 1-based; ties share the mean of the ranks
// they occupy.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

namespace stats_detail {
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double ma = sa / n, mb = sb / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va <= 0.0 || vb <= 0.0) throw DomainError("correlation undefined for constant input");
  return cov / std::sqrt(va * vb);
}

inline double normal_sf_twosided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }
}  // namespace stats_detail

struct CorrelationResult {
  double rho = 0.0;
  double p = 1.0;
};

// Spearman rank correlation with average-rank ties. The p-value is the exact
// permutation probability for n <= 8 and the usual t-approximation with
// n - 2 degrees of freedom above that.
inline CorrelationResult spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("spearman inputs must have equal length");
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("spearman needs at least 3 observations");

  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  CorrelationResult out;
  out.rho = stats_detail::pearson(rx, ry);

  if (n <= 8) {
    // Exact two-sided permutation distribution of rho under independence.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const double target = std::abs(out.rho) - 1e-12;
    std::uint64_t hits = 0, total = 0;
    std::vector<double> permuted(n);
    do {
      for (std::size_t i = 0; i < n; ++i) permuted[i] = ry[perm[i]];
      const double rho = stats_detail::pearson(rx, permuted);
      if (std::abs(rho) >= target) ++hits;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.p = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    const double denom = 1.0 - out.rho * out.rho;
    if (denom <= 0.0) {
      out.p = 0.0;
    } else {
      const double t = out.rho * std::sqrt((static_cast<double>(n) - 2.0) / denom);
      boost::math::students_t dist(static_cast<double>(n) - 2.0);
      out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    }
  }
  return out;
}

struct WilcoxonResult {
  double statistic = 0.0;  // W+, the positive-rank sum
  double p = 1.0;
  std::size_t n = 0;  // pairs remaining after zero removal
};

// Two-sided Wilcoxon signed-rank test. Exact null enumeration of the 2^n
// sign assignments for n <= 12; normal approximation with continuity and tie
// corrections beyond that.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& diffs) {
  std::vector<double> nonzero;
  for (double d : diffs) {
    if (d != 0.0) nonzero.push_back(d);
  }
  if (nonzero.empty()) throw DomainError("all differences are zero; test degenerate");
  if (nonzero.size() < 5) {
    throw DomainError("wilcoxon needs at least 5 nonzero differences, got " +
                      std::to_string(nonzero.size()));
  }
  const std::size_t n = nonzero.size();

  std::vector<double> abs_d(n);
  for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::abs(nonzero[i]);
  const std::vector<double> ranks = average_ranks(abs_d);

  WilcoxonResult out;
  out.n = n;
  double total_rank = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total_rank += ranks[i];
    if (nonzero[i] > 0.0) out.statistic += ranks[i];
  }
  const double mean_w = total_rank / 2.0;
  const double observed_dev = std::abs(out.statistic - mean_w);

  if (n <= 12) {
    const std::uint64_t assignments = 1ULL << n;
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < assignments; ++mask) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ULL << i)) w += ranks[i];
      }
      if (std::abs(w - mean_w) >= observed_dev - 1e-9) ++hits;
    }
    out.p = static_cast<double>(hits) / static_cast<double>(assignments);
  } else {
    const double nd = static_cast<double>(n);
    double tie_correction = 0.0;
    {
      std::vector<double> sorted = abs_d;
      std::sort(sorted.begin(), sorted.end());
      std::size_t i = 0;
      while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_correction += (t * t * t - t);
        i = j + 1;
      }
    }
    const double var_w = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_correction / 48.0;
    if (var_w <= 0.0) throw DomainError("wilcoxon variance degenerate (all ranks tied)");
    const double continuity = observed_dev > 0.5 ? 0.5 : 0.0;
    const double z = (observed_dev - continuity) / std::sqrt(var_w);
    out.p = stats_detail::normal_sf_twosided(z);
  }
  out.p = std::min(out.p, 1.0);
  return out;
}

}  // namespace prism
