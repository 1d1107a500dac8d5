#pragma once

#include <cstdint>
#include <span>

namespace extint {

/// Stein terms and Poisson-approximation bounds for exceedance indicators
/// indexed by pairs, where B_alpha holds the pairs sharing an index with alpha.
struct ChenSteinBound {
  double lambda = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  /// (1 + 1/lambda)(b1 + b2 + b3): bound on |P(max <= t) - exp(-lambda)|.
  double total_max_version = 0.0;
  /// min(1, 1/lambda)(b1 + b2 + b3): bound on the count law's distance to
  /// Poisson(lambda).
  double total_count_version = 0.0;
};

/// |B_alpha| = 2p - 3, alpha included.
std::uint64_t neighborhood_size(std::uint64_t p);

/// Exchangeable pair structure: every pair exceeds with probability
/// `marginal`, every two pairs sharing one index jointly with probability
/// `joint`. b3 is 0 when indicators outside B_alpha are independent of alpha.
ChenSteinBound stein_bounds(std::uint64_t p, double marginal, double joint, double b3 = 0.0);

/// Total variation distance between an empirical count law and Poisson(lambda).
/// histogram[k] is the number of replications with count k.
double empirical_tv_distance(std::span<const std::uint64_t> histogram, double lambda);

/// Poisson(lambda) probability mass at k.
double poisson_pmf(std::uint64_t k, double lambda);

}  // namespace extint
