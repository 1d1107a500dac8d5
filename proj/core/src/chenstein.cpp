#include "extint/chenstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "extint/error.hpp"

namespace extint {

std::uint64_t neighborhood_size(std::uint64_t p) {
  if (p < 3) throw SizeError("neighborhood_size needs p >= 3");
  return 2 * (p - 2) + 1;
}

ChenSteinBound stein_bounds(std::uint64_t p, double marginal, double joint, double b3) {
  if (p < 3) throw SizeError("stein_bounds needs p >= 3");
  if (!(marginal >= 0.0 && marginal <= 1.0) || !(joint >= 0.0 && joint <= 1.0)) {
    throw DomainError("probabilities must lie in [0, 1]");
  }
  if (joint > marginal) throw DomainError("joint exceedance probability exceeds the marginal");
  if (!(b3 >= 0.0)) throw DomainError("b3 must be nonnegative");
  const double pairs = static_cast<double>(p) * static_cast<double>(p - 1) / 2.0;
  const double hood = static_cast<double>(neighborhood_size(p));

  ChenSteinBound out;
  out.lambda = pairs * marginal;
  if (!(out.lambda > 0.0)) throw DegenerateError("lambda = 0: no exceedances possible");
  out.b1 = pairs * hood * marginal * marginal;
  out.b2 = pairs * (hood - 1.0) * joint;
  out.b3 = b3;
  const double sum = out.b1 + out.b2 + out.b3;
  out.total_max_version = (1.0 + 1.0 / out.lambda) * sum;
  out.total_count_version = std::min(1.0, 1.0 / out.lambda) * sum;
  return out;
}

double poisson_pmf(std::uint64_t k, double lambda) {
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double empirical_tv_distance(std::span<const std::uint64_t> histogram, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Poisson intensity must be positive");
  const std::uint64_t total = std::accumulate(histogram.begin(), histogram.end(), std::uint64_t{0});
  if (total == 0) throw SizeError("empty count histogram");
  double half_l1 = 0.0;
  double covered = 0.0;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    const double pmf = poisson_pmf(k, lambda);
    covered += pmf;
    half_l1 += std::abs(static_cast<double>(histogram[k]) / static_cast<double>(total) - pmf);
  }
  // Poisson mass beyond the histogram, where the empirical law is zero.
  half_l1 += std::max(0.0, 1.0 - covered);
  return 0.5 * half_l1;
}

}  // namespace extint
