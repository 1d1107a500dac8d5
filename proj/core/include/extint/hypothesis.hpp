#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "extint/ks.hpp"
#include "extint/moments.hpp"
#include "extint/normseq.hpp"
#include "extint/pairstats.hpp"

namespace extint {

/// Max-distance test of equal mean vectors over the rows of a p x n matrix.
struct MeanTestResult {
  double statistic = 0.0;
  double threshold = 0.0;
  double alpha = 0.05;
  bool reject = false;
  Pair argmax;
  Normalizers normalizers;
};

/// q_{1-alpha} / c + b.
double mean_test_threshold(const Normalizers& norm, double alpha);

/// Known fourth moment. Needs regime.dnorm_choice == false (the skewness
/// correction needs the sixth moment; use the profile overload).
MeanTestResult mean_equality_test(const SampleMatrix& x, double m4, double alpha,
                                  const RegimeReport& regime, ExecPolicy exec = {});
MeanTestResult mean_equality_test(const SampleMatrix& x, const MomentProfile& profile,
                                  double alpha, const RegimeReport& regime,
                                  ExecPolicy exec = {});

/// ||mu_i - mu_j||^2 / sqrt(n max(log p, n)). Power tends to one when this
/// diverges.
double detectability_margin(double mu_diff_sq, std::uint64_t n, std::uint64_t p);

/// Empirical fourth moment of the column-centered pooled entries, divided by
/// the squared second moment. Plugging it into the test is outside the
/// known-moment guarantee.
double estimate_fourth_moment(const SampleMatrix& x);

enum class RegimeTag { I, II, III };

std::string to_string(RegimeTag tag);

/// Constants for the largest off-diagonal sample covariance entry W_n under an
/// equicorrelated normal population.
struct CovRegime {
  RegimeTag regime = RegimeTag::I;
  std::optional<double> lambda;
  double rho_n = 0.0;
  double mu_n = 0.0;
  double d_n = 0.0;
  double scale = 1.0;  // d_n in regime I, sqrt(2) rho_n otherwise
  TargetLaw limit_law = TargetLaw::gumbel();

  /// d_n (W - mu_n) in regime I, (W - mu_n) / (sqrt(2) rho_n) otherwise.
  double normalize(double w) const;
};

/// lambda_hint is the declared limit of rho_n sqrt(log p): 0 selects regime I,
/// a finite positive value regime II, +infinity regime III. Without a hint,
/// rho_n = 0 is regime I and rho_n > 0 (held fixed) regime III.
CovRegime cov_regime(double rho_n, std::uint64_t p, std::uint64_t n,
                     std::optional<double> lambda_hint = std::nullopt);

}  // namespace extint
