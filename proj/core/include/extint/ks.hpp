#pragma once

#include <span>
#include <string>
#include <vector>

namespace extint {

enum class LawKind { Gumbel, NegGumbel, Normal, Convolution, NegLogGamma, Uniform01 };

/// Continuous limit law. Convolution is N(0,1) + G / (sqrt(8) lambda) with G
/// standard Gumbel; NegLogGamma(k) is the law of -log(E_1 + ... + E_k).
struct TargetLaw {
  LawKind kind = LawKind::Gumbel;
  double lambda = 1.0;
  unsigned k = 1;

  static TargetLaw gumbel() { return {LawKind::Gumbel, 1.0, 1}; }
  static TargetLaw neg_gumbel() { return {LawKind::NegGumbel, 1.0, 1}; }
  static TargetLaw normal() { return {LawKind::Normal, 1.0, 1}; }
  static TargetLaw convolution(double lambda);
  static TargetLaw neg_log_gamma(unsigned k);
  static TargetLaw uniform01() { return {LawKind::Uniform01, 1.0, 1}; }

  std::string name() const;
};

double target_cdf(const TargetLaw& law, double x);

/// sup_x |F_n(x) - F(x)|.
double ks_statistic(std::span<const double> samples, const TargetLaw& law);

/// sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Spearman correlation with average ranks for ties.
double rank_correlation(std::span<const double> a, std::span<const double> b);

double sample_mean(std::span<const double> v);
/// Unbiased sample standard deviation.
double sample_sd(std::span<const double> v);
/// Pearson correlation.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace extint
