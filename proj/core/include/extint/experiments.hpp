#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extint/pairstats.hpp"
#include "extint/sampling.hpp"

namespace extint {

enum class StatisticKind { Interpoint, Walk, GaussianField, CovEntry };

std::string to_string(StatisticKind kind);

struct ExperimentConfig {
  EntryDistribution distribution = EntryDistribution::preset(EntryKind::Gaussian);
  std::size_t n = 1000;
  std::size_t p = 60;
  std::size_t replications = 1000;
  std::uint64_t master_seed = 1;
  StatisticKind statistic = StatisticKind::Interpoint;
  // Walk statistic: summand and its mean / variance under the entry law.
  WalkFunction walk = WalkFunction::product();
  double walk_mean = 0.0;
  double walk_var = 1.0;
  // Gaussian field sharing correlation, or population equicorrelation rho_n.
  double rho = 0.0;
  std::optional<double> lambda_hint;
  unsigned threads = 1;
  // Lifts the p^2 n reps <= 1e12 guardrail.
  bool allow_large = false;
};

struct ExperimentReport {
  std::string experiment;
  // Per-replication series, each of length `replications`, in replication order.
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::vector<std::pair<std::string, double>> statistics;
  // Histograms: entry k counts replications with k points in the region.
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> histograms;
  std::vector<std::string> warnings;
  double runtime_seconds = 0.0;

  const std::vector<double>& samples(const std::string& name) const;
  double stat(const std::string& name) const;
  bool has_stat(const std::string& name) const;
};

/// Throws ConfigError on zero replications, sizes below 3 or a configuration
/// past the desk-scale guardrail.
void validate(const ExperimentConfig& cfg);

/// c (M - b) per replication for the interpoint statistic, or d (max T - d)
/// for a walk; KS against the Gumbel law.
ExperimentReport gumbel_convergence_experiment(const ExperimentConfig& cfg);

/// (d (max T - d), d (min T + d)) per replication with marginal KS distances
/// and their rank correlation.
ExperimentReport joint_minmax_experiment(const ExperimentConfig& cfg);

/// max / sqrt(log p) per replication for a walk or a Gaussian pair field.
ExperimentReport first_order_experiment(const ExperimentConfig& cfg);

/// A region is a finite union of intervals on the normalized scale; its
/// mean measure is the sum of exp(-lo) - exp(-hi).
using Region = std::vector<Interval>;
double mean_measure(const Region& region);

/// Exceedance counts of the normalized field in each region.
ExperimentReport point_process_experiment(const ExperimentConfig& cfg,
                                          const std::vector<Region>& regions);

/// Top-k normalized values; the i-th is compared with the law of -log Gamma_i.
ExperimentReport order_stats_experiment(const ExperimentConfig& cfg, std::size_t k);

/// V = #{i < j : d (Y_ij - d) > x} for the Gaussian pair field at cfg.rho.
ExperimentReport v_moment_experiment(const ExperimentConfig& cfg, double x);

/// Normalized largest off-diagonal sample covariance entry per replication.
ExperimentReport cov_regime_experiment(const ExperimentConfig& cfg);

/// Rejection rate of the max-distance mean test. Row 0 is shifted by a constant
/// vector of squared norm shift_sq.
ExperimentReport mean_test_experiment(const ExperimentConfig& cfg, double alpha,
                                      double shift_sq);

}  // namespace extint
