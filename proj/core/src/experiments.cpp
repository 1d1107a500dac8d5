#include "extint/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "extint/chenstein.hpp"
#include "extint/error.hpp"
#include "extint/gauss.hpp"
#include "extint/hypothesis.hpp"
#include "extint/ks.hpp"
#include "extint/normseq.hpp"

namespace extint {

std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::Interpoint: return "interpoint";
    case StatisticKind::Walk: return "walk";
    case StatisticKind::GaussianField: return "gaussian_field";
    case StatisticKind::CovEntry: return "cov_entry";
  }
  return "unknown";
}

const std::vector<double>& ExperimentReport::samples(const std::string& name) const {
  for (const auto& [key, values] : series) {
    if (key == name) return values;
  }
  throw ConfigError("no series named " + name);
}

double ExperimentReport::stat(const std::string& name) const {
  for (const auto& [key, value] : statistics) {
    if (key == name) return value;
  }
  throw ConfigError("no statistic named " + name);
}

bool ExperimentReport::has_stat(const std::string& name) const {
  return std::any_of(statistics.begin(), statistics.end(),
                     [&](const auto& kv) { return kv.first == name; });
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.replications == 0) throw ConfigError("replications must be >= 1");
  if (cfg.p < 3) throw ConfigError("p must be >= 3");
  if (cfg.statistic != StatisticKind::GaussianField && cfg.n < 1) {
    throw ConfigError("n must be >= 1");
  }
  const double p = static_cast<double>(cfg.p);
  const double n = cfg.statistic == StatisticKind::GaussianField ? 1.0 : static_cast<double>(cfg.n);
  const double cost = p * p * n * static_cast<double>(cfg.replications);
  if (cost > 1e12 && !cfg.allow_large) {
    throw ConfigError("p^2 n reps exceeds 1e12; set the override to run anyway");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Scaling {
  Normalizers norm;
  bool raw = true;  // c (v - b) when raw, d (v - d) otherwise

  double operator()(double v) const { return raw ? norm.c * (v - norm.b) : norm.d * (v - norm.d); }
};

Scaling interpoint_scaling(const ExperimentConfig& cfg, std::vector<std::string>& warnings) {
  const MomentProfile& profile = cfg.distribution.profile;
  RegimeReport regime;
  try {
    regime = classify_regime(profile, cfg.n, cfg.p);
  } catch (const NoConditionError& e) {
    warnings.push_back(std::string("inadmissible moments: ") + e.what() + "; using d_n1");
  }
  return {interpoint_normalizers(cfg.n, cfg.p, profile, regime), true};
}

Scaling walk_scaling(const ExperimentConfig& cfg) {
  Normalizers norm;
  norm.d = d_n1(pair_count(cfg.p));
  norm.b = norm.d;
  norm.c = norm.d;
  return {norm, false};
}

Scaling scaling_for(const ExperimentConfig& cfg, std::vector<std::string>& warnings) {
  switch (cfg.statistic) {
    case StatisticKind::Interpoint: return interpoint_scaling(cfg, warnings);
    case StatisticKind::Walk:
    case StatisticKind::GaussianField: return walk_scaling(cfg);
    case StatisticKind::CovEntry: break;
  }
  throw ConfigError("statistic not supported by this experiment: " + to_string(cfg.statistic));
}

// Raw pair field of one replication (interpoint distances, standardized walk
// or dense Gaussian field).
PairField replicate_field(const ExperimentConfig& cfg, std::size_t rep) {
  const std::uint64_t seed = replication_seed(cfg.master_seed, rep);
  switch (cfg.statistic) {
    case StatisticKind::Interpoint:
      return interpoint_sq_distances(sample_matrix(cfg.distribution, cfg.p, cfg.n, seed));
    case StatisticKind::Walk:
      return standardized_walks(sample_matrix(cfg.distribution, cfg.p, cfg.n, seed), cfg.walk,
                                cfg.walk_mean, cfg.walk_var);
    case StatisticKind::GaussianField: return equicorr_pair_field(cfg.p, cfg.rho, seed);
    case StatisticKind::CovEntry: break;
  }
  throw ConfigError("statistic not supported by this experiment: " + to_string(cfg.statistic));
}

// Correlation of two pair statistics sharing one index, when known in closed form.
std::optional<double> sharing_rho(const ExperimentConfig& cfg) {
  const MomentProfile& profile = cfg.distribution.profile;
  switch (cfg.statistic) {
    case StatisticKind::GaussianField: return cfg.rho;
    case StatisticKind::Interpoint: return profile.rho();
    case StatisticKind::Walk:
      if (cfg.walk.kind == WalkKind::Product) return 0.0;
      if (cfg.walk.kind == WalkKind::SqDiff) return profile.rho();
      return std::nullopt;
    case StatisticKind::CovEntry: break;
  }
  return std::nullopt;
}

void add_moments(ExperimentReport& report, const std::string& prefix, const std::vector<double>& v) {
  report.statistics.emplace_back(prefix + "mean", sample_mean(v));
  if (v.size() > 1) report.statistics.emplace_back(prefix + "sd", sample_sd(v));
}

}  // namespace

ExperimentReport gumbel_convergence_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "gumbel";
  const Scaling scale = scaling_for(cfg, report.warnings);
  std::vector<double> values(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    values[r] = scale(extremes(replicate_field(cfg, r)).max_value);
  });
  report.statistics.emplace_back("ks", ks_statistic(values, TargetLaw::gumbel()));
  add_moments(report, "", values);
  report.statistics.emplace_back("b", scale.norm.b);
  report.statistics.emplace_back("c", scale.norm.c);
  report.statistics.emplace_back("d", scale.norm.d);
  report.series.emplace_back("normalized_max", std::move(values));
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport joint_minmax_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.statistic == StatisticKind::Interpoint || cfg.statistic == StatisticKind::CovEntry) {
    throw ConfigError("joint max/min needs a walk or Gaussian field statistic");
  }
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "joint";
  const Scaling scale = scaling_for(cfg, report.warnings);
  std::vector<double> maxima(cfg.replications);
  std::vector<double> minima(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    const PairExtremes ext = normalized_extremes(replicate_field(cfg, r), scale.norm);
    maxima[r] = *ext.normalized_max;
    minima[r] = *ext.normalized_min;
  });
  report.statistics.emplace_back("ks_max", ks_statistic(maxima, TargetLaw::gumbel()));
  report.statistics.emplace_back("ks_min", ks_statistic(minima, TargetLaw::neg_gumbel()));
  report.statistics.emplace_back("rank_correlation",
                                 maxima.size() > 1 ? rank_correlation(maxima, minima) : 0.0);
  report.series.emplace_back("normalized_max", std::move(maxima));
  report.series.emplace_back("normalized_min", std::move(minima));
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport first_order_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "first-order";
  const double root_log_p = std::sqrt(std::log(static_cast<double>(cfg.p)));
  std::vector<double> values(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    double m = 0.0;
    if (cfg.statistic == StatisticKind::GaussianField) {
      Philox4x32 rng(replication_seed(cfg.master_seed, r));
      m = field_max(cfg.p, cfg.rho, rng);
    } else if (cfg.statistic == StatisticKind::Walk) {
      m = extremes(replicate_field(cfg, r)).max_value;
    } else {
      throw ConfigError("first-order experiment needs a walk or Gaussian field statistic");
    }
    values[r] = m / root_log_p;
  });
  add_moments(report, "", values);
  report.series.emplace_back("max_over_root_log_p", std::move(values));
  report.runtime_seconds = seconds_since(start);
  return report;
}

double mean_measure(const Region& region) {
  double mu = 0.0;
  for (const Interval& iv : region) {
    if (iv.empty()) continue;
    if (!std::isfinite(iv.lo)) throw ConfigError("regions must be bounded below");
    mu += std::exp(-iv.lo) - (std::isinf(iv.hi) ? 0.0 : std::exp(-iv.hi));
  }
  return mu;
}

ExperimentReport point_process_experiment(const ExperimentConfig& cfg,
                                          const std::vector<Region>& regions) {
  validate(cfg);
  if (regions.empty()) throw ConfigError("no regions given");
  for (const Region& region : regions) {
    if (region.empty()) throw ConfigError("empty region");
    for (const Interval& iv : region) {
      if (!(iv.hi > iv.lo) || std::isnan(iv.lo) || std::isnan(iv.hi) || !std::isfinite(iv.lo)) {
        throw ConfigError("malformed interval");
      }
    }
  }
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "pointprocess";
  const Scaling scale = scaling_for(cfg, report.warnings);
  const std::size_t reps = cfg.replications;
  std::vector<std::vector<double>> counts(regions.size(), std::vector<double>(reps));
  parallel_for(reps, cfg.threads, [&](std::size_t r) {
    PairField field = replicate_field(cfg, r);
    for (double& v : field.values) v = scale(v);
    for (std::size_t g = 0; g < regions.size(); ++g) {
      counts[g][r] = static_cast<double>(count_in_region(field, regions[g]));
    }
  });

  const std::optional<double> rho = sharing_rho(cfg);
  const double rdouble = static_cast<double>(reps);
  for (std::size_t g = 0; g < regions.size(); ++g) {
    const std::string key = "region" + std::to_string(g) + "_";
    const double mu = mean_measure(regions[g]);
    const double mean = sample_mean(counts[g]);
    const double se = reps > 1 ? sample_sd(counts[g]) / std::sqrt(rdouble) : 0.0;
    report.statistics.emplace_back(key + "expected", mu);
    report.statistics.emplace_back(key + "mean", mean);
    report.statistics.emplace_back(key + "se", se);

    const auto top = static_cast<std::size_t>(*std::max_element(counts[g].begin(), counts[g].end()));
    std::vector<std::uint64_t> hist(top + 1, 0);
    for (double c : counts[g]) ++hist[static_cast<std::size_t>(c)];
    if (mu > 0.0) {
      report.statistics.emplace_back(key + "tv", empirical_tv_distance(hist, mu));
      double tv_se = 0.0;
      for (std::uint64_t h : hist) {
        const double ph = static_cast<double>(h) / rdouble;
        tv_se += std::sqrt(ph * (1.0 - ph) / rdouble);
      }
      report.statistics.emplace_back(key + "tv_se", 0.5 * tv_se);
    }
    const bool tail = regions[g].size() == 1 && std::isinf(regions[g][0].hi);
    if (tail && rho) {
      const double t = scale.norm.d + regions[g][0].lo / scale.norm.d;
      const double marginal = std_normal_tail(t);
      const double joint = bivariate_orthant_prob(*rho, t);
      const ChenSteinBound bound = stein_bounds(cfg.p, marginal, std::min(joint, marginal));
      report.statistics.emplace_back(key + "stein_lambda", bound.lambda);
      report.statistics.emplace_back(key + "stein_count_bound", bound.total_count_version);
      report.statistics.emplace_back(key + "stein_max_bound", bound.total_max_version);
    }
    report.histograms.emplace_back("region" + std::to_string(g), std::move(hist));
  }
  for (std::size_t g = 0; g < regions.size(); ++g) {
    for (std::size_t h = g + 1; h < regions.size(); ++h) {
      double corr = 0.0;
      try {
        corr = correlation(counts[g], counts[h]);
      } catch (const Error&) {
        report.warnings.push_back("constant counts; correlation set to 0");
      }
      report.statistics.emplace_back("corr_" + std::to_string(g) + "_" + std::to_string(h), corr);
    }
  }
  for (std::size_t g = 0; g < regions.size(); ++g) {
    report.series.emplace_back("region" + std::to_string(g) + "_count", std::move(counts[g]));
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport order_stats_experiment(const ExperimentConfig& cfg, std::size_t k) {
  validate(cfg);
  if (k == 0 || k > pair_count(cfg.p)) throw SizeError("k must lie in [1, p~]");
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "orderstats";
  const Scaling scale = scaling_for(cfg, report.warnings);
  std::vector<std::vector<double>> order(k, std::vector<double>(cfg.replications));
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    const std::vector<RankedValue> top = top_k(replicate_field(cfg, r), k);
    for (std::size_t i = 0; i < k; ++i) order[i][r] = scale(top[i].value);
  });
  for (std::size_t i = 0; i < k; ++i) {
    report.statistics.emplace_back(
        "ks_order" + std::to_string(i + 1),
        ks_statistic(order[i], TargetLaw::neg_log_gamma(static_cast<unsigned>(i + 1))));
  }
  for (std::size_t i = 0; i < k; ++i) {
    report.series.emplace_back("order" + std::to_string(i + 1), std::move(order[i]));
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport v_moment_experiment(const ExperimentConfig& cfg, double x) {
  validate(cfg);
  if (!(cfg.rho >= 0.0 && cfg.rho <= 0.5)) throw DomainError("rho must lie in [0, 1/2]");
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "vmoment";
  const std::uint64_t pairs = pair_count(cfg.p);
  const double d = d_n1(pairs);
  const double t = d + x / d;
  std::vector<double> v(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    Philox4x32 rng(replication_seed(cfg.master_seed, r));
    v[r] = static_cast<double>(field_exceedances(cfg.p, cfg.rho, t, rng));
  });
  std::vector<double> v2(v.size());
  std::transform(v.begin(), v.end(), v2.begin(), [](double c) { return c * c; });

  const double rdouble = static_cast<double>(cfg.replications);
  const double pt = static_cast<double>(pairs);
  const double pd = static_cast<double>(cfg.p);
  const double marginal = std_normal_tail(t);
  const double joint = bivariate_orthant_prob(cfg.rho, t);
  const double exact_mean = pt * marginal;
  const double exact_second =
      exact_mean + pt * 2.0 * (pd - 2.0) * joint + pt * (pt - 2.0 * pd + 3.0) * marginal * marginal;
  const VMoments asym = v_moment_asymptotes(pd, cfg.rho, x);

  report.statistics.emplace_back("threshold", t);
  report.statistics.emplace_back("mean", sample_mean(v));
  report.statistics.emplace_back("mean_se", cfg.replications > 1 ? sample_sd(v) / std::sqrt(rdouble) : 0.0);
  report.statistics.emplace_back("second_moment", sample_mean(v2));
  report.statistics.emplace_back("second_moment_se",
                                 cfg.replications > 1 ? sample_sd(v2) / std::sqrt(rdouble) : 0.0);
  report.statistics.emplace_back("asymptotic_mean", asym.mean);
  report.statistics.emplace_back("asymptotic_second_moment", asym.second_moment);
  report.statistics.emplace_back("exact_mean", exact_mean);
  report.statistics.emplace_back("exact_second_moment", exact_second);
  report.statistics.emplace_back("growth_branch", asym.growth_branch ? 1.0 : 0.0);
  report.series.emplace_back("count", std::move(v));
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport cov_regime_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "cov-regime";
  const CovRegime regime = cov_regime(cfg.rho, cfg.p, cfg.n, cfg.lambda_hint);
  std::vector<double> values(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    const SampleMatrix y =
        equicorr_normal_sample(cfg.n, cfg.p, cfg.rho, replication_seed(cfg.master_seed, r));
    values[r] = regime.normalize(cov_max_offdiag(y).value);
  });
  report.statistics.emplace_back("ks", ks_statistic(values, regime.limit_law));
  add_moments(report, "", values);
  report.statistics.emplace_back("mu_n", regime.mu_n);
  report.statistics.emplace_back("scale", regime.scale);
  report.statistics.emplace_back("d_n", regime.d_n);
  report.series.emplace_back("normalized", std::move(values));
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport mean_test_experiment(const ExperimentConfig& cfg, double alpha, double shift_sq) {
  validate(cfg);
  if (!(shift_sq >= 0.0)) throw DomainError("shift must be nonnegative");
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "meantest";
  const double m4 = cfg.distribution.profile.m4();
  const double delta = std::sqrt(shift_sq / static_cast<double>(cfg.n));
  RegimeReport regime;
  regime.dnorm_choice = false;
  std::vector<double> stat(cfg.replications);
  std::vector<double> reject(cfg.replications);
  double threshold = 0.0;
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    const SampleMatrix x = sample_matrix(cfg.distribution, cfg.p, cfg.n,
                                         replication_seed(cfg.master_seed, r));
    std::vector<double> data(x.data().begin(), x.data().end());
    for (std::size_t c = 0; c < cfg.n; ++c) data[c] += delta;
    const MeanTestResult res =
        mean_equality_test(SampleMatrix(cfg.p, cfg.n, std::move(data)), m4, alpha, regime);
    stat[r] = res.statistic;
    reject[r] = res.reject ? 1.0 : 0.0;
    if (r == 0) threshold = res.threshold;
  });
  const double rate = sample_mean(reject);
  report.statistics.emplace_back("rejection_rate", rate);
  report.statistics.emplace_back(
      "rejection_se", std::sqrt(rate * (1.0 - rate) / static_cast<double>(cfg.replications)));
  report.statistics.emplace_back("threshold", threshold);
  report.statistics.emplace_back("margin", detectability_margin(shift_sq, cfg.n, cfg.p));
  report.series.emplace_back("statistic", std::move(stat));
  report.series.emplace_back("reject", std::move(reject));
  report.runtime_seconds = seconds_since(start);
  return report;
}

}  // namespace extint
