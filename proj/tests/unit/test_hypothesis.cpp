#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "extint/error.hpp"
#include "extint/gauss.hpp"
#include "extint/hypothesis.hpp"
#include "extint/sampling.hpp"

using namespace extint;

namespace {

// Row 0 holds `value` in every coordinate, the others are zero, so the
// largest squared distance is n value^2.
SampleMatrix spike(std::size_t p, std::size_t n, double value) {
  std::vector<double> v(p * n, 0.0);
  for (std::size_t l = 0; l < n; ++l) v[l] = value;
  return {p, n, std::move(v)};
}

}  // namespace

TEST(Hypothesis, Threshold) {
  const MomentProfile g = preset_profile("gaussian");
  const RegimeReport reg = classify_regime(g, 100, 10);
  const Normalizers norm = interpoint_normalizers(100, 10, g, reg);
  EXPECT_NEAR(mean_test_threshold(norm, 0.05), 299.03303426333874, 1e-9);
  EXPECT_NEAR(mean_test_threshold(norm, 0.05), gumbel_quantile(0.05) / norm.c + norm.b, 1e-12);
  EXPECT_THROW(mean_test_threshold(norm, 0.0), DomainError);
  EXPECT_THROW(mean_test_threshold(norm, 1.0), DomainError);
}

TEST(Hypothesis, RejectsAboveThreshold) {
  const MomentProfile g = preset_profile("gaussian");
  const RegimeReport reg = classify_regime(g, 100, 10);

  const MeanTestResult hi = mean_equality_test(spike(10, 100, std::sqrt(3.1)), 3.0, 0.05, reg);
  EXPECT_NEAR(hi.statistic, 310.0, 1e-9);
  EXPECT_TRUE(hi.reject);
  EXPECT_EQ(hi.argmax, (Pair{0, 1}));

  const MeanTestResult lo = mean_equality_test(spike(10, 100, 2.5 / std::sqrt(2.5)), 3.0, 0.05, reg);
  EXPECT_NEAR(lo.statistic, 250.0, 1e-9);
  EXPECT_FALSE(lo.reject);

  const MeanTestResult via_profile = mean_equality_test(spike(10, 100, std::sqrt(3.1)), g, 0.05, reg);
  EXPECT_DOUBLE_EQ(via_profile.threshold, hi.threshold);
}

TEST(Hypothesis, Errors) {
  const MomentProfile g = preset_profile("gaussian");
  const RegimeReport reg = classify_regime(g, 100, 10);
  EXPECT_THROW(mean_equality_test(spike(10, 100, 1.0), 3.0, 1.5, reg), DomainError);
  EXPECT_THROW(mean_equality_test(spike(2, 100, 1.0), 3.0, 0.05, reg), SizeError);
  RegimeReport skewed = reg;
  skewed.dnorm_choice = true;
  EXPECT_THROW(mean_equality_test(spike(10, 100, 1.0), 3.0, 0.05, skewed), UnavailableError);
}

TEST(Hypothesis, ShiftInvariance) {
  const SampleMatrix x = sample_matrix(EntryDistribution::preset(EntryKind::Gaussian), 12, 50, 5);
  std::vector<double> shifted(x.data().begin(), x.data().end());
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t l = 0; l < 50; ++l) shifted[i * 50 + l] += 3.0 + 0.1 * static_cast<double>(l);
  }
  const MomentProfile g = preset_profile("gaussian");
  const RegimeReport reg = classify_regime(g, 50, 12);
  const MeanTestResult a = mean_equality_test(x, 3.0, 0.05, reg);
  const MeanTestResult b = mean_equality_test(SampleMatrix(12, 50, shifted), 3.0, 0.05, reg);
  EXPECT_NEAR(a.statistic, b.statistic, 1e-9 * a.statistic);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.reject, b.reject);
}

TEST(Hypothesis, DetectabilityMargin) {
  EXPECT_NEAR(detectability_margin(1000.0, 100, 100), 10.0, 1e-12);
  EXPECT_EQ(detectability_margin(0.0, 100, 100), 0.0);
  EXPECT_NEAR(detectability_margin(1000.0, 200, 100), 5.0, 1e-12);
  // log p > n
  EXPECT_NEAR(detectability_margin(10.0, 2, 1000), 10.0 / std::sqrt(2.0 * std::log(1000.0)), 1e-12);
}

TEST(Hypothesis, FourthMomentEstimate) {
  // Centering p Rademacher rows: E y^2 = 1 - 1/p and
  // E y^4 = a^4 + 6 a^2 (p - 1) / p^2 + ((p - 1) + 3 (p - 1) (p - 2)) / p^4, a = 1 - 1/p.
  const double p = 20.0;
  const double a = 1.0 - 1.0 / p;
  const double m4 = std::pow(a, 4) + 6.0 * a * a * (p - 1.0) / (p * p) +
                    ((p - 1.0) + 3.0 * (p - 1.0) * (p - 2.0)) / std::pow(p, 4);
  const SampleMatrix r = sample_matrix(EntryDistribution::preset(EntryKind::Rademacher), 20, 2000, 3);
  EXPECT_NEAR(estimate_fourth_moment(r), m4 / (a * a), 0.01);
  const SampleMatrix g = sample_matrix(EntryDistribution::preset(EntryKind::Gaussian), 50, 400, 3);
  EXPECT_NEAR(estimate_fourth_moment(g), 3.0, 0.15);
}

TEST(Hypothesis, CovRegimeIndependent) {
  const CovRegime r = cov_regime(0.0, 60, 500);
  EXPECT_EQ(r.regime, RegimeTag::I);
  EXPECT_EQ(r.limit_law.kind, LawKind::Gumbel);
  EXPECT_NEAR(r.mu_n, r.d_n, 1e-15);
  EXPECT_NEAR(r.d_n, d_n1(pair_count(60)), 1e-15);
  EXPECT_NEAR(r.scale, r.d_n, 1e-15);
  EXPECT_NEAR(r.normalize(r.mu_n + 1.0), r.d_n, 1e-12);
}

TEST(Hypothesis, CovRegimeTwo) {
  const std::uint64_t p = 200;
  const double rho = 1.0 / std::sqrt(std::log(200.0));
  const CovRegime r = cov_regime(rho, p, 1000, 1.0);
  EXPECT_EQ(r.regime, RegimeTag::II);
  EXPECT_EQ(r.limit_law.kind, LawKind::Convolution);
  EXPECT_DOUBLE_EQ(r.limit_law.lambda, 1.0);
  EXPECT_NEAR(r.scale, std::sqrt(2.0) * rho, 1e-15);
  const double dn = d_n1(pair_count(p));
  const double mu = std::sqrt(1000.0) * rho + (1.0 - rho) * dn +
                    2.0 * std::sqrt(rho * (1.0 - rho)) * std::sqrt(2.0 * std::log(200.0));
  EXPECT_NEAR(r.mu_n, mu, 1e-12);
}

TEST(Hypothesis, CovRegimeThree) {
  const CovRegime fixed = cov_regime(0.3, 60, 500);
  EXPECT_EQ(fixed.regime, RegimeTag::III);
  EXPECT_EQ(fixed.limit_law.kind, LawKind::Normal);
  const CovRegime hinted = cov_regime(0.3, 60, 500, std::numeric_limits<double>::infinity());
  EXPECT_EQ(hinted.regime, RegimeTag::III);
  EXPECT_EQ(to_string(RegimeTag::II), "II");
}

TEST(Hypothesis, CovRegimeErrors) {
  EXPECT_THROW(cov_regime(0.5, 60, 500), DomainError);
  EXPECT_THROW(cov_regime(-0.1, 60, 500), DomainError);
  EXPECT_THROW(cov_regime(0.0, 60, 500, 1.0), ConfigError);
}
