#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "extint/error.hpp"
#include "extint/gauss.hpp"

using namespace extint;

TEST(Gauss, NormalBasics) {
  EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_tail(1.959964), 0.024999999096442404, 1e-15);
  EXPECT_NEAR(std_normal_pdf(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-16);
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    if (x <= 0.0) {
      EXPECT_NEAR(std_normal_quantile(std_normal_cdf(x)), x, 1e-10) << x;
    } else {
      EXPECT_NEAR(std_normal_tail_quantile(std_normal_tail(x)), x, 1e-10) << x;
    }
    EXPECT_NEAR(std_normal_cdf(x) + std_normal_tail(x), 1.0, 1e-15);
  }
  EXPECT_THROW(std_normal_quantile(0.0), DomainError);
  EXPECT_THROW(std_normal_quantile(1.0), DomainError);
}

TEST(Gauss, FarTail) {
  // Reference values of Phibar from mpmath at 30 digits.
  EXPECT_NEAR(std_normal_tail(8.0) / 6.2209605742717841e-16, 1.0, 1e-13);
  EXPECT_NEAR(std_normal_tail(20.0) / 2.7536241186062337e-89, 1.0, 1e-13);
  EXPECT_NEAR(std_normal_tail_quantile(6.2209605742717841e-16), 8.0, 1e-10);
  EXPECT_NEAR(std_normal_tail_quantile(1e-300), 37.047096299361201, 1e-8);
}

TEST(Gauss, Gumbel) {
  EXPECT_NEAR(gumbel_cdf(0.0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(gumbel_quantile(0.05), 2.9701952490421646, 1e-13);
  EXPECT_NEAR(gumbel_quantile(1.0 - std::exp(-1.0)), 0.0, 1e-14);
  EXPECT_THROW(gumbel_quantile(0.0), DomainError);
  EXPECT_THROW(gumbel_quantile(1.0), DomainError);
  for (double x = -2.0; x <= 5.0; x += 0.125) {
    EXPECT_NEAR(gumbel_quantile(1.0 - gumbel_cdf(x)), x, 1e-10) << x;
  }
}

TEST(Gauss, Asymptote) {
  const TailAsymptote a = equicorr_min_tail_asymptote(2, 0.25, 3.0);
  EXPECT_NEAR(a.coefficient, 0.028537242780624991, 1e-15);
  EXPECT_NEAR(a.exponent_arg, -7.2, 1e-14);
  EXPECT_NEAR(a.value, 2.1305500470214466e-05, 1e-18);
  EXPECT_NEAR(a.value, a.coefficient * std::exp(a.exponent_arg), 1e-12 * a.value);

  for (double t : {2.0, 4.0, 6.0}) {
    const TailAsymptote z = equicorr_min_tail_asymptote(2, 0.0, t);
    const double mills = std_normal_pdf(t) / t;
    EXPECT_NEAR(z.value / (mills * mills), 1.0, 1e-12);
  }
  EXPECT_NEAR(equicorr_inverse_sum(2, 0.5), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(equicorr_determinant(3, 0.2), 0.8 * 0.8 * 1.4, 1e-15);
  EXPECT_THROW(equicorr_min_tail_asymptote(2, 1.0, 3.0), DegenerateError);
  EXPECT_THROW(equicorr_min_tail_asymptote(3, -0.5, 3.0), DegenerateError);
}

TEST(Gauss, Orthant) {
  EXPECT_NEAR(bivariate_orthant_prob(0.0, 0.0), 0.25, 1e-12);
  EXPECT_NEAR(bivariate_orthant_prob(0.5, 0.0), 1.0 / 3.0, 1e-12);
  for (double rho : {-0.7, -0.2, 0.3, 0.9}) {
    EXPECT_NEAR(bivariate_orthant_prob(rho, 0.0), 0.25 + std::asin(rho) / (2.0 * std::numbers::pi),
                1e-12);
  }
  for (double t : {-2.0, -0.5, 1.0, 3.0, 5.5}) {
    const double tail = std_normal_tail(t);
    EXPECT_NEAR(bivariate_orthant_prob(0.0, t), tail * tail, 1e-12) << t;
  }
  EXPECT_THROW(bivariate_orthant_prob(1.0, 0.0), DomainError);
  EXPECT_THROW(bivariate_orthant_prob(-1.0, 0.0), DomainError);
}

TEST(Gauss, OrthantReferenceValues) {
  // mpmath quadrature at 30 digits.
  EXPECT_NEAR(bivariate_orthant_prob(0.25, 5.0) / 1.9111546883952704e-11, 1.0, 1e-9);
  EXPECT_NEAR(bivariate_orthant_prob(1.0 / 3.0, 5.0) / 7.6978533993137369e-11, 1.0, 1e-9);
}

TEST(Gauss, OrthantVersusAsymptote) {
  const double expected[] = {0.92937413109780423, 0.90254937009615446, 0.89136856512338466};
  int k = 0;
  for (double rho : {0.0, 0.25, 1.0 / 3.0}) {
    const double ratio =
        bivariate_orthant_prob(rho, 5.0) / equicorr_min_tail_asymptote(2, rho, 5.0).value;
    EXPECT_NEAR(ratio, expected[k++], 1e-8);
    EXPECT_GE(ratio, 0.85);
    EXPECT_LE(ratio, 1.15);
  }
}

TEST(Gauss, SlepianMonotone) {
  for (double t : {0.0, 0.5, 1.5, 3.0, 5.0}) {
    double prev = -1.0;
    for (double rho = -0.9; rho < 0.95; rho += 0.05) {
      const double v = bivariate_orthant_prob(rho, t);
      EXPECT_GE(v, prev - 1e-15) << t << " " << rho;
      prev = v;
    }
  }
}

TEST(Gauss, LargeDeviation) {
  EXPECT_DOUBLE_EQ(ld_correction_factor(3.0, 50, 0.0), 1.0);
  EXPECT_NEAR(ld_correction_factor(2.0, 100, 2.828427), 1.4580845174804959, 1e-12);
  double prev = 0.0;
  for (double x = 0.0; x < 4.0; x += 0.5) {
    const double f = ld_correction_factor(x, 100, 1.0);
    EXPECT_GT(f, prev);
    prev = f;
  }
}

TEST(Gauss, RateTerms) {
  const double p = std::exp(10.0);
  const RateBoundTerms third = rate_bound_terms(p, 1e6, 1.0 / 3.0);
  EXPECT_NEAR(third.dependence, std::pow(10.0, -0.25), 1e-12);
  EXPECT_NEAR(third.normal, 0.031622776601683793, 1e-14);
  EXPECT_NEAR(rate_bound_terms(p, 1e6, 0.0).dependence, 1.0 / p, 1e-18);
  EXPECT_NEAR(third.gumbel, std::pow(std::log(10.0), 2) / 10.0, 1e-14);
}

TEST(Gauss, VMoments) {
  const VMoments low = v_moment_asymptotes(3000, 0.2, 0.0);
  EXPECT_DOUBLE_EQ(low.mean, 1.0);
  EXPECT_DOUBLE_EQ(low.second_moment, 2.0);
  EXPECT_FALSE(low.growth_branch);
  const VMoments high = v_moment_asymptotes(std::exp(27.0), 0.5, 0.0);
  EXPECT_TRUE(high.growth_branch);
  EXPECT_NEAR(high.second_moment, 279.21651945626330, 1e-8);
  EXPECT_NEAR(v_second_moment_growth(std::exp(27.0), 0.5) * 3.0 / std::exp(9.0), 0.10337416789158601,
              1e-13);
  // At rho = 1/3 the growth expression is constant * (log p)^{-1/4}.
  const double c = std::pow(4.0 / 3.0, 1.5) / (8.0 * std::numbers::pi * std::sqrt(2.0 / 3.0));
  for (double lp : {10.0, 100.0, 600.0}) {
    EXPECT_NEAR(v_second_moment_growth(std::exp(lp), 1.0 / 3.0), c * std::pow(lp, -0.25), 1e-12);
  }
  EXPECT_THROW(v_moment_asymptotes(100, 0.6, 0.0), DomainError);
  EXPECT_THROW(v_moment_asymptotes(100, -0.1, 0.0), DomainError);
}
