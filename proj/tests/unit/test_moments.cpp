#include <gtest/gtest.h>

#include <cmath>

#include "extint/error.hpp"
#include "extint/moments.hpp"
#include "extint/pairstats.hpp"

using namespace extint;

TEST(Moments, RhoFromFourthMoment) {
  EXPECT_DOUBLE_EQ(rho_from_fourth_moment(1.0), 0.0);
  EXPECT_DOUBLE_EQ(rho_from_fourth_moment(3.0), 0.25);
  EXPECT_NEAR(rho_from_fourth_moment(5.0), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(rho_from_fourth_moment(0.9), DomainError);
}

TEST(Moments, RhoIncreasingAndBelowHalf) {
  double prev = -1.0;
  for (double m4 = 1.0; m4 < 1e6; m4 *= 1.7) {
    const double r = rho_from_fourth_moment(m4);
    EXPECT_GT(r, prev);
    EXPECT_LT(r, 0.5);
    prev = r;
  }
}

TEST(Moments, KappaTilde) {
  EXPECT_NEAR(kappa_tilde(0, 3, 15), 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(kappa_tilde(0, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(kappa_tilde(0.4, 3, 15), kappa_tilde(-0.4, 3, 15));
  EXPECT_NEAR(preset_profile("uniform").kappa_tilde(), 1.5178280493083563, 1e-13);
  EXPECT_NEAR(preset_profile("threepoint5").kappa_tilde(), 2.8867513459481287, 1e-13);
  const MomentProfile no_m6(0, 3, std::nullopt, MomentClass::poly(4));
  EXPECT_THROW(no_m6.kappa_tilde(), UnavailableError);
}

TEST(Moments, ProfileValidation) {
  EXPECT_THROW(MomentProfile(0, 0.5, std::nullopt, MomentClass::poly(4)), DomainError);
  EXPECT_THROW(MomentProfile(0, 3, 4.0, MomentClass::poly(4)), DomainError);
  EXPECT_THROW(MomentProfile(0, 3, 15.0, MomentClass::poly(4), 2.0), DomainError);
  EXPECT_THROW(preset_profile("cauchy"), ConfigError);
}

TEST(Moments, Presets) {
  EXPECT_DOUBLE_EQ(preset_profile("rademacher").rho(), 0.0);
  EXPECT_DOUBLE_EQ(preset_profile("gaussian").rho(), 0.25);
  EXPECT_NEAR(preset_profile("uniform").rho(), 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(preset_profile("threepoint5").rho(), 1.0 / 3.0, 1e-15);
}

TEST(Moments, ClassifyRegime) {
  const RegimeReport b4 =
      classify_regime(MomentProfile(0, 5, 25, MomentClass::bounded(std::sqrt(5.0))), 1000, 60);
  EXPECT_EQ(b4.condition, Condition::B4);
  EXPECT_NEAR(b4.rate_exponent, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(b4.dnorm_choice);

  const RegimeReport b2 =
      classify_regime(MomentProfile(0, 3, 15, MomentClass::subexp(0.6, 1)), 1000, 60);
  EXPECT_EQ(b2.condition, Condition::B2);
  EXPECT_NEAR(b2.rate_exponent, 0.6 / 1.4, 1e-15);
  EXPECT_TRUE(b2.dnorm_choice);

  const RegimeReport b1 = classify_regime(MomentProfile(0, 3, 15, MomentClass::poly(6)), 1000, 60);
  EXPECT_EQ(b1.condition, Condition::B1);
  EXPECT_DOUBLE_EQ(b1.rate_exponent, 1.0);
  EXPECT_FALSE(b1.dnorm_choice);

  EXPECT_THROW(classify_regime(MomentProfile(0, 6, 40, MomentClass::subexp(0.5, 1)), 100, 10),
               NoConditionError);
  EXPECT_THROW(classify_regime(MomentProfile(0, 6, 40, MomentClass::bounded(3)), 100, 10),
               NoConditionError);
}

TEST(Moments, DnormOnlyForB2AboveHalf) {
  for (double r : {0.2, 0.5, 0.55, 0.9}) {
    const RegimeReport rep =
        classify_regime(MomentProfile(0, 3, 15, MomentClass::subexp(r, 1)), 1000, 60);
    EXPECT_EQ(rep.dnorm_choice, rep.condition == Condition::B2 && r > 0.5) << r;
  }
}

TEST(Moments, PairCovarianceSmall) {
  const Eigen::MatrixXd c3 = pair_covariance_matrix(3, 0.2);
  ASSERT_EQ(c3.rows(), 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c3);
  EXPECT_NEAR(es.eigenvalues()(0), 0.8, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.8, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(2), 1.4, 1e-12);
  EXPECT_TRUE(pair_covariance_matrix(5, 0.0).isIdentity());
  EXPECT_THROW(pair_covariance_matrix(2, 0.2), SizeError);
  EXPECT_THROW(pair_covariance_matrix(5, 0.6), DomainError);
}

TEST(Moments, PairCovarianceHasOneMinusTwoRho) {
  for (double rho : {0.0, 0.1, 0.3, 0.5}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair_covariance_matrix(4, rho));
    bool found = false;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      found = found || std::abs(es.eigenvalues()(k) - (1.0 - 2.0 * rho)) < 1e-12;
    }
    EXPECT_TRUE(found) << rho;
  }
}

TEST(Moments, PairCovariancePsdRange) {
  for (std::size_t p = 3; p <= 12; ++p) {
    for (double rho : {0.0, 0.125, 0.25, 1.0 / 3.0, 0.5}) {
      EXPECT_TRUE(is_positive_semidefinite(pair_covariance_matrix(p, rho))) << p << " " << rho;
    }
  }
  // Just past the boundary, built by hand since the constructor refuses it.
  const double rho = 0.501;
  for (std::size_t p = 4; p <= 12; ++p) {
    const std::size_t m = p * (p - 1) / 2;
    Eigen::MatrixXd c(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const Pair x = pair_at(a, p);
        const Pair y = pair_at(b, p);
        const int shared = (x.i == y.i) + (x.i == y.j) + (x.j == y.i) + (x.j == y.j);
        c(a, b) = shared == 2 ? 1.0 : shared == 1 ? rho : 0.0;
      }
    }
    EXPECT_LT(min_eigenvalue(c), 0.0) << p;
  }
}

TEST(Moments, EquicorrelationPsdIff) {
  for (std::size_t d = 2; d <= 12; ++d) {
    const double edge = -1.0 / static_cast<double>(d - 1);
    EXPECT_TRUE(is_positive_semidefinite(equicorrelation_matrix(d, edge + 1e-6))) << d;
    EXPECT_TRUE(is_positive_semidefinite(equicorrelation_matrix(d, 0.7))) << d;
    EXPECT_FALSE(is_positive_semidefinite(equicorrelation_matrix(d, edge - 1e-3))) << d;
  }
}
