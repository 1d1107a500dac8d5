#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "extint/chenstein.hpp"
#include "extint/error.hpp"
#include "extint/pairstats.hpp"

using namespace extint;

TEST(ChenStein, NeighborhoodSize) {
  EXPECT_EQ(neighborhood_size(4), 5u);
  EXPECT_EQ(neighborhood_size(3), 3u);
  for (std::uint64_t p = 3; p < 50; ++p) EXPECT_LE(neighborhood_size(p), 2 * p);
  EXPECT_THROW(neighborhood_size(2), SizeError);
}

TEST(ChenStein, NeighborhoodByEnumeration) {
  for (std::size_t p = 3; p <= 8; ++p) {
    const std::size_t m = p * (p - 1) / 2;
    for (std::size_t a = 0; a < m; ++a) {
      const Pair x = pair_at(a, p);
      std::size_t hood = 0;
      for (std::size_t b = 0; b < m; ++b) {
        const Pair y = pair_at(b, p);
        hood += (x.i == y.i || x.i == y.j || x.j == y.i || x.j == y.j);
      }
      EXPECT_EQ(hood, neighborhood_size(p));
    }
  }
}

TEST(ChenStein, WorkedExample) {
  const ChenSteinBound b = stein_bounds(4, 0.1, 0.02);
  EXPECT_NEAR(b.lambda, 0.6, 1e-15);
  EXPECT_NEAR(b.b1, 0.3, 1e-15);
  EXPECT_NEAR(b.b2, 0.48, 1e-15);
  EXPECT_EQ(b.b3, 0.0);
  EXPECT_NEAR(b.total_count_version, 0.78, 1e-15);
  EXPECT_NEAR(b.total_max_version, (1.0 + 1.0 / 0.6) * 0.78, 1e-14);
}

TEST(ChenStein, IndependenceRelation) {
  for (std::uint64_t p : {3u, 5u, 20u}) {
    const double q = 0.01;
    const ChenSteinBound b = stein_bounds(p, q, q * q);
    const double pd = static_cast<double>(p);
    EXPECT_NEAR(b.b2, b.b1 * (2.0 * pd - 4.0) / (2.0 * pd - 3.0), 1e-15);
  }
}

TEST(ChenStein, Errors) {
  EXPECT_THROW(stein_bounds(10, 0.0, 0.0), DegenerateError);
  EXPECT_THROW(stein_bounds(10, 1.2, 0.1), DomainError);
  EXPECT_THROW(stein_bounds(10, 0.1, -0.1), DomainError);
  EXPECT_THROW(stein_bounds(10, 0.1, 0.2), DomainError);
  EXPECT_THROW(stein_bounds(2, 0.1, 0.01), SizeError);
  EXPECT_THROW(stein_bounds(10, 0.1, 0.01, -1.0), DomainError);
}

// b1 = sum_alpha sum_{beta in B_alpha} P(alpha) P(beta), enumerated.
TEST(ChenStein, B1MatchesEnumeration) {
  for (std::size_t p = 3; p <= 8; ++p) {
    for (double q : {0.3, 0.05, 1e-4}) {
      const std::size_t m = p * (p - 1) / 2;
      double b1 = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const Pair x = pair_at(a, p);
        for (std::size_t b = 0; b < m; ++b) {
          const Pair y = pair_at(b, p);
          if (x.i == y.i || x.i == y.j || x.j == y.i || x.j == y.j) b1 += q * q;
        }
      }
      EXPECT_NEAR(stein_bounds(p, q, q * q).b1, b1, 1e-12 * b1) << p << " " << q;
    }
  }
}

TEST(ChenStein, TotalsConsistent) {
  const ChenSteinBound b = stein_bounds(30, 0.002, 0.0003, 0.01);
  const double s = b.b1 + b.b2 + b.b3;
  EXPECT_NEAR(b.total_count_version, std::min(1.0, 1.0 / b.lambda) * s, 1e-12 * s);
  EXPECT_NEAR(b.total_max_version, (1.0 + 1.0 / b.lambda) * s, 1e-12 * s);
}

TEST(ChenStein, TvDistance) {
  const std::vector<std::uint64_t> point_mass{7};
  EXPECT_NEAR(empirical_tv_distance(point_mass, 1.0), 1.0 - std::exp(-1.0), 1e-12);
  const std::vector<std::uint64_t> scaled{70};
  EXPECT_DOUBLE_EQ(empirical_tv_distance(scaled, 1.0), empirical_tv_distance(point_mass, 1.0));

  std::vector<std::uint64_t> exact;
  for (std::uint64_t k = 0; k < 30; ++k) {
    exact.push_back(static_cast<std::uint64_t>(std::llround(1e12 * poisson_pmf(k, 2.0))));
  }
  EXPECT_LT(empirical_tv_distance(exact, 2.0), 1e-11);

  EXPECT_THROW(empirical_tv_distance(point_mass, 0.0), DomainError);
  const std::vector<std::uint64_t> none{0, 0};
  EXPECT_THROW(empirical_tv_distance(none, 1.0), SizeError);
}
