#pragma once

#include <cstdint>

namespace extint {

double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// 1 - Phi(x), accurate in the far right tail.
double std_normal_tail(double x);
/// Phi^{-1}(u), u in (0, 1).
double std_normal_quantile(double u);
/// x with std_normal_tail(x) = q, accurate for tiny q.
double std_normal_tail_quantile(double q);

/// exp(-exp(-x)).
double gumbel_cdf(double x);
/// Upper alpha-quantile of the standard Gumbel law, -log(log(1 / (1 - alpha))).
double gumbel_quantile(double alpha);

/// Asymptote of P(min_i X_i > t) for an equicorrelated Gaussian vector:
/// value = coefficient * exp(exponent_arg).
struct TailAsymptote {
  double value = 0.0;
  double coefficient = 0.0;
  double exponent_arg = 0.0;
};

TailAsymptote equicorr_min_tail_asymptote(std::uint64_t d, double rho, double t);

/// Sum of the entries of the inverse equicorrelation matrix, d / (1 + (d-1) rho).
double equicorr_inverse_sum(std::uint64_t d, double rho);

/// Determinant (1 - rho)^{d-1} (1 + (d-1) rho).
double equicorr_determinant(std::uint64_t d, double rho);

/// P(N1 > t, N2 > t) for a standard bivariate normal pair with correlation rho,
/// by adaptive quadrature of int_t^inf phi(u) Phibar((t - rho u)/sqrt(1 - rho^2)) du.
double bivariate_orthant_prob(double rho, double t);

/// exp(x^3 skew / (6 sqrt n)): large-deviation ratio correction
/// P(S_n / sqrt n >= x) / Phibar(x) for summands with skewness `skew`.
double ld_correction_factor(double x, std::uint64_t n, double skew);

/// Order-of-magnitude terms of the Gumbel approximation error for bounded
/// summands. Multiplicative constants are unknown and omitted.
struct RateBoundTerms {
  double dependence = 0.0;  // (log p)^{-rho/(1+rho)} p^{-(1-3rho)/(1+rho)}
  double normal = 0.0;      // sqrt((log p)^3 / n)
  double gumbel = 0.0;      // (log log p)^2 / log p
};

RateBoundTerms rate_bound_terms(double p, double n, double rho);

/// Limits of E[V] and E[V^2] for V = #{i<j : d (Y_ij - d) > x} over a
/// Gaussian pair field with sharing correlation rho.
struct VMoments {
  double mean = 0.0;
  double second_moment = 0.0;
  bool growth_branch = false;  // rho > 1/3
};

VMoments v_moment_asymptotes(double p, double rho, double x);

/// The rho > 1/3 growth expression for E[V^2], evaluated for any rho.
double v_second_moment_growth(double p, double rho);

}  // namespace extint
