#include "extint/gauss.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "extint/error.hpp"

namespace extint {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double std_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("normal quantile needs u in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double std_normal_tail_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("normal tail quantile needs q in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("gumbel quantile needs alpha in (0, 1)");
  // log(1 / (1 - alpha)) = -log1p(-alpha)
  return -std::log(-std::log1p(-alpha));
}

double equicorr_determinant(std::uint64_t d, double rho) {
  const double dd = static_cast<double>(d);
  return std::pow(1.0 - rho, dd - 1.0) * (1.0 + (dd - 1.0) * rho);
}

double equicorr_inverse_sum(std::uint64_t d, double rho) {
  const double dd = static_cast<double>(d);
  return dd / (1.0 + (dd - 1.0) * rho);
}

TailAsymptote equicorr_min_tail_asymptote(std::uint64_t d, double rho, double t) {
  if (d < 2) throw DomainError("equicorrelated tail asymptote needs d >= 2");
  const double dd = static_cast<double>(d);
  if (!(rho > -1.0 / (dd - 1.0) && rho < 1.0)) {
    throw DegenerateError("singular equicorrelation matrix: need -1/(d-1) < rho < 1");
  }
  if (!(t > 0.0)) throw DomainError("tail asymptote needs t > 0");
  const double spread = 1.0 + (dd - 1.0) * rho;
  TailAsymptote out;
  out.coefficient = std::pow(2.0 * std::numbers::pi, -0.5 * dd) /
                    std::sqrt(equicorr_determinant(d, rho)) * std::pow(spread / t, dd);
  out.exponent_arg = -0.5 * t * t * equicorr_inverse_sum(d, rho);
  out.value = out.coefficient * std::exp(out.exponent_arg);
  return out;
}

double bivariate_orthant_prob(double rho, double t) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("orthant probability needs |rho| < 1");
  if (t < 0.0) {
    // (N1, N2) and (-N1, -N2) have the same law.
    return 1.0 - 2.0 * std_normal_cdf(t) + bivariate_orthant_prob(rho, -t);
  }
  const double s = std::sqrt(1.0 - rho * rho);
  auto integrand = [&](double u) { return std_normal_pdf(u) * std_normal_tail((t - rho * u) / s); };
  // The integrand is bounded by phi(u); the mass beyond t + 12 is below
  // Phibar(12) ~ 1.8e-33 and is dropped.
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, t, t + 12.0, 15, 1e-13, &error);
  return value;
}

double ld_correction_factor(double x, std::uint64_t n, double skew) {
  if (!(x >= 0.0)) throw DomainError("large-deviation correction needs x >= 0");
  if (n < 1) throw DomainError("large-deviation correction needs n >= 1");
  return std::exp(x * x * x * skew / (6.0 * std::sqrt(static_cast<double>(n))));
}

RateBoundTerms rate_bound_terms(double p, double n, double rho) {
  if (!(p >= 3.0)) throw DomainError("rate bound needs p >= 3");
  const double lp = std::log(p);
  RateBoundTerms out;
  out.dependence = std::pow(lp, -rho / (1.0 + rho)) * std::pow(p, -(1.0 - 3.0 * rho) / (1.0 + rho));
  out.normal = std::sqrt(lp * lp * lp / n);
  const double llp = std::log(lp);
  out.gumbel = llp * llp / lp;
  return out;
}

VMoments v_moment_asymptotes(double p, double rho, double x) {
  if (!(p >= 3.0)) throw DomainError("V moments need p >= 3");
  if (!(rho >= 0.0 && rho <= 0.5)) throw DomainError("V moments need rho in [0, 1/2]");
  VMoments out;
  out.mean = std::exp(-x);
  if (rho <= 1.0 / 3.0) {
    out.second_moment = std::exp(-x) + std::exp(-2.0 * x);
  } else {
    out.growth_branch = true;
    out.second_moment = v_second_moment_growth(p, rho);
  }
  return out;
}

double v_second_moment_growth(double p, double rho) {
  const double lp = std::log(p);
  return std::pow(1.0 + rho, 1.5) / (8.0 * std::numbers::pi * std::sqrt(1.0 - rho)) *
         std::pow(lp, -rho / (1.0 + rho)) * std::pow(p, (3.0 * rho - 1.0) / (1.0 + rho));
}

}  // namespace extint
