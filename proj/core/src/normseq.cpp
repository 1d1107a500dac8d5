#include "extint/normseq.hpp"

#include <cmath>
#include <numbers>

#include "extint/error.hpp"

namespace extint {

namespace {

double d_formula(double m) {
  const double log_m = std::log(m);
  const double root = std::sqrt(2.0 * log_m);
  return root - (std::log(log_m) + std::log(4.0 * std::numbers::pi)) / (2.0 * root);
}

double checked_positive(double d) {
  if (!(d > 0.0)) throw DomainError("d-sequence is not positive for these inputs");
  return d;
}

}  // namespace

std::uint64_t pair_count(std::uint64_t p) { return p < 2 ? 0 : p * (p - 1) / 2; }

double d_n1(std::uint64_t m) {
  if (m < 2) throw DomainError("d_n1 needs m >= 2");
  return checked_positive(d_formula(static_cast<double>(m)));
}

double d_n_y(std::uint64_t p, std::uint64_t n, double y) {
  if (p < 3) throw DomainError("d_n_y needs p >= 3");
  if (n < 1) throw DomainError("d_n_y needs n >= 1");
  const std::uint64_t m = pair_count(p);
  const double d = d_n1(m) - y * std::log(static_cast<double>(m)) /
                                 (3.0 * std::sqrt(static_cast<double>(n)));
  return checked_positive(d);
}

double d_n2(std::uint64_t p) {
  if (p < 2) throw DomainError("d_n2 needs p >= 2");
  return checked_positive(d_formula(static_cast<double>(p)));
}

Normalizers normalizers_from_d(std::uint64_t n, double mean_f, double var_f, double d,
                               DKind kind, double y) {
  if (!(var_f > 0.0)) throw DegenerateError("variance of f must be positive");
  if (n < 1) throw DomainError("n must be >= 1");
  const double scale = std::sqrt(static_cast<double>(n) * var_f);
  Normalizers out;
  out.d = checked_positive(d);
  out.b = static_cast<double>(n) * mean_f + scale * d;
  out.c = d / scale;
  out.d_kind = kind;
  out.y = y;
  return out;
}

Normalizers interpoint_normalizers(std::uint64_t n, std::uint64_t p, const MomentProfile& profile,
                                   const RegimeReport& regime) {
  if (p < 3) throw DomainError("interpoint normalizers need p >= 3");
  // E[(X - Y)^2] = 2, Var((X - Y)^2) = 2 (E[X^4] + 1).
  const double var = 2.0 * (profile.m4() + 1.0);
  if (regime.dnorm_choice) {
    const double kappa = profile.kappa_tilde();
    return normalizers_from_d(n, 2.0, var, d_n_y(p, n, kappa), DKind::DNY, kappa);
  }
  return normalizers_from_d(n, 2.0, var, d_n1(pair_count(p)));
}

Normalizers qnorm_normalizers(std::uint64_t n, std::uint64_t p, double mean_absq,
                              double var_absq) {
  if (!(var_absq > 0.0)) throw DegenerateError("Var(|X - Y|^q) must be positive");
  if (!(mean_absq > 0.0)) throw DegenerateError("E|X - Y|^q must be positive");
  return normalizers_from_d(n, mean_absq, var_absq, d_n1(pair_count(p)));
}

Normalizers general_normalizers(std::uint64_t n, std::uint64_t p, double mean_f, double var_f) {
  if (!(var_f > 0.0)) throw DegenerateError("Var f(X, Y) must be positive");
  return normalizers_from_d(n, mean_f, var_f, d_n1(pair_count(p)));
}

}  // namespace extint
