#pragma once

#include <cstdint>

#include "extint/moments.hpp"

namespace extint {

// All logarithms are natural logarithms.

enum class DKind { DN1, DNY };

/// Centering b and scaling c of a raw pair statistic, together with the
/// d-sequence value they were built from.
struct Normalizers {
  double b = 0.0;
  double c = 1.0;
  double d = 1.0;
  DKind d_kind = DKind::DN1;
  double y = 0.0;  // correction parameter when d_kind == DNY
};

/// p (p - 1) / 2, exact.
std::uint64_t pair_count(std::uint64_t p);

/// sqrt(2 log m) - (log log m + log 4 pi) / (2 sqrt(2 log m)). Takes the
/// number of maxima m directly (m = p~ for pair maxima).
double d_n1(std::uint64_t m);

/// d_n1(p~) - y log(p~) / (3 sqrt n) with p~ = p (p - 1) / 2.
double d_n_y(std::uint64_t p, std::uint64_t n, double y);

/// Same formula as d_n1, evaluated at p itself (the sequence used for maxima
/// over p coordinates in the covariance problem).
double d_n2(std::uint64_t p);

Normalizers interpoint_normalizers(std::uint64_t n, std::uint64_t p, const MomentProfile& profile,
                                   const RegimeReport& regime);

Normalizers qnorm_normalizers(std::uint64_t n, std::uint64_t p, double mean_absq,
                              double var_absq);

Normalizers general_normalizers(std::uint64_t n, std::uint64_t p, double mean_f, double var_f);

/// Builds b, c from an explicit d for a raw statistic with per-coordinate
/// mean and variance: b = n mean + sqrt(n var) d, c = d / sqrt(n var).
Normalizers normalizers_from_d(std::uint64_t n, double mean_f, double var_f, double d,
                               DKind kind = DKind::DN1, double y = 0.0);

}  // namespace extint
