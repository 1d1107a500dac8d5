#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "extint/moments.hpp"
#include "extint/pairstats.hpp"
#include "extint/rng.hpp"

namespace extint {

enum class EntryKind { Rademacher, Gaussian, UniformSqrt3, ThreePoint5, Custom };

std::string to_string(EntryKind kind);
EntryKind entry_kind_from_string(std::string_view name);

/// Standardized entry law. THREEPOINT5 puts mass 0.1, 0.8, 0.1 on -sqrt5, 0, sqrt5.
struct EntryDistribution {
  EntryKind kind = EntryKind::Gaussian;
  MomentProfile profile = preset_profile("gaussian");
  std::function<double(Philox4x32&)> custom;

  static EntryDistribution preset(EntryKind kind);
  static EntryDistribution custom_law(MomentProfile profile,
                                      std::function<double(Philox4x32&)> draw);

  double draw(Philox4x32& rng) const;
};

double standard_normal(Philox4x32& rng);

/// p x n matrix of iid entries.
SampleMatrix sample_matrix(const EntryDistribution& dist, std::size_t p, std::size_t n,
                           std::uint64_t seed);

/// Dense pair field Y_ij = sqrt(1 - 2 rho) N_ij + sqrt(rho) (xi_i + xi_j), i < j:
/// unit variance, correlation rho for pairs sharing one index, 0 otherwise.
PairField equicorr_pair_field(std::size_t p, double rho, Philox4x32& rng);
PairField equicorr_pair_field(std::size_t p, double rho, std::uint64_t seed);

/// n x p matrix with rows sqrt(rho) xi_k + sqrt(1 - rho) xi_ki.
SampleMatrix equicorr_normal_sample(std::size_t n, std::size_t p, double rho,
                                    std::uint64_t seed);

/// Exact samplers for the same pair field that never materialize it. Given xi,
/// the N_ij of row i are drawn as descending order statistics and only while
/// they can still matter.
std::uint64_t field_exceedances(std::size_t p, double rho, double t, Philox4x32& rng);
double field_max(std::size_t p, double rho, Philox4x32& rng);

/// E|X - Y|^q and Var|X - Y|^q for iid X, Y from a preset (Gaussian in closed
/// form, discrete laws exactly, the uniform law by quadrature).
struct AbsqMoments {
  double mean = 0.0;
  double var = 0.0;
};
AbsqMoments absq_moments(EntryKind kind, double q);

}  // namespace extint
