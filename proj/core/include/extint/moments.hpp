#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace extint {

/// Tail class of the entry law X, mirroring the moment conditions B1-B4.
enum class TailClass { Poly, SubExp, Bounded };

struct MomentClass {
  TailClass kind = TailClass::Poly;
  double s = 0.0;      // Poly: E[|X|^{2s} log(|X|)^{s/2}] < inf, s > 2
  double r = 0.0;      // SubExp: E[exp(eta |X|^{2r})] < inf
  double eta = 0.0;
  double bound = 0.0;  // Bounded: |X| < bound

  static MomentClass poly(double s);
  static MomentClass subexp(double r, double eta);
  static MomentClass bounded(double k);

  std::string describe() const;
};

/// Declared moments of the standardized entry law (E[X] = 0, E[X^2] = 1).
class MomentProfile {
 public:
  MomentProfile(double m3, double m4, std::optional<double> m6,
                MomentClass moment_class, double m2 = 1.0);

  double m2() const { return m2_; }
  double m3() const { return m3_; }
  double m4() const { return m4_; }
  const std::optional<double>& m6() const { return m6_; }
  const MomentClass& moment_class() const { return class_; }

  /// Correlation of two squared distances sharing one point.
  double rho() const;
  /// Skewness of the standardized squared difference; needs m6.
  double kappa_tilde() const;

 private:
  double m2_;
  double m3_;
  double m4_;
  std::optional<double> m6_;
  MomentClass class_;
};

/// Presets: "rademacher", "gaussian", "uniform", "threepoint5".
MomentProfile preset_profile(std::string_view name);

/// (m4 - 1) / (2 (m4 + 1)).
double rho_from_fourth_moment(double m4);

double kappa_tilde(double m3, double m4, double m6);

enum class Condition { B1, B2, B3, B4 };

std::string_view to_string(Condition c);

struct RegimeReport {
  Condition condition = Condition::B1;
  // Growth exponent of the admissible p: p = O(n^e) under B1, p = exp(o(n^e))
  // otherwise.
  double rate_exponent = 0.0;
  bool dnorm_choice = false;
  // log p / n^e (B2-B4) or p / n^e (B1) at the queried (n, p). Advisory only:
  // the growth conditions are asymptotic statements and are never checked.
  double advisory_ratio = 0.0;
  std::string growth_statement;
};

RegimeReport classify_regime(const MomentProfile& profile, std::size_t n,
                             std::size_t p);

/// Covariance of (Y_ij)_{i<j}, pairs in lexicographic order: 1 on the
/// diagonal, rho when the pairs share one index, 0 when disjoint.
Eigen::MatrixXd pair_covariance_matrix(std::size_t p, double rho);

/// rho 1 1^T + (1 - rho) I of size d.
Eigen::MatrixXd equicorrelation_matrix(std::size_t d, double rho);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);

/// PSD up to |lambda_min| <= 1e-10 * dim.
bool is_positive_semidefinite(const Eigen::MatrixXd& symmetric);

}  // namespace extint
