#include "extint/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extint/error.hpp"
#include "extint/gauss.hpp"

namespace extint {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

MeanTestResult run_test(const SampleMatrix& x, const Normalizers& norm, double alpha,
                        ExecPolicy exec) {
  const PairField field = interpoint_sq_distances(x, exec);
  const PairExtremes ext = extremes(field);
  MeanTestResult out;
  out.statistic = ext.max_value;
  out.argmax = ext.argmax;
  out.alpha = alpha;
  out.normalizers = norm;
  out.threshold = mean_test_threshold(norm, alpha);
  out.reject = out.statistic > out.threshold;
  return out;
}

}  // namespace

double mean_test_threshold(const Normalizers& norm, double alpha) {
  check_alpha(alpha);
  return gumbel_quantile(alpha) / norm.c + norm.b;
}

MeanTestResult mean_equality_test(const SampleMatrix& x, double m4, double alpha,
                                  const RegimeReport& regime, ExecPolicy exec) {
  check_alpha(alpha);
  if (x.rows() < 3) throw SizeError("mean test needs p >= 3");
  if (!(m4 >= 1.0)) throw DomainError("fourth moment must be >= 1");
  if (regime.dnorm_choice) {
    throw UnavailableError("the corrected d-sequence needs the sixth moment; pass a profile");
  }
  const double d = d_n1(pair_count(x.rows()));
  const Normalizers norm = normalizers_from_d(x.cols(), 2.0, 2.0 * (m4 + 1.0), d);
  return run_test(x, norm, alpha, exec);
}

MeanTestResult mean_equality_test(const SampleMatrix& x, const MomentProfile& profile,
                                  double alpha, const RegimeReport& regime, ExecPolicy exec) {
  check_alpha(alpha);
  if (x.rows() < 3) throw SizeError("mean test needs p >= 3");
  const Normalizers norm = interpoint_normalizers(x.cols(), x.rows(), profile, regime);
  return run_test(x, norm, alpha, exec);
}

double detectability_margin(double mu_diff_sq, std::uint64_t n, std::uint64_t p) {
  const double nn = static_cast<double>(n);
  return mu_diff_sq / std::sqrt(nn * std::max(std::log(static_cast<double>(p)), nn));
}

double estimate_fourth_moment(const SampleMatrix& x) {
  if (x.rows() < 2 || x.cols() == 0) throw SizeError("need at least two observations");
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) mean[c] += x(r, c);
  }
  for (double& m : mean) m /= static_cast<double>(x.rows());
  double s2 = 0.0;
  double s4 = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double v = (x(r, c) - mean[c]) * (x(r, c) - mean[c]);
      s2 += v;
      s4 += v * v;
    }
  }
  const double count = static_cast<double>(x.rows() * x.cols());
  if (s2 == 0.0) throw DegenerateError("constant data");
  return (s4 / count) / ((s2 / count) * (s2 / count));
}

std::string to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::I: return "I";
    case RegimeTag::II: return "II";
    case RegimeTag::III: return "III";
  }
  return "?";
}

double CovRegime::normalize(double w) const {
  if (regime == RegimeTag::I) return d_n * (w - mu_n);
  return (w - mu_n) / scale;
}

CovRegime cov_regime(double rho_n, std::uint64_t p, std::uint64_t n,
                     std::optional<double> lambda_hint) {
  if (!(rho_n >= 0.0 && rho_n < 0.5)) throw DomainError("rho_n must lie in [0, 1/2)");
  if (p < 3) throw SizeError("cov_regime needs p >= 3");
  if (lambda_hint && !(*lambda_hint >= 0.0)) throw DomainError("lambda_hint must be >= 0");

  CovRegime out;
  out.rho_n = rho_n;
  out.d_n = d_n1(pair_count(p));
  const double logp = std::log(static_cast<double>(p));
  out.mu_n = std::sqrt(static_cast<double>(n)) * rho_n + (1.0 - rho_n) * out.d_n +
             2.0 * std::sqrt(rho_n * (1.0 - rho_n)) * std::sqrt(2.0 * logp);

  if (lambda_hint) {
    if (*lambda_hint == 0.0) {
      out.regime = RegimeTag::I;
    } else if (std::isinf(*lambda_hint)) {
      out.regime = RegimeTag::III;
    } else {
      out.regime = RegimeTag::II;
      out.lambda = *lambda_hint;
    }
  } else {
    out.regime = rho_n == 0.0 ? RegimeTag::I : RegimeTag::III;
  }

  if (out.regime != RegimeTag::I && rho_n == 0.0) {
    throw ConfigError("regimes II and III scale by rho_n, which is 0");
  }
  switch (out.regime) {
    case RegimeTag::I:
      out.scale = out.d_n;
      out.limit_law = TargetLaw::gumbel();
      break;
    case RegimeTag::II:
      out.scale = std::sqrt(2.0) * rho_n;
      out.limit_law = TargetLaw::convolution(*out.lambda);
      break;
    case RegimeTag::III:
      out.scale = std::sqrt(2.0) * rho_n;
      out.limit_law = TargetLaw::normal();
      break;
  }
  return out;
}

}  // namespace extint
