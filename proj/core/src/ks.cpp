#include "extint/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "extint/error.hpp"
#include "extint/gauss.hpp"

namespace extint {

TargetLaw TargetLaw::convolution(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("convolution law needs a finite lambda > 0");
  }
  return {LawKind::Convolution, lambda, 1};
}

TargetLaw TargetLaw::neg_log_gamma(unsigned k) {
  if (k == 0) throw DomainError("order statistic index starts at 1");
  return {LawKind::NegLogGamma, 1.0, k};
}

std::string TargetLaw::name() const {
  switch (kind) {
    case LawKind::Gumbel: return "gumbel";
    case LawKind::NegGumbel: return "neg_gumbel";
    case LawKind::Normal: return "normal";
    case LawKind::Convolution: return "normal_plus_scaled_gumbel(" + std::to_string(lambda) + ")";
    case LawKind::NegLogGamma: return "neg_log_gamma(" + std::to_string(k) + ")";
    case LawKind::Uniform01: return "uniform01";
  }
  return "unknown";
}

double target_cdf(const TargetLaw& law, double x) {
  switch (law.kind) {
    case LawKind::Gumbel: return gumbel_cdf(x);
    case LawKind::NegGumbel: return -std::expm1(-std::exp(x));
    case LawKind::Normal: return std_normal_cdf(x);
    case LawKind::Uniform01: return std::clamp(x, 0.0, 1.0);
    case LawKind::NegLogGamma: {
      const double y = std::exp(-x);
      if (y == 0.0) return 1.0;
      if (!std::isfinite(y)) return 0.0;
      return boost::math::gamma_q(static_cast<double>(law.k), y);
    }
    case LawKind::Convolution: {
      const double scale = std::sqrt(8.0) * law.lambda;
      auto integrand = [&](double z) { return std_normal_pdf(z) * gumbel_cdf(scale * (x - z)); };
      using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
      return std::clamp(GK::integrate(integrand, -12.0, 12.0, 20, 1e-12), 0.0, 1.0);
    }
  }
  return 0.0;
}

double ks_statistic(std::span<const double> samples, const TargetLaw& law) {
  if (samples.empty()) throw SizeError("KS statistic of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = target_cdf(law, sorted[i]);
    sup = std::max({sup, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return sup;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw SizeError("KS statistic of an empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / x.size() -
                                 static_cast<double>(j) / y.size()));
  }
  return sup;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return v[l] < v[r]; });
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = avg;
    i = j + 1;
  }
  return out;
}

}  // namespace

double sample_mean(std::span<const double> v) {
  if (v.empty()) throw SizeError("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) throw SizeError("standard deviation needs two samples");
  const double m = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw SizeError("correlation needs paired samples");
  const double ma = sample_mean(a);
  const double mb = sample_mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw DegenerateError("correlation of a constant sample");
  return sab / std::sqrt(saa * sbb);
}

double rank_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw SizeError("rank correlation needs paired samples");
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  return correlation(ra, rb);
}

}  // namespace extint
