#include "extint/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <boost/random/normal_distribution.hpp>

#include "extint/error.hpp"
#include "extint/gauss.hpp"

namespace extint {

std::string to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::Rademacher: return "rademacher";
    case EntryKind::Gaussian: return "gaussian";
    case EntryKind::UniformSqrt3: return "uniform";
    case EntryKind::ThreePoint5: return "threepoint5";
    case EntryKind::Custom: return "custom";
  }
  return "custom";
}

EntryKind entry_kind_from_string(std::string_view name) {
  if (name == "rademacher") return EntryKind::Rademacher;
  if (name == "gaussian") return EntryKind::Gaussian;
  if (name == "uniform") return EntryKind::UniformSqrt3;
  if (name == "threepoint5") return EntryKind::ThreePoint5;
  throw ConfigError("unknown entry distribution: " + std::string(name));
}

EntryDistribution EntryDistribution::preset(EntryKind kind) {
  if (kind == EntryKind::Custom) throw ConfigError("custom laws need a sampler");
  return {kind, preset_profile(to_string(kind)), {}};
}

EntryDistribution EntryDistribution::custom_law(MomentProfile profile,
                                                std::function<double(Philox4x32&)> draw) {
  if (!draw) throw ConfigError("custom law without a sampler");
  return {EntryKind::Custom, std::move(profile), std::move(draw)};
}

double standard_normal(Philox4x32& rng) {
  boost::random::normal_distribution<double> normal;
  return normal(rng);
}

double EntryDistribution::draw(Philox4x32& rng) const {
  switch (kind) {
    case EntryKind::Rademacher: return (rng() & 1U) ? 1.0 : -1.0;
    case EntryKind::Gaussian: return standard_normal(rng);
    case EntryKind::UniformSqrt3: return std::numbers::sqrt3 * (2.0 * rng.uniform_open() - 1.0);
    case EntryKind::ThreePoint5: {
      const double u = rng.uniform_open();
      if (u < 0.1) return -std::sqrt(5.0);
      if (u < 0.2) return std::sqrt(5.0);
      return 0.0;
    }
    case EntryKind::Custom:
      if (!custom) throw ConfigError("custom law without a sampler");
      return custom(rng);
  }
  throw ConfigError("unknown entry distribution");
}

SampleMatrix sample_matrix(const EntryDistribution& dist, std::size_t p, std::size_t n,
                           std::uint64_t seed) {
  Philox4x32 rng(seed);
  std::vector<double> data(p * n);
  for (double& v : data) v = dist.draw(rng);
  return SampleMatrix(p, n, std::move(data));
}

namespace {

void check_field_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 0.5)) throw DomainError("field correlation must lie in [0, 1/2]");
}

std::vector<double> normals(std::size_t count, Philox4x32& rng) {
  std::vector<double> out(count);
  for (double& v : out) v = standard_normal(rng);
  return out;
}

// Descending order statistics of m iid uniforms, reported as upper-tail
// probabilities q_(1) < q_(2) < ..., each paired with a uniformly random unused
// slot in [0, m) through a sparse Fisher-Yates shuffle.
class RowStream {
 public:
  explicit RowStream(std::size_t m) : m_(m) {}

  // State right after a first draw that returned `slot`.
  static RowStream resume(std::size_t m, double log_v, std::size_t slot) {
    RowStream row(m);
    row.k_ = 1;
    row.log_v_ = log_v;
    row.swaps_[slot] = 0;
    return row;
  }

  bool exhausted() const { return k_ == m_; }
  double log_v() const { return log_v_; }

  double next_tail(Philox4x32& rng) {
    log_v_ += std::log(rng.uniform_open()) / static_cast<double>(m_ - k_);
    return -std::expm1(log_v_);
  }

  std::size_t next_slot(Philox4x32& rng) {
    const std::size_t span = m_ - k_;
    const std::size_t r = k_ + std::min(span - 1, static_cast<std::size_t>(
                                                      rng.uniform_open() * static_cast<double>(span)));
    const std::size_t at_r = lookup(r);
    swaps_[r] = lookup(k_);
    ++k_;
    return at_r;
  }

 private:
  std::size_t lookup(std::size_t i) const {
    const auto it = swaps_.find(i);
    return it == swaps_.end() ? i : it->second;
  }

  std::size_t m_;
  std::size_t k_ = 0;
  double log_v_ = 0.0;
  std::unordered_map<std::size_t, std::size_t> swaps_;
};

std::vector<double> suffix_max(const std::vector<double>& xi) {
  std::vector<double> out(xi.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = xi.size(); i-- > 1;) {
    out[i - 1] = std::max(xi[i], i < xi.size() - 1 ? out[i] : xi[i]);
  }
  return out;
}

}  // namespace

PairField equicorr_pair_field(std::size_t p, double rho, Philox4x32& rng) {
  check_field_rho(rho);
  if (p < 2) throw SizeError("pair field needs p >= 2");
  const double a = std::sqrt(1.0 - 2.0 * rho);
  const double s = std::sqrt(rho);
  const std::vector<double> xi = normals(p, rng);
  PairField field;
  field.p = p;
  field.kind = FieldKind::Gaussian;
  field.values.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i + 1 < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      field.values.push_back(a * standard_normal(rng) + s * (xi[i] + xi[j]));
    }
  }
  return field;
}

PairField equicorr_pair_field(std::size_t p, double rho, std::uint64_t seed) {
  Philox4x32 rng(seed);
  return equicorr_pair_field(p, rho, rng);
}

SampleMatrix equicorr_normal_sample(std::size_t n, std::size_t p, double rho,
                                    std::uint64_t seed) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("equicorrelation must lie in [0, 1)");
  Philox4x32 rng(seed);
  const double s = std::sqrt(rho);
  const double a = std::sqrt(1.0 - rho);
  std::vector<double> data(n * p);
  for (std::size_t k = 0; k < n; ++k) {
    const double common = s * standard_normal(rng);
    for (std::size_t i = 0; i < p; ++i) data[k * p + i] = common + a * standard_normal(rng);
  }
  return SampleMatrix(n, p, std::move(data));
}

std::uint64_t field_exceedances(std::size_t p, double rho, double t, Philox4x32& rng) {
  check_field_rho(rho);
  if (p < 2) throw SizeError("pair field needs p >= 2");
  const double a = std::sqrt(1.0 - 2.0 * rho);
  const double s = std::sqrt(rho);
  std::vector<double> xi = normals(p, rng);
  std::uint64_t count = 0;

  if (a == 0.0) {
    std::sort(xi.begin(), xi.end());
    std::size_t lo = 0;
    std::size_t hi = p - 1;
    while (lo < hi) {
      if (s * (xi[lo] + xi[hi]) > t) {
        count += hi - lo;
        --hi;
      } else {
        ++lo;
      }
    }
    return count;
  }

  const std::vector<double> suf = suffix_max(xi);
  for (std::size_t i = 0; i + 1 < p; ++i) {
    const std::size_t m = p - 1 - i;
    const double cut = std::max(std::numeric_limits<double>::lowest(),
                                (t - s * (xi[i] + suf[i])) / a);
    const double cut_tail = std_normal_tail(cut);
    RowStream row(m);
    while (!row.exhausted()) {
      const double q = row.next_tail(rng);
      if (!(q < cut_tail)) break;
      const std::size_t j = i + 1 + row.next_slot(rng);
      if (a * std_normal_tail_quantile(q) + s * (xi[i] + xi[j]) > t) ++count;
    }
  }
  return count;
}

double field_max(std::size_t p, double rho, Philox4x32& rng) {
  check_field_rho(rho);
  if (p < 2) throw SizeError("pair field needs p >= 2");
  const double a = std::sqrt(1.0 - 2.0 * rho);
  const double s = std::sqrt(rho);
  std::vector<double> xi = normals(p, rng);

  if (a == 0.0) {
    std::partial_sort(xi.begin(), xi.begin() + 2, xi.end(), std::greater<>());
    return s * (xi[0] + xi[1]);
  }

  const std::vector<double> suf = suffix_max(xi);
  struct First {
    double log_v;
    double n;
    std::size_t slot;
  };
  std::vector<First> first(p - 1);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < p; ++i) {
    RowStream row(p - 1 - i);
    const double q = row.next_tail(rng);
    const std::size_t slot = row.next_slot(rng);
    first[i] = {row.log_v(), std_normal_tail_quantile(q), slot};
    best = std::max(best, a * first[i].n + s * (xi[i] + xi[i + 1 + slot]));
  }

  for (std::size_t i = 0; i + 1 < p; ++i) {
    const double ceiling = s * (xi[i] + suf[i]);
    if (a * first[i].n + ceiling <= best) continue;
    const std::size_t m = p - 1 - i;
    RowStream row = RowStream::resume(m, first[i].log_v, first[i].slot);
    while (!row.exhausted()) {
      const double n = std_normal_tail_quantile(row.next_tail(rng));
      if (a * n + ceiling <= best) break;
      const std::size_t j = i + 1 + row.next_slot(rng);
      best = std::max(best, a * n + s * (xi[i] + xi[j]));
    }
  }
  return best;
}

AbsqMoments absq_moments(EntryKind kind, double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  auto moment = [kind](double r) {
    switch (kind) {
      case EntryKind::Gaussian:
        return std::pow(2.0, r) * std::tgamma((r + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
      case EntryKind::Rademacher:
        return std::pow(2.0, r) / 2.0;
      case EntryKind::UniformSqrt3: {
        const double w = 2.0 * std::numbers::sqrt3;
        return 2.0 * std::pow(w, r) / ((r + 1.0) * (r + 2.0));
      }
      case EntryKind::ThreePoint5: {
        const double a = std::sqrt(5.0);
        return 0.32 * std::pow(a, r) + 0.02 * std::pow(2.0 * a, r);
      }
      case EntryKind::Custom: break;
    }
    throw ConfigError("absolute moments are only tabulated for presets");
  };
  const double m1 = moment(q);
  return {m1, moment(2.0 * q) - m1 * m1};
}

}  // namespace extint
