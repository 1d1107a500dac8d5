#include "extint/pairstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "extint/error.hpp"

namespace extint {

namespace {

constexpr std::size_t kBlockRows = 64;
constexpr std::size_t kChunk = 256;
// Above this dimension partial sums are combined with compensated summation.
constexpr std::size_t kCompensatedAbove = 10000;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double dot(const double* a, const double* b, std::size_t len) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t l = 0;
  for (; l + 4 <= len; l += 4) {
    s0 += a[l] * b[l];
    s1 += a[l + 1] * b[l + 1];
    s2 += a[l + 2] * b[l + 2];
    s3 += a[l + 3] * b[l + 3];
  }
  for (; l < len; ++l) s0 += a[l] * b[l];
  return (s0 + s1) + (s2 + s3);
}

// Upper-triangular Gram matrix of the rows of a (p x n), in pair order, plus
// the diagonal. Tiles of kBlockRows x kBlockRows rows are independent tasks.
void gram(const std::vector<double>& a, std::size_t p, std::size_t n, std::vector<double>& upper,
          std::vector<double>& diag, ExecPolicy exec) {
  upper.assign(p * (p - 1) / 2, 0.0);
  diag.assign(p, 0.0);
  const bool compensated = n > kCompensatedAbove;
  const std::size_t blocks = (p + kBlockRows - 1) / kBlockRows;

  std::vector<std::pair<std::size_t, std::size_t>> tiles;
  for (std::size_t bi = 0; bi < blocks; ++bi) {
    for (std::size_t bj = bi; bj < blocks; ++bj) tiles.emplace_back(bi, bj);
  }

  parallel_for(tiles.size(), exec.threads, [&](std::size_t t) {
    const auto [bi, bj] = tiles[t];
    const std::size_t i0 = bi * kBlockRows, i1 = std::min(p, i0 + kBlockRows);
    const std::size_t j0 = bj * kBlockRows, j1 = std::min(p, j0 + kBlockRows);
    std::vector<Neumaier> acc((i1 - i0) * (j1 - j0));
    for (std::size_t k0 = 0; k0 < n; k0 += kChunk) {
      const std::size_t len = std::min(kChunk, n - k0);
      for (std::size_t i = i0; i < i1; ++i) {
        const double* ai = a.data() + i * n + k0;
        for (std::size_t j = std::max(j0, i); j < j1; ++j) {
          const double partial = dot(ai, a.data() + j * n + k0, len);
          Neumaier& cell = acc[(i - i0) * (j1 - j0) + (j - j0)];
          if (compensated) {
            cell.add(partial);
          } else {
            cell.sum += partial;
          }
        }
      }
    }
    for (std::size_t i = i0; i < i1; ++i) {
      for (std::size_t j = std::max(j0, i); j < j1; ++j) {
        const double v = acc[(i - i0) * (j1 - j0) + (j - j0)].value();
        if (j == i) {
          diag[i] = v;
        } else {
          upper[pair_index(i, j, p)] = v;
        }
      }
    }
  });
}

template <class Term>
void pair_reduce(const SampleMatrix& x, std::vector<double>& out, ExecPolicy exec, Term term) {
  const std::size_t p = x.rows(), n = x.cols();
  out.assign(p * (p - 1) / 2, 0.0);
  const bool compensated = n > kCompensatedAbove;
  parallel_for(p, exec.threads, [&](std::size_t i) {
    const auto xi = x.row(i);
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto xj = x.row(j);
      Neumaier total;
      for (std::size_t k0 = 0; k0 < n; k0 += kChunk) {
        const std::size_t k1 = std::min(n, k0 + kChunk);
        double partial = 0.0;
        for (std::size_t l = k0; l < k1; ++l) partial += term(xi[l], xj[l]);
        if (compensated) {
          total.add(partial);
        } else {
          total.sum += partial;
        }
      }
      out[pair_index(i, j, p)] = total.value();
    }
  });
}

void require_pairs(const SampleMatrix& x) {
  if (x.rows() < 2 || x.cols() < 1) throw SizeError("need at least 2 rows and 1 column");
}

}  // namespace

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw SizeError("sample matrix data size mismatch");
  for (double v : data_) {
    if (!std::isfinite(v)) throw InputError("sample matrix contains NaN or infinite entries");
  }
}

SampleMatrix SampleMatrix::transposed() const {
  std::vector<double> t(data_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t[c * rows_ + r] = data_[r * cols_ + c];
  }
  return SampleMatrix(cols_, rows_, std::move(t));
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t p) {
  return i * (p - 1) - i * (i - 1) / 2 + (j - i - 1);
}

Pair pair_at(std::size_t k, std::size_t p) {
  auto offset = [p](std::size_t i) { return i * (p - 1) - (i * (i - 1)) / 2; };
  const double twop = 2.0 * static_cast<double>(p) - 1.0;
  const double disc = twop * twop - 8.0 * static_cast<double>(k);
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor((twop - std::sqrt(std::max(0.0, disc))) / 2.0)));
  if (i > p - 2) i = p - 2;
  while (i > 0 && offset(i) > k) --i;
  while (i + 1 <= p - 2 && offset(i + 1) <= k) ++i;
  return {i, k - offset(i) + i + 1};
}

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::SqDist: return "SQDIST";
    case FieldKind::QDist: return "QDIST";
    case FieldKind::Walk: return "WALK";
    case FieldKind::CovEntry: return "COVENTRY";
    case FieldKind::Gaussian: return "GAUSSIAN";
  }
  return "?";
}

double WalkFunction::operator()(double x, double y) const {
  switch (kind) {
    case WalkKind::SqDiff: return (x - y) * (x - y);
    case WalkKind::Product: return x * y;
    case WalkKind::AbsQ: return std::pow(std::abs(x - y), q);
    case WalkKind::Custom: return custom(x, y);
  }
  return 0.0;
}

std::string WalkFunction::name() const {
  switch (kind) {
    case WalkKind::SqDiff: return "sqdiff";
    case WalkKind::Product: return "product";
    case WalkKind::AbsQ: return "absq";
    case WalkKind::Custom: return "custom";
  }
  return "?";
}

PairField interpoint_sq_distances(const SampleMatrix& x, ExecPolicy exec) {
  require_pairs(x);
  const std::size_t p = x.rows(), n = x.cols();

  // Distances are translation invariant; centering the columns keeps the Gram
  // identity well conditioned when the data carry a large common offset.
  std::vector<double> centered(x.data().begin(), x.data().end());
  for (std::size_t l = 0; l < n; ++l) {
    double mean = 0.0;
    for (std::size_t i = 0; i < p; ++i) mean += centered[i * n + l];
    mean /= static_cast<double>(p);
    for (std::size_t i = 0; i < p; ++i) centered[i * n + l] -= mean;
  }

  std::vector<double> g, sq;
  gram(centered, p, n, g, sq, exec);

  PairField field;
  field.p = p;
  field.kind = FieldKind::SqDist;
  field.values.resize(g.size());
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const std::size_t k = pair_index(i, j, p);
      double v = sq[i] + sq[j] - 2.0 * g[k];
      if (v < 0.0) {
        if (v < -1e-8 * (sq[i] + sq[j])) ++field.flagged_negatives;
        v = 0.0;
      }
      field.values[k] = v;
    }
  }
  return field;
}

PairField interpoint_sq_distances_naive(const SampleMatrix& x) {
  require_pairs(x);
  PairField field;
  field.p = x.rows();
  field.kind = FieldKind::SqDist;
  pair_reduce(x, field.values, {}, [](double a, double b) { return (a - b) * (a - b); });
  return field;
}

PairField qnorm_distances(const SampleMatrix& x, double q, ExecPolicy exec) {
  if (!(q >= 1.0)) throw DomainError("q-norm distances need q >= 1");
  require_pairs(x);
  PairField field;
  field.p = x.rows();
  field.kind = FieldKind::QDist;
  field.q = q;
  if (q == 1.0) {
    pair_reduce(x, field.values, exec, [](double a, double b) { return std::abs(a - b); });
  } else if (q == 2.0) {
    pair_reduce(x, field.values, exec, [](double a, double b) { return (a - b) * (a - b); });
  } else if (q == 3.0) {
    pair_reduce(x, field.values, exec, [](double a, double b) {
      const double d = std::abs(a - b);
      return d * d * d;
    });
  } else if (q == 4.0) {
    pair_reduce(x, field.values, exec, [](double a, double b) {
      const double d = (a - b) * (a - b);
      return d * d;
    });
  } else {
    pair_reduce(x, field.values, exec,
                [q](double a, double b) { return std::pow(std::abs(a - b), q); });
  }
  return field;
}

PairField inner_products(const SampleMatrix& x, ExecPolicy exec) {
  require_pairs(x);
  std::vector<double> raw(x.data().begin(), x.data().end());
  PairField field;
  field.p = x.rows();
  field.kind = FieldKind::CovEntry;
  std::vector<double> diag;
  gram(raw, x.rows(), x.cols(), field.values, diag, exec);
  return field;
}

PairField standardized_walks(const SampleMatrix& x, const WalkFunction& f, double mean_f,
                             double var_f, ExecPolicy exec) {
  if (!(var_f > 0.0)) throw DegenerateError("Var f(X, Y) must be positive");
  require_pairs(x);
  PairField field;
  switch (f.kind) {
    case WalkKind::SqDiff: field = interpoint_sq_distances(x, exec); break;
    case WalkKind::Product: field = inner_products(x, exec); break;
    case WalkKind::AbsQ: field = qnorm_distances(x, f.q, exec); break;
    case WalkKind::Custom:
      if (!f.custom) throw ConfigError("custom walk function is empty");
      field.p = x.rows();
      pair_reduce(x, field.values, exec, f.custom);
      break;
  }
  const double n = static_cast<double>(x.cols());
  const double shift = n * mean_f;
  const double scale = std::sqrt(n * var_f);
  for (double& v : field.values) v = (v - shift) / scale;
  field.kind = FieldKind::Walk;
  return field;
}

PairExtremes extremes(const PairField& field) {
  if (field.values.empty()) throw SizeError("empty pair field");
  std::size_t kmax = 0, kmin = 0;
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] > field.values[kmax]) kmax = k;
    if (field.values[k] < field.values[kmin]) kmin = k;
  }
  PairExtremes e;
  e.max_value = field.values[kmax];
  e.argmax = pair_at(kmax, field.p);
  e.min_value = field.values[kmin];
  e.argmin = pair_at(kmin, field.p);
  return e;
}

PairExtremes normalized_extremes(const PairField& field, const Normalizers& norm) {
  PairExtremes e = extremes(field);
  if (field.kind == FieldKind::Walk || field.kind == FieldKind::Gaussian) {
    e.normalized_max = norm.d * (e.max_value - norm.d);
    e.normalized_min = norm.d * (e.min_value + norm.d);
  } else {
    e.normalized_max = norm.c * (e.max_value - norm.b);
  }
  return e;
}

CovMax cov_max_offdiag(const SampleMatrix& y, ExecPolicy exec) {
  if (y.cols() < 2) throw SizeError("cov_max_offdiag needs p >= 2 columns");
  if (y.rows() < 1) throw SizeError("cov_max_offdiag needs n >= 1 rows");
  PairField field = inner_products(y.transposed(), exec);
  const double scale = 1.0 / std::sqrt(static_cast<double>(y.rows()));
  for (double& v : field.values) v *= scale;
  const PairExtremes e = extremes(field);
  return {e.max_value, e.argmax};
}

std::vector<std::size_t> exceedance_count(const PairField& field,
                                          std::span<const Interval> intervals) {
  std::vector<std::size_t> counts(intervals.size(), 0);
  for (double v : field.values) {
    for (std::size_t r = 0; r < intervals.size(); ++r) {
      if (intervals[r].contains(v)) ++counts[r];
    }
  }
  return counts;
}

std::size_t count_in_region(const PairField& field, std::span<const Interval> region) {
  std::size_t count = 0;
  for (double v : field.values) {
    if (std::any_of(region.begin(), region.end(),
                    [v](const Interval& iv) { return iv.contains(v); })) {
      ++count;
    }
  }
  return count;
}

std::vector<RankedValue> top_k(const PairField& field, std::size_t k) {
  if (k < 1 || k > field.values.size()) throw SizeError("top_k needs 1 <= k <= number of pairs");
  std::vector<std::size_t> idx(field.values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (field.values[a] != field.values[b]) {
                        return field.values[a] > field.values[b];
                      }
                      return a < b;
                    });
  std::vector<RankedValue> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) out.push_back({field.values[idx[r]], pair_at(idx[r], field.p)});
  return out;
}

}  // namespace extint
