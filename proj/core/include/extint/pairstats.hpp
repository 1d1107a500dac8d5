#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extint/normseq.hpp"
#include "extint/parallel.hpp"

namespace extint {

/// Row-major real matrix. For interpoint statistics the rows are the p
/// observation vectors of dimension n; for the covariance statistic the rows
/// are the n observations of a p-dimensional vector.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  /// Throws InputError on non-finite entries and SizeError on a size mismatch.
  SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  SampleMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Zero-based pair (i, j), i < j.
struct Pair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Position of (i, j) in the lexicographic order (0,1), (0,2), ..., (p-2,p-1).
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t p);
Pair pair_at(std::size_t k, std::size_t p);

enum class FieldKind { SqDist, QDist, Walk, CovEntry, Gaussian };

std::string to_string(FieldKind kind);

/// Per-pair statistic in lexicographic pair order.
struct PairField {
  std::size_t p = 0;
  std::vector<double> values;
  FieldKind kind = FieldKind::SqDist;
  double q = 2.0;
  // Gram-trick squared distances below -1e-8 * scale before clamping.
  std::size_t flagged_negatives = 0;

  std::size_t size() const { return values.size(); }
};

struct PairExtremes {
  double max_value = 0.0;
  Pair argmax;
  double min_value = 0.0;
  Pair argmin;
  std::optional<double> normalized_max;
  std::optional<double> normalized_min;
};

enum class WalkKind { SqDiff, Product, AbsQ, Custom };

/// Symmetric summand f(x, y) of a pair-indexed random walk.
struct WalkFunction {
  WalkKind kind = WalkKind::SqDiff;
  double q = 2.0;
  std::function<double(double, double)> custom;

  static WalkFunction sqdiff() { return {WalkKind::SqDiff, 2.0, {}}; }
  static WalkFunction product() { return {WalkKind::Product, 2.0, {}}; }
  static WalkFunction absq(double q) { return {WalkKind::AbsQ, q, {}}; }
  static WalkFunction custom_fn(std::function<double(double, double)> f) {
    return {WalkKind::Custom, 2.0, std::move(f)};
  }

  double operator()(double x, double y) const;
  std::string name() const;
};

/// ||x_i - x_j||_2^2 for every pair, through ||x_i||^2 + ||x_j||^2 - 2 <x_i, x_j>
/// on column-centered data with a blocked inner-product kernel.
PairField interpoint_sq_distances(const SampleMatrix& x, ExecPolicy exec = {});

/// Direct O(p^2 n) reference, used as an oracle and for benchmarking.
PairField interpoint_sq_distances_naive(const SampleMatrix& x);

/// sum_l |x_il - x_jl|^q (the q-th power of the q-norm).
PairField qnorm_distances(const SampleMatrix& x, double q, ExecPolicy exec = {});

/// <x_i, x_j> for every pair of rows.
PairField inner_products(const SampleMatrix& x, ExecPolicy exec = {});

/// (sum_l f(x_il, x_jl) - n mean_f) / sqrt(n var_f).
PairField standardized_walks(const SampleMatrix& x, const WalkFunction& f, double mean_f,
                             double var_f, ExecPolicy exec = {});

/// Max and min with lexicographically smallest argmax / argmin among ties.
PairExtremes extremes(const PairField& field);

/// Raw fields: c (max - b) and c (min - b). Walk and Gaussian fields:
/// d (max - d) and d (min + d).
PairExtremes normalized_extremes(const PairField& field, const Normalizers& norm);

struct CovMax {
  double value = 0.0;
  Pair pair;
};

/// max_{i<j} n^{-1/2} sum_k Y_ki Y_kj over the columns of an n x p matrix.
CovMax cov_max_offdiag(const SampleMatrix& y, ExecPolicy exec = {});

/// Half-open interval (lo, hi]; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v > lo && v <= hi; }
  bool empty() const { return !(hi > lo); }
};

/// Number of field values in each interval.
std::vector<std::size_t> exceedance_count(const PairField& field,
                                          std::span<const Interval> intervals);

/// Number of field values in the union of the intervals.
std::size_t count_in_region(const PairField& field, std::span<const Interval> region);

struct RankedValue {
  double value = 0.0;
  Pair pair;
};

/// k largest values in decreasing order; ties broken lexicographically.
std::vector<RankedValue> top_k(const PairField& field, std::size_t k);

}  // namespace extint
