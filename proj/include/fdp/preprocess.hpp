#ifndef FDP_PREPROCESS_HPP_
#define FDP_PREPROCESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/error.hpp"

namespace fdp::preprocess {

enum class Imputation { kMean, kMedian };

inline constexpr double kDefaultMissingThreshold = 0.30;
inline constexpr double kDefaultTrainFraction = 0.70;

struct ScreenResult {
  Dataset dataset;
  std::vector<std::string> dropped;
};

/// Drops features whose missing fraction is strictly above `threshold`, then
/// fills the remaining gaps per feature.
inline ScreenResult screen_missing(const Dataset& d, double threshold = kDefaultMissingThreshold,
                                   Imputation mode = Imputation::kMean) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    fail(ErrorKind::kArgument, "missing threshold must lie in [0, 1]");
  }
  ScreenResult result;
  std::vector<std::size_t> keep;
  const auto k = static_cast<double>(d.rows());
  for (std::size_t c = 0; c < d.cols(); ++c) {
    // m / k is correctly rounded, so a decimal threshold equal to m / k
    // compares equal; threshold * k can round either way.
    const double fraction = k == 0.0 ? 0.0 : static_cast<double>(d.missing_count(c)) / k;
    if (fraction > threshold) {
      result.dropped.push_back(d.feature_names()[c]);
    } else {
      keep.push_back(c);
    }
  }
  Dataset kept = d.select_features(std::span<const std::size_t>(keep));

  std::vector<Cell> cells = kept.cells();
  const std::size_t n = kept.cols();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> present;
    for (std::size_t r = 0; r < kept.rows(); ++r) {
      if (const auto& v = kept.value(r, c)) present.push_back(*v);
    }
    if (present.size() == kept.rows()) continue;
    if (present.empty()) {
      fail(ErrorKind::kImputation, "feature '" + kept.feature_names()[c] + "' has no observed values");
    }
    double fill = 0.0;
    if (mode == Imputation::kMean) {
      fill = std::accumulate(present.begin(), present.end(), 0.0) / static_cast<double>(present.size());
    } else {
      std::sort(present.begin(), present.end());
      const std::size_t m = present.size();
      fill = m % 2 == 1 ? present[m / 2] : 0.5 * (present[m / 2 - 1] + present[m / 2]);
    }
    for (std::size_t r = 0; r < kept.rows(); ++r) {
      if (!cells[r * n + c]) cells[r * n + c] = fill;
    }
  }
  result.dataset = kept.with_cells(std::move(cells));
  return result;
}

struct NormalizationParams {
  std::vector<std::string> names;
  std::vector<double> min;
  std::vector<double> max;
};

inline NormalizationParams fit_minmax(const Dataset& d) {
  NormalizationParams p;
  p.names = d.feature_names();
  p.min.assign(d.cols(), 0.0);
  p.max.assign(d.cols(), 0.0);
  for (std::size_t c = 0; c < d.cols(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < d.rows(); ++r) {
      const auto& v = d.value(r, c);
      if (!v) fail(ErrorKind::kArgument, "fit_minmax requires a fully observed dataset");
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
    if (d.rows() == 0) lo = hi = 0.0;
    p.min[c] = lo;
    p.max[c] = hi;
  }
  return p;
}

/// (x - min) / (max - min), clipped to [0, 1]; constant features map to 0.
inline double minmax_scale(double x, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

inline Dataset apply_minmax(const Dataset& d, const NormalizationParams& p) {
  std::vector<std::size_t> param_index(d.cols());
  for (std::size_t c = 0; c < d.cols(); ++c) {
    auto it = std::find(p.names.begin(), p.names.end(), d.feature_names()[c]);
    if (it == p.names.end()) {
      fail(ErrorKind::kParameter, "no normalization parameters for '" + d.feature_names()[c] + "'");
    }
    param_index[c] = static_cast<std::size_t>(it - p.names.begin());
  }
  std::vector<Cell> cells = d.cells();
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      auto& cell = cells[r * d.cols() + c];
      if (!cell) continue;
      const std::size_t j = param_index[c];
      cell = minmax_scale(*cell, p.min[j], p.max[j]);
    }
  }
  return d.with_cells(std::move(cells));
}

struct SplitResult {
  Dataset train;
  Dataset test;
};

/// Number of training samples a class of `class_size` contributes.
inline std::size_t stratum_train_count(std::size_t class_size, double train_fraction) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(class_size) * train_fraction));
}

/// Stratified random split. Within each class, round(size * fraction)
/// samples (chosen by a seeded shuffle) go to train. Both partitions keep the
/// original sample order.
inline SplitResult split(const Dataset& d, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::kArgument, "train fraction must lie strictly between 0 and 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<char> in_train(d.rows(), 0);
  for (int label : {1, -1}) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (d.labels()[r] == label) members.push_back(r);
    }
    const std::string cls = label == 1 ? "positive" : "negative";
    if (members.empty()) fail(ErrorKind::kStratification, "no " + cls + " samples to split");
    const std::size_t n_train = stratum_train_count(members.size(), train_fraction);
    if (n_train == 0 || n_train == members.size()) {
      fail(ErrorKind::kStratification, cls + " class of size " + std::to_string(members.size()) +
                                           " leaves an empty train or test part");
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i = 0; i < n_train; ++i) in_train[members[i]] = 1;
  }
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (std::size_t r = 0; r < d.rows(); ++r) (in_train[r] ? train_rows : test_rows).push_back(r);
  return {d.select_rows(std::span<const std::size_t>(train_rows)),
          d.select_rows(std::span<const std::size_t>(test_rows))};
}

}  // namespace fdp::preprocess

#endif  // FDP_PREPROCESS_HPP_
