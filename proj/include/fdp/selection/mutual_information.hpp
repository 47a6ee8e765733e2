#ifndef FDP_SELECTION_MUTUAL_INFORMATION_HPP_
#define FDP_SELECTION_MUTUAL_INFORMATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"

namespace fdp::selection {

inline constexpr std::size_t kDefaultBins = 5;

struct DiscretizedFeature {
  std::vector<std::size_t> bin_indices;
  std::size_t bin_count = 0;

  friend bool operator==(const DiscretizedFeature&, const DiscretizedFeature&) = default;
};

/// Equal-width bins over [min, max]; the maximum lands in the top bin and a
/// constant vector lands entirely in bin 0.
inline DiscretizedFeature discretize(std::span<const double> values, std::size_t bin_count) {
  if (bin_count < 2) fail(ErrorKind::kArgument, "bin count must be at least 2");
  DiscretizedFeature out{std::vector<std::size_t>(values.size(), 0), bin_count};
  if (values.empty()) return out;
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorKind::kDomain, "cannot discretize a non-finite value");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return out;
  const double bins = static_cast<double>(bin_count);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double pos = (values[i] - lo) / (hi - lo) * bins;
    out.bin_indices[i] = std::min(static_cast<std::size_t>(pos), bin_count - 1);
  }
  return out;
}

/// Labels in {+1, -1} as a two-bin variable (bin 1 is the positive class).
inline DiscretizedFeature discretize_labels(const Labels& labels) {
  DiscretizedFeature out{std::vector<std::size_t>(labels.size(), 0), 2};
  for (std::size_t i = 0; i < labels.size(); ++i) out.bin_indices[i] = labels[i] == 1 ? 1 : 0;
  return out;
}

namespace detail {

inline bool canonical_first(const DiscretizedFeature& a, const DiscretizedFeature& b) {
  if (a.bin_count != b.bin_count) return a.bin_count < b.bin_count;
  return a.bin_indices <= b.bin_indices;
}

}  // namespace detail

/// Plug-in mutual information in nats from the empirical joint histogram.
/// Arguments are put in a canonical order first so that I(a, b) and I(b, a)
/// perform the identical floating-point sum.
inline double mutual_information(const DiscretizedFeature& first, const DiscretizedFeature& second) {
  if (first.bin_indices.size() != second.bin_indices.size()) {
    fail(ErrorKind::kShape, "mutual information needs equal sample counts");
  }
  const bool keep = detail::canonical_first(first, second);
  const DiscretizedFeature& a = keep ? first : second;
  const DiscretizedFeature& b = keep ? second : first;
  const std::size_t n = a.bin_indices.size();
  if (n == 0) return 0.0;

  std::vector<double> joint(a.bin_count * b.bin_count, 0.0);
  std::vector<double> ma(a.bin_count, 0.0);
  std::vector<double> mb(b.bin_count, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = a.bin_indices[k];
    const std::size_t j = b.bin_indices[k];
    if (i >= a.bin_count || j >= b.bin_count) fail(ErrorKind::kDomain, "bin index out of range");
    joint[i * b.bin_count + j] += 1.0;
    ma[i] += 1.0;
    mb[j] += 1.0;
  }
  const double total = static_cast<double>(n);
  double mi = 0.0;
  for (std::size_t i = 0; i < a.bin_count; ++i) {
    for (std::size_t j = 0; j < b.bin_count; ++j) {
      const double nij = joint[i * b.bin_count + j];
      if (nij == 0.0) continue;
      mi += nij / total * std::log(nij * total / (ma[i] * mb[j]));
    }
  }
  return mi;
}

/// Plug-in entropy in nats.
inline double entropy(const DiscretizedFeature& x) {
  std::vector<double> counts(x.bin_count, 0.0);
  for (std::size_t b : x.bin_indices) counts[b] += 1.0;
  const double total = static_cast<double>(x.bin_indices.size());
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= c / total * std::log(c / total);
  }
  return h;
}

/// Discretized columns of a dense sample matrix plus the label variable, with
/// every pairwise mutual information computed once.
class MiTable {
 public:
  MiTable(const Matrix& x, const Labels& y, std::size_t bins = kDefaultBins)
      : n_(x.cols()), label_(discretize_labels(y)) {
    if (x.rows() != y.size()) fail(ErrorKind::kShape, "sample count differs from label count");
    features_.reserve(n_);
    for (std::size_t c = 0; c < n_; ++c) {
      const auto col = x.column(c);
      features_.push_back(discretize(col, bins));
    }
    relevance_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) relevance_[i] = mutual_information(label_, features_[i]);
    pair_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double v = mutual_information(features_[i], features_[j]);
        pair_[i * n_ + j] = v;
        pair_[j * n_ + i] = v;
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  const DiscretizedFeature& feature(std::size_t i) const { return features_[i]; }
  const DiscretizedFeature& label() const { return label_; }

  /// I(l, i).
  double relevance(std::size_t i) const { return relevance_[i]; }
  /// I(i, j) for i != j.
  double pairwise(std::size_t i, std::size_t j) const { return pair_[i * n_ + j]; }

 private:
  std::size_t n_;
  DiscretizedFeature label_;
  std::vector<DiscretizedFeature> features_;
  std::vector<double> relevance_;
  std::vector<double> pair_;
};

}  // namespace fdp::selection

#endif  // FDP_SELECTION_MUTUAL_INFORMATION_HPP_
