#ifndef FDP_SELECTION_RANKING_HPP_
#define FDP_SELECTION_RANKING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdp/error.hpp"

namespace fdp::selection {

struct Elimination {
  std::size_t iteration = 0;
  std::string feature;
  double score = 0.0;
};

/// Features from most to least important. For recursive methods the order is
/// the reverse of the elimination trace.
struct FeatureRanking {
  std::vector<std::string> order;
  std::vector<double> scores;  // aligned with `order`
  std::vector<Elimination> elimination_trace;
  std::optional<double> beta;
};

/// Scores closer than this (absolute, on [0, 1]-normalized scales) count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// First index whose value is within `tol` of the minimum.
inline std::size_t tolerant_argmin(const std::vector<double>& v, double tol = kTieTolerance) {
  double lo = v.at(0);
  for (double x : v) lo = std::min(lo, x);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= lo + tol) return i;
  }
  return 0;
}

/// First index whose value is within `tol * max(1, |max|)` of the maximum.
inline std::size_t tolerant_argmax(const std::vector<double>& v, double tol = kTieTolerance) {
  double hi = v.at(0);
  for (double x : v) hi = std::max(hi, x);
  const double slack = tol * std::max(1.0, std::abs(hi));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= hi - slack) return i;
  }
  return 0;
}

/// Min-max normalization over a score vector; a constant vector maps to 0.
inline std::vector<double> normalize_scores(const std::vector<double>& v) {
  if (v.empty()) return {};
  double lo = v[0];
  double hi = v[0];
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<double> out(v.size(), 0.0);
  if (!(hi > lo)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
  return out;
}

/// The first k features of the ranking, in rank order.
inline std::vector<std::string> select_top_k(const FeatureRanking& r, std::size_t k) {
  if (k > r.order.size()) {
    fail(ErrorKind::kArgument, "k = " + std::to_string(k) + " exceeds ranking length " +
                                   std::to_string(r.order.size()));
  }
  return {r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace fdp::selection

#endif  // FDP_SELECTION_RANKING_HPP_
