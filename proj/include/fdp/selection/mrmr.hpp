#ifndef FDP_SELECTION_MRMR_HPP_
#define FDP_SELECTION_MRMR_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/selection/mutual_information.hpp"
#include "fdp/selection/ranking.hpp"

namespace fdp::selection {

/// Redundancy below this is replaced by it in relevance/redundancy quotients.
inline constexpr double kRedundancyFloor = 1e-12;

/// R_S: mean label relevance over the subset (indices into the table).
inline double relevance(const MiTable& mi, const std::vector<std::size_t>& subset) {
  if (subset.empty()) fail(ErrorKind::kArgument, "relevance of an empty feature set");
  double sum = 0.0;
  for (std::size_t i : subset) sum += mi.relevance(i);
  return sum / static_cast<double>(subset.size());
}

/// Q_{S,i}: summed mutual information of i with the rest of S, over |S|^2.
inline double redundancy(const MiTable& mi, const std::vector<std::size_t>& subset, std::size_t i) {
  if (std::find(subset.begin(), subset.end(), i) == subset.end()) {
    fail(ErrorKind::kArgument, "feature is not a member of the subset");
  }
  double sum = 0.0;
  for (std::size_t j : subset) {
    if (j != i) sum += mi.pairwise(i, j);
  }
  const auto s = static_cast<double>(subset.size());
  return sum / (s * s);
}

inline double guarded_quotient(double numerator, double redundancy,
                               double floor = kRedundancyFloor) {
  return numerator / std::max(redundancy, floor);
}

namespace detail {

inline std::vector<std::size_t> resolve(const Dataset& d, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    auto j = d.feature_index(n);
    if (!j) fail(ErrorKind::kArgument, "feature '" + n + "' not in dataset");
    idx.push_back(*j);
  }
  return idx;
}

}  // namespace detail

inline double relevance(const Dataset& d, const std::vector<std::string>& subset,
                        std::size_t bins = kDefaultBins) {
  if (subset.empty()) fail(ErrorKind::kArgument, "relevance of an empty feature set");
  MiTable mi(d.dense(), d.labels(), bins);
  return relevance(mi, detail::resolve(d, subset));
}

inline double redundancy(const Dataset& d, const std::vector<std::string>& subset,
                         const std::string& feature, std::size_t bins = kDefaultBins) {
  if (std::find(subset.begin(), subset.end(), feature) == subset.end()) {
    fail(ErrorKind::kArgument, "feature '" + feature + "' is not in the subset");
  }
  MiTable mi(d.dense(), d.labels(), bins);
  const auto idx = detail::resolve(d, subset);
  return redundancy(mi, idx, *d.feature_index(feature));
}

/// Greedy forward max-relevance / min-redundancy selection, quotient form.
/// A candidate c is scored by adjoining it to the current picks S:
/// R_{S+c} / Q_{S+c,c}, with the redundancy floored. On the first step the
/// redundancy is empty, so the pick is the most label-relevant feature.
inline FeatureRanking mrmr_quotient_rank(const MiTable& mi, const std::vector<std::string>& names,
                                         std::size_t m, double floor = kRedundancyFloor) {
  const std::size_t n = mi.size();
  if (m < 1 || m > n) {
    fail(ErrorKind::kArgument, "m must lie in [1, " + std::to_string(n) + "]");
  }
  FeatureRanking out;
  std::vector<std::size_t> picked;
  std::vector<char> used(n, 0);
  double relevance_sum = 0.0;
  for (std::size_t step = 0; step < m; ++step) {
    std::vector<std::size_t> candidates;
    std::vector<double> scores;
    const auto size = static_cast<double>(picked.size() + 1);
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      double red = 0.0;
      for (std::size_t j : picked) red += mi.pairwise(c, j);
      const double r = (relevance_sum + mi.relevance(c)) / size;
      candidates.push_back(c);
      scores.push_back(guarded_quotient(r, red / (size * size), floor));
    }
    const std::size_t best = tolerant_argmax(scores);
    const std::size_t c = candidates[best];
    used[c] = 1;
    picked.push_back(c);
    relevance_sum += mi.relevance(c);
    out.order.push_back(names[c]);
    out.scores.push_back(scores[best]);
  }
  return out;
}

inline FeatureRanking mrmr_quotient_rank(const Dataset& d, std::size_t m,
                                         std::size_t bins = kDefaultBins,
                                         double floor = kRedundancyFloor) {
  MiTable mi(d.dense(), d.labels(), bins);
  return mrmr_quotient_rank(mi, d.feature_names(), m, floor);
}

}  // namespace fdp::selection

#endif  // FDP_SELECTION_MRMR_HPP_
