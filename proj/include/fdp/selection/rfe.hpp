#ifndef FDP_SELECTION_RFE_HPP_
#define FDP_SELECTION_RFE_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/matrix.hpp"
#include "fdp/selection/mrmr.hpp"
#include "fdp/selection/mutual_information.hpp"
#include "fdp/selection/ranking.hpp"
#include "fdp/selection/svm.hpp"

namespace fdp::selection {

inline void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    fail(ErrorKind::kArgument, "beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

/// r_i = beta |w_i| + (1 - beta) R_i / Q_i, both terms already normalized.
inline double combined_score(double beta, double w_abs_norm, double mrmr_quotient_norm) {
  check_beta(beta);
  return beta * w_abs_norm + (1.0 - beta) * mrmr_quotient_norm;
}

namespace detail {

inline std::vector<double> abs_weights(const Matrix& x, const Labels& y,
                                       const std::vector<std::size_t>& active,
                                       const SvmOptions& opt) {
  const Matrix sub = x.select_columns(active);
  const SvmModel model = train_linear_svm(sub, y, opt);
  std::vector<double> w(model.weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::abs(model.weights[i]);
  return w;
}

inline FeatureRanking finish(std::vector<Elimination> trace) {
  FeatureRanking out;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    out.order.push_back(it->feature);
    out.scores.push_back(it->score);
  }
  out.elimination_trace = std::move(trace);
  return out;
}

}  // namespace detail

/// Backward elimination on linear-SVM weight magnitude, one feature per
/// iteration. The weakest feature is found on the min-max normalized |w| so
/// that ties resolve exactly as in mrmr_svm_rfe with beta = 1.
inline FeatureRanking svm_rfe(const Matrix& x, const Labels& y,
                              const std::vector<std::string>& names, const SvmOptions& opt = {}) {
  if (names.size() != x.cols()) fail(ErrorKind::kShape, "feature name count mismatch");
  std::vector<std::size_t> active(x.cols());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  std::vector<Elimination> trace;
  for (std::size_t iteration = 0; !active.empty(); ++iteration) {
    const auto w = detail::abs_weights(x, y, active, opt);
    const std::size_t pos = tolerant_argmin(normalize_scores(w));
    trace.push_back({iteration, names[active[pos]], w[pos]});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return detail::finish(std::move(trace));
}

inline FeatureRanking svm_rfe(const Dataset& d, const SvmOptions& opt = {}) {
  return svm_rfe(d.dense(), d.labels(), d.feature_names(), opt);
}

struct MrmrRfeOptions {
  SvmOptions svm;
  std::size_t bins = kDefaultBins;
  double redundancy_floor = kRedundancyFloor;
};

/// Per-feature relevance / redundancy quotient within the surviving set.
inline std::vector<double> mrmr_quotients(const MiTable& mi, const std::vector<std::size_t>& active,
                                          double floor = kRedundancyFloor) {
  std::vector<double> q(active.size());
  for (std::size_t p = 0; p < active.size(); ++p) {
    q[p] = guarded_quotient(mi.relevance(active[p]), redundancy(mi, active, active[p]), floor);
  }
  return q;
}

/// Backward elimination on r_i = beta |w_i| + (1 - beta) I(l,i) / Q_{S,i},
/// where both terms are min-max normalized over the surviving set S each
/// iteration before they are combined. Removes the argmin of r (lowest input
/// index on ties) until nothing is left; the ranking is the reverse order.
inline FeatureRanking mrmr_svm_rfe(const Matrix& x, const Labels& y,
                                   const std::vector<std::string>& names, double beta,
                                   const MrmrRfeOptions& opt = {}) {
  check_beta(beta);
  if (names.size() != x.cols()) fail(ErrorKind::kShape, "feature name count mismatch");
  const MiTable mi(x, y, opt.bins);
  std::vector<std::size_t> active(x.cols());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  std::vector<Elimination> trace;
  for (std::size_t iteration = 0; !active.empty(); ++iteration) {
    std::vector<double> w_norm(active.size(), 0.0);
    if (beta > 0.0) w_norm = normalize_scores(detail::abs_weights(x, y, active, opt.svm));
    const auto q_norm = normalize_scores(mrmr_quotients(mi, active, opt.redundancy_floor));
    std::vector<double> r(active.size());
    for (std::size_t p = 0; p < active.size(); ++p) r[p] = combined_score(beta, w_norm[p], q_norm[p]);
    const std::size_t pos = tolerant_argmin(r);
    trace.push_back({iteration, names[active[pos]], r[pos]});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  FeatureRanking out = detail::finish(std::move(trace));
  out.beta = beta;
  return out;
}

inline FeatureRanking mrmr_svm_rfe(const Dataset& d, double beta, const MrmrRfeOptions& opt = {}) {
  return mrmr_svm_rfe(d.dense(), d.labels(), d.feature_names(), beta, opt);
}

}  // namespace fdp::selection

#endif  // FDP_SELECTION_RFE_HPP_
