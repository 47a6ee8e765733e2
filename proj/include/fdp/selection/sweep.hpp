#ifndef FDP_SELECTION_SWEEP_HPP_
#define FDP_SELECTION_SWEEP_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/evaluation.hpp"
#include "fdp/models/spec.hpp"
#include "fdp/preprocess.hpp"
#include "fdp/selection/ranking.hpp"
#include "fdp/selection/rfe.hpp"

namespace fdp::selection {

inline const std::vector<double>& default_betas() {
  static const std::vector<double> kBetas = {0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0};
  return kBetas;
}

inline constexpr std::size_t kDefaultTopK = 20;

struct BetaRanking {
  double beta = 0.0;
  FeatureRanking ranking;
  std::vector<std::string> selected;
};

/// Ranks a fully observed dataset once per beta. The ranking sees the whole
/// dataset min-max normalized; the top min(k, n) features are kept.
inline std::vector<BetaRanking> rank_betas(const Dataset& d, const std::vector<double>& betas,
                                           std::size_t k, const MrmrRfeOptions& opt = {}) {
  if (betas.empty()) fail(ErrorKind::kArgument, "beta list is empty");
  for (double b : betas) check_beta(b);
  const Dataset normalized = preprocess::apply_minmax(d, preprocess::fit_minmax(d));
  const Matrix x = normalized.dense();
  const std::size_t k_eff = std::min(k, d.cols());
  std::vector<BetaRanking> out;
  for (double beta : betas) {
    BetaRanking br;
    br.beta = beta;
    br.ranking = mrmr_svm_rfe(x, normalized.labels(), normalized.feature_names(), beta, opt);
    br.selected = select_top_k(br.ranking, k_eff);
    out.push_back(std::move(br));
  }
  return out;
}

/// Index of the best mean accuracy; ties keep the earlier (smaller) beta.
inline std::size_t best_beta_index(const std::vector<double>& betas,
                                   const std::vector<double>& accuracies) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (accuracies[i] > accuracies[best] ||
        (accuracies[i] == accuracies[best] && betas[i] < betas[best])) {
      best = i;
    }
  }
  return best;
}

struct BetaOutcome {
  BetaRanking ranking;
  evaluation::ExperimentResult result;
};

struct SweepResult {
  double best_beta = 0.0;
  std::vector<BetaOutcome> per_beta;
};

/// For each beta: rank, keep the top k, run the repeated hold-out protocol.
/// Returns the beta with the best mean accuracy.
inline SweepResult sweep_beta(const Dataset& d, const std::vector<double>& betas, std::size_t k,
                              const models::ClassifierSpec& spec,
                              const evaluation::ExperimentProtocol& protocol,
                              const MrmrRfeOptions& opt = {}) {
  SweepResult out;
  std::vector<double> accuracy;
  for (auto& br : rank_betas(d, betas, k, opt)) {
    BetaOutcome o;
    o.result = evaluation::run_experiment(d, br.selected, spec, protocol);
    o.ranking = std::move(br);
    accuracy.push_back(o.result.cell.mean.accuracy.value_or(0.0));
    out.per_beta.push_back(std::move(o));
  }
  out.best_beta = betas[best_beta_index(betas, accuracy)];
  return out;
}

/// sweep_beta over the default beta set.
inline SweepResult sweep_beta(const Dataset& d, std::size_t k, const models::ClassifierSpec& spec,
                              const evaluation::ExperimentProtocol& protocol,
                              const MrmrRfeOptions& opt = {}) {
  return sweep_beta(d, default_betas(), k, spec, protocol, opt);
}

}  // namespace fdp::selection

#endif  // FDP_SELECTION_SWEEP_HPP_
