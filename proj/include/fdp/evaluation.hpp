#ifndef FDP_EVALUATION_HPP_
#define FDP_EVALUATION_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/models/classifier.hpp"
#include "fdp/preprocess.hpp"

namespace fdp::evaluation {

/// Positive class is +1 (distressed).
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline ConfusionMatrix confusion(const Labels& predicted, const Labels& actual) {
  if (predicted.size() != actual.size()) {
    fail(ErrorKind::kShape, "prediction and label vectors differ in length");
  }
  ConfusionMatrix c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int a = actual[i];
    if ((p != 1 && p != -1) || (a != 1 && a != -1)) {
      fail(ErrorKind::kLabel, "labels must be +1 or -1");
    }
    if (p == 1) (a == 1 ? c.tp : c.fp) += 1;
    else (a == 1 ? c.fn : c.tn) += 1;
  }
  return c;
}

/// A metric is nullopt when undefined (0/0).
struct Metrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;
};

inline Metrics metrics(const ConfusionMatrix& c) {
  if (c.total() == 0) fail(ErrorKind::kArgument, "confusion matrix is empty");
  Metrics m;
  const auto tp = static_cast<double>(c.tp);
  if (c.tp + c.fp > 0) m.precision = tp / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = tp / static_cast<double>(c.tp + c.fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0.0) {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  return m;
}

enum class Metric { kPrecision, kRecall, kF1, kAccuracy };

inline constexpr Metric kAllMetrics[] = {Metric::kPrecision, Metric::kRecall, Metric::kF1,
                                         Metric::kAccuracy};

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kF1: return "f1";
    case Metric::kAccuracy: return "accuracy";
  }
  return "?";
}

inline std::optional<double> get(const Metrics& m, Metric which) {
  switch (which) {
    case Metric::kPrecision: return m.precision;
    case Metric::kRecall: return m.recall;
    case Metric::kF1: return m.f1;
    case Metric::kAccuracy: return m.accuracy;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Repeated hold-out protocol
// ---------------------------------------------------------------------------

struct ExperimentProtocol {
  std::size_t repetitions = 10;
  double train_fraction = preprocess::kDefaultTrainFraction;
  std::uint64_t base_seed = 0;
};

struct RunResult {
  std::uint64_t seed = 0;
  ConfusionMatrix confusion;
  Metrics metrics;
};

/// Per-metric mean over the repetitions where the metric is defined.
struct MetricCell {
  Metrics mean;
  std::map<Metric, std::size_t> defined_runs;
  std::size_t repetitions = 0;
};

struct ExperimentResult {
  MetricCell cell;
  std::vector<RunResult> runs;
};

inline MetricCell aggregate(const std::vector<RunResult>& runs) {
  MetricCell cell;
  cell.repetitions = runs.size();
  for (Metric which : kAllMetrics) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : runs) {
      if (auto v = get(r.metrics, which)) {
        sum += *v;
        ++n;
      }
    }
    cell.defined_runs[which] = n;
    std::optional<double> mean;
    if (n > 0) mean = sum / static_cast<double>(n);
    switch (which) {
      case Metric::kPrecision: cell.mean.precision = mean; break;
      case Metric::kRecall: cell.mean.recall = mean; break;
      case Metric::kF1: cell.mean.f1 = mean; break;
      case Metric::kAccuracy: cell.mean.accuracy = mean; break;
    }
  }
  return cell;
}

/// One hold-out run: normalization is fit on the training part only and
/// applied (with clipping) to the test part.
inline RunResult evaluate_split(const Dataset& train, const Dataset& test,
                                const models::ClassifierSpec& spec) {
  const auto params = preprocess::fit_minmax(train);
  const Matrix x_train = preprocess::apply_minmax(train, params).dense();
  const Matrix x_test = preprocess::apply_minmax(test, params).dense();
  const auto model = models::train(spec, x_train, train.labels());
  const auto predicted = models::predict(model, x_test);
  RunResult r;
  r.confusion = confusion(predicted, test.labels());
  r.metrics = metrics(r.confusion);
  return r;
}

/// Repetition r (1-based) splits with seed base + r and seeds the classifier
/// with its own seed + base + r, so both the partition and the model
/// initialization vary across repetitions.
inline ExperimentResult run_experiment(const Dataset& d, const std::vector<std::string>& features,
                                       const models::ClassifierSpec& spec,
                                       const ExperimentProtocol& protocol) {
  if (protocol.repetitions < 1) fail(ErrorKind::kArgument, "repetitions must be at least 1");
  const Dataset sub = d.select_features(features);
  ExperimentResult out;
  for (std::size_t r = 1; r <= protocol.repetitions; ++r) {
    const std::uint64_t seed = protocol.base_seed + r;
    const auto parts = preprocess::split(sub, protocol.train_fraction, seed);
    models::ClassifierSpec run_spec = spec;
    run_spec.set("seed", static_cast<double>(spec.seed() + seed));
    RunResult run = evaluate_split(parts.train, parts.test, run_spec);
    run.seed = seed;
    out.runs.push_back(run);
  }
  out.cell = aggregate(out.runs);
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Report cell address. A missing beta denotes the unselected (raw) feature set.
struct CellKey {
  Horizon horizon = Horizon::kT1;
  std::optional<double> beta;
  models::ClassifierKind model = models::ClassifierKind::kLR;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

using EvaluationReport = std::map<CellKey, MetricCell>;

struct SystemRow {
  std::string name;
  MetricCell cell;
};

struct MetricDeltas {
  std::string from;
  std::string to;
  std::map<Metric, std::optional<double>> delta;  // to - from
};

struct IndicatorComparison {
  std::vector<SystemRow> rows;  // traditional, raw multi-source, selected multi-source
  std::vector<MetricDeltas> deltas;
};

inline MetricDeltas metric_deltas(const SystemRow& from, const SystemRow& to) {
  MetricDeltas d{from.name, to.name, {}};
  for (Metric m : kAllMetrics) {
    const auto a = get(from.cell.mean, m);
    const auto b = get(to.cell.mean, m);
    d.delta[m] = (a && b) ? std::optional<double>(*b - *a) : std::nullopt;
  }
  return d;
}

inline constexpr const char* kTraditionalSystem = "traditional-financial";
inline constexpr const char* kRawSystem = "raw-multi-source";
inline constexpr const char* kSelectedSystem = "selected-multi-source";

/// Evaluates the three indicator systems on identical split seeds.
inline IndicatorComparison compare_indicator_systems(const Dataset& d_full,
                                                     const Dataset& d_financial_only,
                                                     const std::vector<std::string>& selected,
                                                     const models::ClassifierSpec& spec,
                                                     const ExperimentProtocol& protocol) {
  IndicatorComparison out;
  out.rows.push_back(
      {kTraditionalSystem,
       run_experiment(d_financial_only, d_financial_only.feature_names(), spec, protocol).cell});
  out.rows.push_back(
      {kRawSystem, run_experiment(d_full, d_full.feature_names(), spec, protocol).cell});
  out.rows.push_back({kSelectedSystem, run_experiment(d_full, selected, spec, protocol).cell});
  out.deltas.push_back(metric_deltas(out.rows[0], out.rows[1]));
  out.deltas.push_back(metric_deltas(out.rows[0], out.rows[2]));
  out.deltas.push_back(metric_deltas(out.rows[1], out.rows[2]));
  return out;
}

}  // namespace fdp::evaluation

#endif  // FDP_EVALUATION_HPP_
