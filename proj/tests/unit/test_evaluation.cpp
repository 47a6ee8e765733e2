#include <random>

#include <gtest/gtest.h>

#include "fdp/evaluation.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace ev = fdp::evaluation;
using fdp::models::ClassifierKind;
using fdp::models::ClassifierSpec;

namespace {

// Feature 0 carries the label with a margin; the rest is noise.
fdp::Dataset separable(std::size_t k, std::uint64_t seed, double margin = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  fdp::Matrix x(k, 3);
  fdp::Labels y(k);
  for (std::size_t r = 0; r < k; ++r) {
    y[r] = r % 3 == 0 ? 1 : -1;
    x(r, 0) = y[r] * margin + 0.2 * g(rng);
    x(r, 1) = g(rng);
    x(r, 2) = g(rng);
  }
  return fdp::Dataset::from_matrix({"A", "B", "C"}, x, y);
}

}  // namespace

TEST(Confusion, Counts) {
  const fdp::Labels actual = {1, 1, 1, 1, -1, -1, -1, -1, -1, -1};
  auto c = ev::confusion(actual, actual);
  EXPECT_EQ((std::array<std::size_t, 4>{c.tp, c.fp, c.fn, c.tn}), (std::array<std::size_t, 4>{4, 0, 0, 6}));
  c = ev::confusion(fdp::Labels(10, 1), actual);
  EXPECT_EQ((std::array<std::size_t, 4>{c.tp, c.fp, c.fn, c.tn}), (std::array<std::size_t, 4>{4, 6, 0, 0}));
  c = ev::confusion({1, 1, 1, -1, -1, -1, -1, -1, -1, -1}, {1, 1, -1, 1, -1, -1, -1, -1, -1, -1});
  EXPECT_EQ((std::array<std::size_t, 4>{c.tp, c.fp, c.fn, c.tn}), (std::array<std::size_t, 4>{2, 1, 1, 6}));
}

TEST(Metrics, HandValues) {
  const auto m = ev::metrics({3, 1, 1, 5});
  EXPECT_EQ(*m.precision, 0.75);
  EXPECT_EQ(*m.recall, 0.75);
  EXPECT_EQ(*m.f1, 0.75);
  EXPECT_EQ(*m.accuracy, 0.8);
  const auto p = ev::metrics({4, 0, 0, 6});
  EXPECT_EQ(*p.precision, 1.0);
  EXPECT_EQ(*p.recall, 1.0);
  EXPECT_EQ(*p.f1, 1.0);
  EXPECT_EQ(*p.accuracy, 1.0);
}

TEST(Metrics, UndefinedRatios) {
  const auto m = ev::metrics({0, 0, 2, 8});
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_EQ(*m.recall, 0.0);
  EXPECT_FALSE(m.f1.has_value());
  EXPECT_EQ(*m.accuracy, 0.8);
}

TEST(Metrics, RandomMatricesMatchOracle) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const ev::ConfusionMatrix c{rng() % 20, rng() % 20, rng() % 20, 1 + rng() % 20};
    const auto m = ev::metrics(c);
    const auto o = oracle::metrics(c.tp, c.fp, c.fn, c.tn);
    ASSERT_EQ(m.precision.has_value(), o.precision.has_value());
    ASSERT_EQ(m.f1.has_value(), o.f1.has_value());
    if (o.precision) EXPECT_NEAR(*m.precision, *o.precision, 1e-12);
    if (o.recall) EXPECT_NEAR(*m.recall, *o.recall, 1e-12);
    if (o.f1) EXPECT_NEAR(*m.f1, *o.f1, 1e-12);
    EXPECT_NEAR(*m.accuracy, *o.accuracy, 1e-12);
  }
}

TEST(Experiment, SingleRepetitionEqualsRun) {
  ev::ExperimentProtocol p;
  p.repetitions = 1;
  const auto r = ev::run_experiment(separable(60, 1, 0.3), {"A", "B", "C"}, ClassifierSpec(), p);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.cell.mean.accuracy, r.runs[0].metrics.accuracy);
  EXPECT_EQ(r.cell.mean.f1, r.runs[0].metrics.f1);
}

TEST(Experiment, IdenticalRunsAverageToThemselves) {
  const auto r = ev::run_experiment(separable(60, 2, 3.0), {"A"}, ClassifierSpec(ClassifierKind::kDT), {});
  ASSERT_EQ(r.runs.size(), 10u);
  for (const auto& run : r.runs) EXPECT_EQ(*run.metrics.accuracy, 1.0);
  EXPECT_EQ(*r.cell.mean.accuracy, 1.0);
  EXPECT_EQ(*r.cell.mean.precision, 1.0);
}

TEST(Experiment, LrOnSeparableData) {
  const auto r = ev::run_experiment(separable(75, 3), {"A", "B", "C"}, ClassifierSpec(), {});
  EXPECT_GE(*r.cell.mean.accuracy, 0.95);
}

TEST(Experiment, CellMeansAreRunMeans) {
  const auto r = ev::run_experiment(separable(75, 4, 0.4), {"A", "B", "C"},
                                    ClassifierSpec(ClassifierKind::kBP).set("epochs", 200), {});
  double acc = 0, f1 = 0;
  std::size_t f1_runs = 0;
  for (const auto& run : r.runs) {
    const auto o = oracle::metrics(run.confusion.tp, run.confusion.fp, run.confusion.fn, run.confusion.tn);
    acc += *o.accuracy;
    if (o.f1) {
      f1 += *o.f1;
      ++f1_runs;
    }
  }
  EXPECT_NEAR(*r.cell.mean.accuracy, acc / 10, 1e-12);
  if (f1_runs > 0) EXPECT_NEAR(*r.cell.mean.f1, f1 / static_cast<double>(f1_runs), 1e-12);
  EXPECT_EQ(r.cell.defined_runs.at(ev::Metric::kF1), f1_runs);
}

TEST(Experiment, RepetitionsUseDistinctSplits) {
  const auto r = ev::run_experiment(separable(75, 5), {"A"}, ClassifierSpec(), {});
  for (std::size_t i = 0; i < r.runs.size(); ++i) EXPECT_EQ(r.runs[i].seed, i + 1);
}

TEST(Comparison, IdenticalSystemsHaveZeroDeltas) {
  const auto d = separable(60, 6, 0.5);
  const auto c = ev::compare_indicator_systems(d, d, d.feature_names(), ClassifierSpec(), {});
  ASSERT_EQ(c.rows.size(), 3u);
  for (const auto& delta : c.deltas) {
    for (const auto& [metric, v] : delta.delta) {
      ASSERT_TRUE(v.has_value());
      EXPECT_EQ(*v, 0.0);
    }
  }
}
