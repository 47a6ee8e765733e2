#ifndef FDP_MODELS_CLASSIFIER_HPP_
#define FDP_MODELS_CLASSIFIER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"
#include "fdp/models/logistic.hpp"
#include "fdp/models/mlp.hpp"
#include "fdp/models/spec.hpp"
#include "fdp/models/tree.hpp"
#include "fdp/selection/svm.hpp"
#include "fdp/text.hpp"

namespace fdp::models {

struct TrainingInfo {
  std::size_t epochs_run = 0;
  double final_loss = 0.0;
  std::uint64_t seed = 0;
};

using Parameters = std::variant<LogisticModel, selection::SvmModel, MlpModel, TreeModel>;

struct TrainedModel {
  ClassifierKind kind = ClassifierKind::kLR;
  std::size_t n_features = 0;
  Parameters params;
  TrainingInfo info;
};

namespace detail {

inline void check_training_data(const Matrix& x, const Labels& y) {
  if (x.rows() != y.size()) fail(ErrorKind::kShape, "sample count differs from label count");
  if (x.rows() == 0) fail(ErrorKind::kShape, "no training samples");
  bool pos = false;
  bool neg = false;
  for (int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else fail(ErrorKind::kLabel, "labels must be +1 or -1");
  }
  if (!pos || !neg) fail(ErrorKind::kClass, "training data must contain both classes");
}

}  // namespace detail

inline TrainedModel train(const ClassifierSpec& spec, const Matrix& x, const Labels& y) {
  detail::check_training_data(x, y);
  TrainedModel m;
  m.kind = spec.kind();
  m.n_features = x.cols();
  m.info.seed = spec.seed();
  switch (spec.kind()) {
    case ClassifierKind::kLR: {
      auto fit = train_logistic(x, y, spec.get("learning_rate"), spec.get("l2"),
                                spec.get_count("epochs"), spec.get("tolerance"));
      m.params = std::move(fit.model);
      m.info.epochs_run = fit.epochs_run;
      m.info.final_loss = fit.final_loss;
      break;
    }
    case ClassifierKind::kSVM: {
      selection::SvmOptions opt;
      opt.c = spec.get("c");
      opt.tolerance = spec.get("tolerance");
      opt.max_iterations = spec.get_count("max_iterations");
      auto svm = selection::train_linear_svm(x, y, opt);
      m.info.epochs_run = svm.iterations;
      m.info.final_loss = selection::svm_primal_objective(x, y, svm.weights, svm.bias, opt.c);
      m.params = std::move(svm);
      break;
    }
    case ClassifierKind::kBP: {
      auto fit = train_mlp(x, y, spec.get_count("hidden"), spec.get("learning_rate"),
                           spec.get_count("epochs"), spec.seed());
      m.params = std::move(fit.model);
      m.info.epochs_run = fit.epochs_run;
      m.info.final_loss = fit.final_loss;
      break;
    }
    case ClassifierKind::kDT: {
      m.params = train_tree(x, y, spec.get_count("max_depth"), spec.get_count("min_leaf"));
      break;
    }
  }
  return m;
}

/// Labels in {+1, -1}. Margins and logits are thresholded at 0, probabilities
/// at 0.5; a score exactly on the threshold predicts +1.
inline Labels predict(const TrainedModel& m, const Matrix& x) {
  if (x.cols() != m.n_features) {
    fail(ErrorKind::kShape, "model expects " + std::to_string(m.n_features) + " features, got " +
                                std::to_string(x.cols()));
  }
  Labels out(x.rows());
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const auto row = x.row(k);
    out[k] = std::visit(
        [&row](const auto& p) -> int {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, LogisticModel>) {
            return p.logit(row) >= 0.0 ? 1 : -1;
          } else if constexpr (std::is_same_v<T, selection::SvmModel>) {
            return p.decision(row) >= 0.0 ? 1 : -1;
          } else if constexpr (std::is_same_v<T, MlpModel>) {
            return p.probability(row) >= 0.5 ? 1 : -1;
          } else {
            return p.predict(row);
          }
        },
        m.params);
  }
  return out;
}

struct GradientCheck {
  double max_relative = 0.0;
  double max_absolute = 0.0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

/// Denominator floor for the relative deviation: gradient components smaller
/// than this are compared on an absolute scale.
inline constexpr double kGradientScaleFloor = 1e-4;

/// Analytic loss gradient against central differences at `point` (the
/// seeded initial parameters when absent). LR and BP only.
inline GradientCheck gradient_check(const ClassifierSpec& spec, const Matrix& x, const Labels& y,
                                    double epsilon,
                                    std::optional<std::vector<double>> point = std::nullopt) {
  detail::check_training_data(x, y);
  std::function<LossGradient(std::span<const double>)> f;
  std::vector<double> p;
  if (spec.kind() == ClassifierKind::kLR) {
    const double l2 = spec.get("l2");
    f = [&x, &y, l2](std::span<const double> q) { return logistic_loss_gradient(q, x, y, l2); };
    if (point) {
      p = *point;
    } else {
      std::mt19937_64 rng(spec.seed());
      std::normal_distribution<double> g(0.0, 0.5);
      p.resize(x.cols() + 1);
      for (double& v : p) v = g(rng);
    }
  } else if (spec.kind() == ClassifierKind::kBP) {
    const std::size_t hidden = spec.get_count("hidden");
    f = [&x, &y, hidden](std::span<const double> q) { return mlp_loss_gradient(q, hidden, x, y); };
    p = point ? *point : mlp_initial_params(x.cols(), hidden, spec.seed());
  } else {
    fail(ErrorKind::kArgument, "gradient check applies to LR and BP only");
  }
  GradientCheck out;
  out.analytic = f(p).gradient;
  if (out.analytic.size() != p.size()) fail(ErrorKind::kShape, "parameter vector has wrong size");
  out.numeric.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + epsilon;
    const double up = f(p).loss;
    p[i] = saved - epsilon;
    const double down = f(p).loss;
    p[i] = saved;
    out.numeric[i] = (up - down) / (2.0 * epsilon);
    const double a = out.analytic[i];
    const double n = out.numeric[i];
    const double abs_dev = std::abs(a - n);
    const double scale = std::max({std::abs(a), std::abs(n), kGradientScaleFloor});
    out.max_absolute = std::max(out.max_absolute, abs_dev);
    out.max_relative = std::max(out.max_relative, abs_dev / scale);
  }
  return out;
}

/// Flat text dump, versioned for inspection only.
inline std::string serialize(const TrainedModel& m) {
  std::ostringstream out;
  auto nums = [&out](const char* key, const std::vector<double>& v) {
    out << key;
    for (double x : v) out << ' ' << text::format_double(x);
    out << '\n';
  };
  out << "fdp-model 1\n";
  out << "kind " << to_string(m.kind) << '\n';
  out << "features " << m.n_features << '\n';
  out << "epochs_run " << m.info.epochs_run << '\n';
  out << "final_loss " << text::format_double(m.info.final_loss) << '\n';
  out << "seed " << m.info.seed << '\n';
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          nums("weights", p.weights);
          out << "bias " << text::format_double(p.bias) << '\n';
        } else if constexpr (std::is_same_v<T, selection::SvmModel>) {
          nums("weights", p.weights);
          out << "bias " << text::format_double(p.bias) << '\n';
          out << "C " << text::format_double(p.regularization) << '\n';
        } else if constexpr (std::is_same_v<T, MlpModel>) {
          out << "hidden " << p.hidden << '\n';
          nums("params", p.params);
        } else {
          out << "nodes " << p.nodes.size() << '\n';
          for (const auto& n : p.nodes) {
            out << "node " << n.feature << ' ' << text::format_double(n.threshold) << ' '
                << n.left << ' ' << n.right << ' ' << n.label << ' ' << n.samples << '\n';
          }
        }
      },
      m.params);
  return out.str();
}

}  // namespace fdp::models

#endif  // FDP_MODELS_CLASSIFIER_HPP_
