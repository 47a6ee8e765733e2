#ifndef FDP_MODELS_MLP_HPP_
#define FDP_MODELS_MLP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"
#include "fdp/models/logistic.hpp"

namespace fdp::models {

/// One hidden sigmoid layer, sigmoid output, log-loss. Parameters are kept
/// in one flat vector: W1 (hidden x inputs, row-major), b1, w2, b2.
struct MlpModel {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> params;

  static std::size_t parameter_count(std::size_t inputs, std::size_t hidden) {
    return hidden * inputs + hidden + hidden + 1;
  }

  double probability(std::span<const double> x) const {
    return sigmoid(output_logit(params, inputs, hidden, x));
  }

  static double output_logit(std::span<const double> p, std::size_t inputs, std::size_t hidden,
                             std::span<const double> x) {
    const std::size_t b1 = hidden * inputs;
    const std::size_t w2 = b1 + hidden;
    double z = p[w2 + hidden];
    for (std::size_t h = 0; h < hidden; ++h) {
      const double a = sigmoid(dot(p.subspan(h * inputs, inputs), x) + p[b1 + h]);
      z += p[w2 + h] * a;
    }
    return z;
  }
};

/// Glorot-uniform weights, zero biases.
inline std::vector<double> mlp_initial_params(std::size_t inputs, std::size_t hidden,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> p(MlpModel::parameter_count(inputs, hidden), 0.0);
  const double r1 = std::sqrt(6.0 / static_cast<double>(inputs + hidden));
  const double r2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  std::uniform_real_distribution<double> u1(-r1, r1);
  std::uniform_real_distribution<double> u2(-r2, r2);
  for (std::size_t i = 0; i < hidden * inputs; ++i) p[i] = u1(rng);
  const std::size_t w2 = hidden * inputs + hidden;
  for (std::size_t h = 0; h < hidden; ++h) p[w2 + h] = u2(rng);
  return p;
}

/// Mean log-loss and its backpropagated gradient over the given rows.
inline LossGradient mlp_loss_gradient(std::span<const double> p, std::size_t hidden,
                                      const Matrix& x, const Labels& y,
                                      std::span<const std::size_t> rows) {
  const std::size_t d = x.cols();
  const std::size_t b1 = hidden * d;
  const std::size_t w2 = b1 + hidden;
  const std::size_t b2 = w2 + hidden;
  LossGradient out{0.0, std::vector<double>(p.size(), 0.0)};
  std::vector<double> act(hidden);
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (std::size_t k : rows) {
    const auto xk = x.row(k);
    double z = p[b2];
    for (std::size_t h = 0; h < hidden; ++h) {
      act[h] = sigmoid(dot(p.subspan(h * d, d), xk) + p[b1 + h]);
      z += p[w2 + h] * act[h];
    }
    const double t = y[k] == 1 ? 1.0 : 0.0;
    out.loss += (softplus(z) - t * z) * inv_n;
    const double dz = (sigmoid(z) - t) * inv_n;
    out.gradient[b2] += dz;
    for (std::size_t h = 0; h < hidden; ++h) {
      out.gradient[w2 + h] += dz * act[h];
      const double dh = dz * p[w2 + h] * act[h] * (1.0 - act[h]);
      out.gradient[b1 + h] += dh;
      for (std::size_t j = 0; j < d; ++j) out.gradient[h * d + j] += dh * xk[j];
    }
  }
  return out;
}

inline LossGradient mlp_loss_gradient(std::span<const double> p, std::size_t hidden,
                                      const Matrix& x, const Labels& y) {
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return mlp_loss_gradient(p, hidden, x, y, rows);
}

struct MlpFit {
  MlpModel model;
  std::size_t epochs_run = 0;
  double final_loss = 0.0;
};

/// Per-sample backpropagation (online gradient descent), reshuffling the
/// sample order every epoch with the seeded generator.
inline MlpFit train_mlp(const Matrix& x, const Labels& y, std::size_t hidden,
                        double learning_rate, std::size_t epochs, std::uint64_t seed) {
  MlpFit fit;
  fit.model.inputs = x.cols();
  fit.model.hidden = hidden;
  fit.model.params = mlp_initial_params(x.cols(), hidden, seed);
  auto& p = fit.model.params;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (; fit.epochs_run < epochs; ++fit.epochs_run) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k : order) {
      const std::size_t one[] = {k};
      const auto lg = mlp_loss_gradient(p, hidden, x, y, one);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] -= learning_rate * lg.gradient[i];
    }
  }
  fit.final_loss = mlp_loss_gradient(p, hidden, x, y).loss;
  if (!std::isfinite(fit.final_loss)) fail(ErrorKind::kDivergence, "network loss is not finite");
  return fit;
}

}  // namespace fdp::models

#endif  // FDP_MODELS_MLP_HPP_
