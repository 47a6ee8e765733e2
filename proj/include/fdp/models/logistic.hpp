#ifndef FDP_MODELS_LOGISTIC_HPP_
#define FDP_MODELS_LOGISTIC_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"

namespace fdp::models {

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double logit(std::span<const double> x) const { return dot(weights, x) + bias; }
};

/// Mean log-loss plus (l2 / 2) ||w||^2 over parameters laid out as [w..., b].
inline LossGradient logistic_loss_gradient(std::span<const double> params, const Matrix& x,
                                           const Labels& y, double l2) {
  const std::size_t d = x.cols();
  LossGradient out{0.0, std::vector<double>(d + 1, 0.0)};
  const auto w = params.subspan(0, d);
  const double b = params[d];
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const double z = dot(w, x.row(k)) + b;
    const double yk = y[k];
    out.loss += softplus(-yk * z) * inv_n;
    const double dz = -yk * sigmoid(-yk * z) * inv_n;
    for (std::size_t j = 0; j < d; ++j) out.gradient[j] += dz * x(k, j);
    out.gradient[d] += dz;
  }
  for (std::size_t j = 0; j < d; ++j) {
    out.loss += 0.5 * l2 * w[j] * w[j];
    out.gradient[j] += l2 * w[j];
  }
  return out;
}

struct LogisticFit {
  LogisticModel model;
  std::size_t epochs_run = 0;
  double final_loss = 0.0;
};

/// Full-batch gradient descent from zero until the gradient norm drops below
/// `tolerance` or `epochs` steps have been taken.
inline LogisticFit train_logistic(const Matrix& x, const Labels& y, double learning_rate,
                                  double l2, std::size_t epochs, double tolerance) {
  std::vector<double> params(x.cols() + 1, 0.0);
  LogisticFit fit;
  LossGradient lg = logistic_loss_gradient(params, x, y, l2);
  for (; fit.epochs_run < epochs; ++fit.epochs_run) {
    if (!std::isfinite(lg.loss)) fail(ErrorKind::kDivergence, "logistic loss is not finite");
    if (std::sqrt(dot(lg.gradient, lg.gradient)) < tolerance) break;
    for (std::size_t j = 0; j < params.size(); ++j) params[j] -= learning_rate * lg.gradient[j];
    lg = logistic_loss_gradient(params, x, y, l2);
  }
  if (!std::isfinite(lg.loss)) fail(ErrorKind::kDivergence, "logistic loss is not finite");
  fit.final_loss = lg.loss;
  fit.model.weights.assign(params.begin(), params.end() - 1);
  fit.model.bias = params.back();
  return fit;
}

}  // namespace fdp::models

#endif  // FDP_MODELS_LOGISTIC_HPP_
