#ifndef FDP_SELECTION_SVM_HPP_
#define FDP_SELECTION_SVM_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"

namespace fdp::selection {

struct SvmOptions {
  double c = 1.0;
  /// Stop when the maximal KKT violation m(a) - M(a) falls below this.
  double tolerance = 1e-6;
  std::size_t max_iterations = 10'000'000;
};

struct SvmModel {
  std::vector<double> weights;  // w = sum_k alpha_k y_k x_k
  double bias = 0.0;
  std::vector<double> alphas;
  double regularization = 1.0;
  std::size_t iterations = 0;

  double decision(std::span<const double> x) const { return dot(weights, x) + bias; }
};

/// Dual objective sum(alpha) - 1/2 ||sum alpha_k y_k x_k||^2 (to be maximized).
inline double svm_dual_objective(const Matrix& x, const Labels& y, const std::vector<double>& alpha) {
  std::vector<double> w(x.cols(), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < x.rows(); ++k) {
    sum += alpha[k];
    for (std::size_t j = 0; j < x.cols(); ++j) w[j] += alpha[k] * y[k] * x(k, j);
  }
  return sum - 0.5 * dot(w, w);
}

/// Primal objective 1/2 ||w||^2 + C sum hinge(y (w.x + b)).
inline double svm_primal_objective(const Matrix& x, const Labels& y, std::span<const double> w,
                                   double b, double c) {
  double hinge = 0.0;
  for (std::size_t k = 0; k < x.rows(); ++k) {
    hinge += std::max(0.0, 1.0 - y[k] * (dot(w, x.row(k)) + b));
  }
  return 0.5 * dot(w, w) + c * hinge;
}

/// Soft-margin linear SVM trained in the dual by sequential minimal
/// optimization with second-order working-set selection (Fan, Chen & Lin
/// 2005). The Gram matrix is precomputed, which is fine at the sample counts
/// this library targets.
inline SvmModel train_linear_svm(const Matrix& x, const Labels& y, const SvmOptions& opt = {}) {
  const std::size_t n = x.rows();
  if (y.size() != n) fail(ErrorKind::kShape, "sample count differs from label count");
  if (!(opt.c > 0.0)) fail(ErrorKind::kArgument, "C must be positive");
  bool has_pos = false;
  bool has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else fail(ErrorKind::kLabel, "labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) fail(ErrorKind::kClass, "SVM training needs both classes");

  constexpr double kTau = 1e-12;
  const double c = opt.c;

  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = dot(x.row(i), x.row(j));
      gram[i * n + j] = k;
      gram[j * n + i] = k;
    }
  }
  auto q = [&](std::size_t i, std::size_t j) {
    return static_cast<double>(y[i] * y[j]) * gram[i * n + j];
  };

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  auto upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter >= opt.max_iterations) {
      fail(ErrorKind::kConvergence, "SMO did not converge within " +
                                        std::to_string(opt.max_iterations) + " iterations");
    }
    // Working set selection: i maximizes -y G over I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double obj_min = std::numeric_limits<double>::infinity();
    if (i < n) {
      for (std::size_t t = 0; t < n; ++t) {
        if (y[t] == 1) {
          if (lower(t)) continue;
          const double diff = gmax + grad[t];
          gmax2 = std::max(gmax2, grad[t]);
          if (diff > 0.0) {
            double quad = gram[i * n + i] + gram[t * n + t] - 2.0 * y[i] * q(i, t);
            if (quad <= 0.0) quad = kTau;
            const double obj = -(diff * diff) / quad;
            if (obj <= obj_min) {
              obj_min = obj;
              j = t;
            }
          }
        } else {
          if (upper(t)) continue;
          const double diff = gmax - grad[t];
          gmax2 = std::max(gmax2, -grad[t]);
          if (diff > 0.0) {
            double quad = gram[i * n + i] + gram[t * n + t] + 2.0 * y[i] * q(i, t);
            if (quad <= 0.0) quad = kTau;
            const double obj = -(diff * diff) / quad;
            if (obj <= obj_min) {
              obj_min = obj;
              j = t;
            }
          }
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < opt.tolerance) break;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = gram[i * n + i] + gram[j * n + j] + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = gram[i * n + i] + gram[j * n + j] - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(i, t) * di + q(j, t) * dj;
  }

  SvmModel model;
  model.alphas = alpha;
  model.regularization = c;
  model.iterations = iter;
  model.weights.assign(x.cols(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (alpha[k] == 0.0) continue;
    const double coef = alpha[k] * y[k];
    for (std::size_t f = 0; f < x.cols(); ++f) model.weights[f] += coef * x(k, f);
  }

  // Bias from the free multipliers; midpoint of the feasible interval if none.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
  model.bias = -rho;
  return model;
}

}  // namespace fdp::selection

#endif  // FDP_SELECTION_SVM_HPP_
