#ifndef FDP_MODELS_TREE_HPP_
#define FDP_MODELS_TREE_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "fdp/matrix.hpp"

namespace fdp::models {

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;  // go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  int label = 1;
  std::size_t samples = 0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int predict(std::span<const double> x) const {
    int at = 0;
    while (nodes[at].feature >= 0) {
      const auto& n = nodes[at];
      at = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[at].label;
  }

  std::size_t depth() const { return depth_from(0); }

 private:
  std::size_t depth_from(int at) const {
    const auto& n = nodes[at];
    if (n.feature < 0) return 0;
    return 1 + std::max(depth_from(n.left), depth_from(n.right));
  }
};

namespace detail {

inline double gini(double pos, double total) {
  if (total == 0.0) return 0.0;
  const double p = pos / total;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const Labels& y, std::size_t max_depth, std::size_t min_leaf)
      : x_(x), y_(y), max_depth_(max_depth), min_leaf_(min_leaf) {}

  TreeModel build() {
    std::vector<std::size_t> all(x_.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(all, 0);
    return std::move(model_);
  }

 private:
  int grow(const std::vector<std::size_t>& idx, std::size_t depth) {
    const int at = static_cast<int>(model_.nodes.size());
    model_.nodes.emplace_back();
    std::size_t pos = 0;
    for (std::size_t i : idx) pos += y_[i] == 1 ? 1 : 0;
    const std::size_t neg = idx.size() - pos;
    model_.nodes[at].samples = idx.size();
    model_.nodes[at].label = pos >= neg ? 1 : -1;  // ties go to the distressed class
    if (depth >= max_depth_ || pos == 0 || neg == 0 || idx.size() < 2 * min_leaf_) return at;

    const Split best = best_split(idx);
    if (best.feature < 0) return at;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t i : idx) {
      (x_(i, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right).push_back(i);
    }
    model_.nodes[at].feature = best.feature;
    model_.nodes[at].threshold = best.threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    model_.nodes[at].left = l;
    model_.nodes[at].right = r;
    return at;
  }

  /// Lowest weighted Gini over all (feature, midpoint) candidates honouring
  /// min_leaf. Ties keep the lowest feature, then the lowest threshold. Only
  /// counts enter the impurity, so the result does not depend on sample order.
  /// An impure node splits even at zero gain, which lets unlimited-depth trees
  /// separate patterns such as XOR that no single split improves.
  Split best_split(const std::vector<std::size_t>& idx) const {
    Split best;
    const double total = static_cast<double>(idx.size());
    double total_pos = 0.0;
    for (std::size_t i : idx) total_pos += y_[i] == 1 ? 1.0 : 0.0;
    std::vector<std::pair<double, int>> col(idx.size());
    for (std::size_t f = 0; f < x_.cols(); ++f) {
      for (std::size_t k = 0; k < idx.size(); ++k) col[k] = {x_(idx[k], f), y_[idx[k]]};
      std::sort(col.begin(), col.end());
      double left_pos = 0.0;
      for (std::size_t k = 0; k + 1 < col.size(); ++k) {
        left_pos += col[k].second == 1 ? 1.0 : 0.0;
        if (col[k].first == col[k + 1].first) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = total - nl;
        if (k + 1 < min_leaf_ || col.size() - (k + 1) < min_leaf_) continue;
        const double imp =
            (nl * gini(left_pos, nl) + nr * gini(total_pos - left_pos, nr)) / total;
        if (imp < best.impurity - 1e-12) {
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (col[k].first + col[k + 1].first);
          best.impurity = imp;
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  const Labels& y_;
  std::size_t max_depth_;
  std::size_t min_leaf_;
  TreeModel model_;
};

}  // namespace detail

/// CART classification tree on Gini impurity with depth and leaf-size limits.
inline TreeModel train_tree(const Matrix& x, const Labels& y, std::size_t max_depth,
                            std::size_t min_leaf) {
  return detail::TreeBuilder(x, y, max_depth, min_leaf).build();
}

}  // namespace fdp::models

#endif  // FDP_MODELS_TREE_HPP_
