#ifndef ALE_TREE_HPP
#define ALE_TREE_HPP

#include <span>
#include <string>
#include <vector>

#include "ale/dataset.hpp"
#include "ale/predictor.hpp"

namespace ale {

struct TreeNode {
  int feature = -1;       // -1 marks a leaf
  double threshold = 0;   // x[feature] < threshold goes left
  int left = -1;
  int right = -1;
  double value = 0;       // leaf prediction: mean response of residents
  bool is_leaf() const { return feature < 0; }
};

class TreeModel : public Predictor {
 public:
  TreeModel(std::vector<TreeNode> nodes, int leaf_count, Backend backend = default_backend());

  std::string label() const override { return str_cat("tree(", leaf_count_, " leaves)"); }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int leaf_count() const { return leaf_count_; }
  double predict_row(std::span<const double> row) const;

 private:
  std::vector<double> evaluate(const Matrix& rows) override;

  std::vector<TreeNode> nodes_;
  int leaf_count_;
  Backend backend_;
};

struct TreeFitOptions {
  int max_leaves = 100;
  int min_leaf = 1;
};

/// Greedy best-first CART-style growth: repeatedly split the leaf whose best
/// split gives the largest squared-error reduction, with candidate
/// thresholds at midpoints between consecutive distinct sorted feature
/// values, until the leaf budget is exhausted or no split reduces error.
/// Ties go to the lowest feature index, then the lowest threshold, then the
/// earliest-created leaf. A constant response yields a single leaf.
TreeModel fit_regression_tree(const Dataset& data, const TreeFitOptions& options = {});

}  // namespace ale

#endif  // ALE_TREE_HPP
