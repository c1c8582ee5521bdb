#include "ale/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ale/kernels.hpp"

namespace ale {

TreeModel::TreeModel(std::vector<TreeNode> nodes, int leaf_count, Backend backend)
    : nodes_(std::move(nodes)), leaf_count_(leaf_count), backend_(backend) {
  if (nodes_.empty()) fail("tree: empty node list");
}

double TreeModel::predict_row(std::span<const double> row) const {
  int at = 0;
  while (!nodes_[static_cast<std::size_t>(at)].is_leaf()) {
    const TreeNode& nd = nodes_[static_cast<std::size_t>(at)];
    at = row[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left : nd.right;
  }
  return nodes_[static_cast<std::size_t>(at)].value;
}

std::vector<double> TreeModel::evaluate(const Matrix& rows) {
  std::vector<double> out(rows.rows());
  kernels::predict_tree(nodes_, rows, out, backend_);
  return out;
}

namespace {

struct Split {
  bool found = false;
  int feature = 0;
  double threshold = 0;
  double gain = 0;  // sse(parent) - sse(left) - sse(right)
};

struct Candidate {
  std::vector<std::size_t> rows;  // ascending dataset order
  double sum = 0;
  double sum_sq = 0;
  Split best;
};

double leaf_mean(const Candidate& c) { return c.sum / static_cast<double>(c.rows.size()); }

// Exhaustive best split for one node. Rows sorted by (value, row index) so
// equal feature values group deterministically.
Split best_split(const Dataset& data, const std::vector<double>& y, const Candidate& node, int min_leaf) {
  Split best;
  const std::size_t m = node.rows.size();
  if (m < 2 * static_cast<std::size_t>(min_leaf) || m < 2) return best;

  double ymin = y[node.rows[0]], ymax = ymin;
  for (std::size_t r : node.rows) {
    ymin = std::min(ymin, y[r]);
    ymax = std::max(ymax, y[r]);
  }
  if (ymin == ymax) return best;  // pure node

  const double total_sum = node.sum;
  std::vector<std::pair<double, std::size_t>> order(m);
  for (int j = 0; j < static_cast<int>(data.dims()); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      order[i] = {data.values()(node.rows[i], static_cast<std::size_t>(j)), node.rows[i]};
    }
    std::sort(order.begin(), order.end());

    double left_sum = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      left_sum += y[order[i].second];
      if (order[i].first == order[i + 1].first) continue;  // split only between distinct values
      const std::size_t left_n = i + 1;
      const std::size_t right_n = m - left_n;
      if (left_n < static_cast<std::size_t>(min_leaf) || right_n < static_cast<std::size_t>(min_leaf)) continue;
      const double threshold = 0.5 * (order[i].first + order[i + 1].first);
      if (threshold <= order[i].first) continue;  // midpoint collapsed onto the left value
      const double right_sum = total_sum - left_sum;
      const double gain = left_sum * left_sum / static_cast<double>(left_n) +
                          right_sum * right_sum / static_cast<double>(right_n) -
                          total_sum * total_sum / static_cast<double>(m);
      // Scan order is (feature asc, threshold asc), so strict improvement
      // already breaks ties toward the lowest feature, then lowest threshold.
      if (gain > 0 && (!best.found || gain > best.gain)) {
        best = {true, j, threshold, gain};
      }
    }
  }
  return best;
}

}  // namespace

TreeModel fit_regression_tree(const Dataset& data, const TreeFitOptions& options) {
  if (!data.has_response()) fail("tree: dataset has no response column");
  if (options.max_leaves < 1) fail("tree: max_leaves must be >= 1");
  if (options.min_leaf < 1) fail("tree: min_leaf must be >= 1");
  if (data.n() < 2 * static_cast<std::size_t>(options.min_leaf)) {
    fail("tree: need at least 2*min_leaf = ", 2 * options.min_leaf, " rows, got ", data.n());
  }
  const std::vector<double>& y = data.response();

  std::vector<TreeNode> nodes(1);
  std::vector<Candidate> leaves(1);
  leaves[0].rows.resize(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) leaves[0].rows[i] = i;
  for (std::size_t i = 0; i < data.n(); ++i) {
    leaves[0].sum += y[i];
    leaves[0].sum_sq += y[i] * y[i];
  }
  leaves[0].best = best_split(data, y, leaves[0], options.min_leaf);
  std::vector<int> leaf_node{0};  // node id per candidate, creation order
  nodes[0].value = leaf_mean(leaves[0]);

  int leaf_count = 1;
  while (leaf_count < options.max_leaves) {
    // Best-first: the splittable leaf with the largest gain; earliest leaf wins ties.
    int pick = -1;
    for (std::size_t c = 0; c < leaves.size(); ++c) {
      if (!leaves[c].best.found) continue;
      if (pick < 0 || leaves[c].best.gain > leaves[static_cast<std::size_t>(pick)].best.gain) {
        pick = static_cast<int>(c);
      }
    }
    if (pick < 0) break;

    Candidate node = std::move(leaves[static_cast<std::size_t>(pick)]);
    const int node_id = leaf_node[static_cast<std::size_t>(pick)];
    leaves.erase(leaves.begin() + pick);
    leaf_node.erase(leaf_node.begin() + pick);

    Candidate left, right;
    for (std::size_t r : node.rows) {
      const double v = data.values()(r, static_cast<std::size_t>(node.best.feature));
      Candidate& side = v < node.best.threshold ? left : right;
      side.rows.push_back(r);
      side.sum += y[r];
      side.sum_sq += y[r] * y[r];
    }

    const int left_id = static_cast<int>(nodes.size());
    const int right_id = left_id + 1;
    nodes.push_back({});
    nodes.push_back({});
    nodes[static_cast<std::size_t>(node_id)].feature = node.best.feature;
    nodes[static_cast<std::size_t>(node_id)].threshold = node.best.threshold;
    nodes[static_cast<std::size_t>(node_id)].left = left_id;
    nodes[static_cast<std::size_t>(node_id)].right = right_id;
    nodes[static_cast<std::size_t>(left_id)].value = leaf_mean(left);
    nodes[static_cast<std::size_t>(right_id)].value = leaf_mean(right);

    left.best = best_split(data, y, left, options.min_leaf);
    right.best = best_split(data, y, right, options.min_leaf);
    leaves.push_back(std::move(left));
    leaf_node.push_back(left_id);
    leaves.push_back(std::move(right));
    leaf_node.push_back(right_id);
    ++leaf_count;
  }

  return TreeModel(std::move(nodes), leaf_count);
}

}  // namespace ale
