#ifndef ALE_CELLS_HPP
#define ALE_CELLS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ale/nd_array.hpp"
#include "ale/partition.hpp"

namespace ale {

/// One cell of a joint quantile grid: the feature subset J and a 1-based
/// bin index per feature.
struct CellIndex {
  std::vector<int> features;
  std::vector<int> bins;
};

/// Dense joint occupancy counts n_J(k) over the cross product of per-feature
/// quantile partitions. Cells never touched hold 0; counts sum to n.
class JointCellCounts {
 public:
  JointCellCounts(std::vector<int> features, NdArray<std::int64_t> counts)
      : features_(std::move(features)), counts_(std::move(counts)) {}

  const std::vector<int>& features() const { return features_; }
  const NdArray<std::int64_t>& grid() const { return counts_; }
  const std::vector<int>& dims() const { return counts_.dims(); }

  std::int64_t at(const CellIndex& cell) const;
  /// bins are 1-based, one per feature in order.
  std::int64_t at_bins(std::span<const int> bins) const;
  std::int64_t total() const;

  /// Counts marginalized onto a subset of axes (positions into features()).
  JointCellCounts marginal(std::span<const int> keep_positions) const;

 private:
  std::vector<int> features_;
  NdArray<std::int64_t> counts_;  // dims: K_effective per feature
};

JointCellCounts joint_cell_counts(const Dataset& data, std::span<const QuantilePartition> partitions);

/// Nearest-nonempty completion of a cell-value grid. Every cell with
/// count 0 receives the value of the closest cell with count > 0, distance
/// being Euclidean between integer index vectors and ties broken by the
/// lexicographically smallest index. source[flat] records the donor cell
/// (self when the cell was nonempty). Requires at least one nonempty cell.
struct ImputationResult {
  std::vector<std::size_t> source;
  std::size_t imputed_cells = 0;
};

ImputationResult impute_nearest_nonempty(NdArray<double>& values, const NdArray<std::int64_t>& counts);

}  // namespace ale

#endif  // ALE_CELLS_HPP
