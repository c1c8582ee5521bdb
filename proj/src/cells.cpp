#include "ale/cells.hpp"

#include <algorithm>

namespace ale {

std::int64_t JointCellCounts::at(const CellIndex& cell) const {
  if (cell.features != features_) fail("cell counts: feature subset mismatch");
  return at_bins(cell.bins);
}

std::int64_t JointCellCounts::at_bins(std::span<const int> bins) const {
  if (bins.size() != features_.size()) fail("cell counts: expected ", features_.size(), " bin indices, got ", bins.size());
  std::vector<int> idx(bins.size());
  for (std::size_t a = 0; a < bins.size(); ++a) {
    if (bins[a] < 1 || bins[a] > counts_.dim(static_cast<int>(a))) {
      fail("cell counts: bin index ", bins[a], " out of range 1..", counts_.dim(static_cast<int>(a)));
    }
    idx[a] = bins[a] - 1;
  }
  return counts_.at(idx);
}

std::int64_t JointCellCounts::total() const {
  std::int64_t s = 0;
  for (auto c : counts_.flat()) s += c;
  return s;
}

JointCellCounts JointCellCounts::marginal(std::span<const int> keep_positions) const {
  std::vector<int> kept_features, kept_dims;
  for (int pos : keep_positions) {
    kept_features.push_back(features_[static_cast<std::size_t>(pos)]);
    kept_dims.push_back(counts_.dim(pos));
  }
  NdArray<std::int64_t> out(kept_dims, 0);
  std::vector<int> idx(counts_.dims().size(), 0);
  std::vector<int> sub(keep_positions.size());
  for (std::size_t flat = 0; flat < counts_.size(); ++flat) {
    counts_.unflatten(flat, idx);
    for (std::size_t a = 0; a < keep_positions.size(); ++a) sub[a] = idx[static_cast<std::size_t>(keep_positions[a])];
    out.at(sub) += counts_[flat];
  }
  return JointCellCounts(std::move(kept_features), std::move(out));
}

JointCellCounts joint_cell_counts(const Dataset& data, std::span<const QuantilePartition> partitions) {
  if (partitions.empty()) fail("cell counts: need at least one partition");
  std::vector<int> features, dims;
  for (const auto& p : partitions) {
    features.push_back(p.feature());
    dims.push_back(p.interval_count());
  }
  NdArray<std::int64_t> counts(dims, 0);
  std::vector<int> idx(partitions.size());
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t a = 0; a < partitions.size(); ++a) {
      idx[a] = locate_bin(partitions[a], data.values()(i, static_cast<std::size_t>(partitions[a].feature()))) - 1;
    }
    counts.at(idx)++;
  }
  return JointCellCounts(std::move(features), std::move(counts));
}

ImputationResult impute_nearest_nonempty(NdArray<double>& values, const NdArray<std::int64_t>& counts) {
  if (values.dims() != counts.dims()) fail("impute: value and count grids differ in shape");
  const std::size_t total = counts.size();

  std::vector<std::size_t> nonempty;
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (counts[flat] > 0) nonempty.push_back(flat);
  }
  if (nonempty.empty()) fail("impute: all cells empty");

  ImputationResult result;
  result.source.resize(total);
  const int rank = counts.rank();
  std::vector<int> a(rank), b(rank);
  for (std::size_t flat = 0; flat < total; ++flat) {
    result.source[flat] = flat;
    if (counts[flat] > 0) continue;
    counts.unflatten(flat, a);
    // Candidates scan in flat (= lexicographic) order; strict improvement
    // keeps the lexicographically smallest cell among equidistant donors.
    std::int64_t best = -1;
    std::size_t best_flat = 0;
    for (std::size_t cand : nonempty) {
      counts.unflatten(cand, b);
      std::int64_t d2 = 0;
      for (int ax = 0; ax < rank; ++ax) {
        const std::int64_t diff = a[static_cast<std::size_t>(ax)] - b[static_cast<std::size_t>(ax)];
        d2 += diff * diff;
      }
      if (best < 0 || d2 < best) {
        best = d2;
        best_flat = cand;
      }
    }
    values[flat] = values[best_flat];
    result.source[flat] = best_flat;
    result.imputed_cells++;
  }
  return result;
}

}  // namespace ale
