#ifndef ALE_PARTITION_HPP
#define ALE_PARTITION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ale/dataset.hpp"

namespace ale {

/// Quantile partition of one feature's sample range into K_effective
/// right-closed intervals (z_{k-1}, z_k], k = 1..K_effective.
///
/// Breakpoint rule: z_k is the sorted sample value at 1-based position
/// ceil(k*n/K); z_0 is the sample minimum. Duplicate breakpoints are
/// merged, so K_effective <= K and breakpoints are strictly increasing.
/// The minimum itself belongs to bin 1.
class QuantilePartition {
 public:
  QuantilePartition(int feature, int requested, std::vector<double> breakpoints,
                    std::vector<std::int64_t> counts)
      : feature_(feature),
        requested_(requested),
        breakpoints_(std::move(breakpoints)),
        counts_(std::move(counts)) {}

  int feature() const { return feature_; }
  int requested_intervals() const { return requested_; }
  int interval_count() const { return static_cast<int>(counts_.size()); }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double lower(int k) const { return breakpoints_[static_cast<std::size_t>(k) - 1]; }
  double upper(int k) const { return breakpoints_[static_cast<std::size_t>(k)]; }
  double min() const { return breakpoints_.front(); }
  double max() const { return breakpoints_.back(); }

  /// n_j(k) for k in 1..K_effective.
  std::int64_t count(int k) const { return counts_[static_cast<std::size_t>(k) - 1]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  int feature_;
  int requested_;
  std::vector<double> breakpoints_;  // z_0 .. z_K, strictly increasing
  std::vector<std::int64_t> counts_;
};

QuantilePartition build_quantile_partition(std::span<const double> values, int feature, int K);
QuantilePartition build_quantile_partition(const Dataset& data, int feature, int K);

/// Total function: index k with x in (z_{k-1}, z_k]. Values at or below z_0
/// map to 1, values above z_K clamp to K_effective.
int locate_bin(const QuantilePartition& p, double x);

}  // namespace ale

#endif  // ALE_PARTITION_HPP
