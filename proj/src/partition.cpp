#include "ale/partition.hpp"

#include <algorithm>

namespace ale {

namespace {

// Bin lookup against a standalone breakpoint vector; locate_bin() wraps it.
int locate(const std::vector<double>& z, double x) {
  if (x <= z.front()) return 1;
  if (x > z.back()) return static_cast<int>(z.size()) - 1;
  const auto it = std::lower_bound(z.begin() + 1, z.end(), x);
  return static_cast<int>(it - z.begin());
}

}  // namespace

QuantilePartition build_quantile_partition(std::span<const double> values, int feature, int K) {
  if (K < 1) fail("partition: interval count must be >= 1, got ", K);
  const std::size_t n = values.size();
  if (n < 2) fail("partition: feature ", feature + 1, " has ", n, " values, need at least 2");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    fail("partition: degenerate feature ", feature + 1, " (all values equal ", sorted.front(), ")");
  }

  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(K) + 1);
  breaks.push_back(sorted.front());
  for (int k = 1; k <= K; ++k) {
    // 1-based order statistic at ceil(k*n/K); duplicates merged on the fly.
    const std::size_t pos = (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(K) - 1) / static_cast<std::size_t>(K);
    const double z = sorted[pos - 1];
    if (z > breaks.back()) breaks.push_back(z);
  }

  std::vector<std::int64_t> counts(breaks.size() - 1, 0);
  for (double x : values) counts[static_cast<std::size_t>(locate(breaks, x)) - 1]++;
  return QuantilePartition(feature, K, std::move(breaks), std::move(counts));
}

QuantilePartition build_quantile_partition(const Dataset& data, int feature, int K) {
  if (feature < 0 || static_cast<std::size_t>(feature) >= data.dims()) {
    fail("partition: feature index ", feature + 1, " out of range 1..", data.dims());
  }
  const auto col = data.column(feature);
  return build_quantile_partition(col, feature, K);
}

int locate_bin(const QuantilePartition& p, double x) { return locate(p.breakpoints(), x); }

}  // namespace ale
