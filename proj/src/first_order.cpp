#include "ale/first_order.hpp"

#include <algorithm>

#include "ale/kernels.hpp"

namespace ale {

EffectCurve ale_first(Predictor& model, const Dataset& data, int feature, int K) {
  const QuantilePartition part = build_quantile_partition(data, feature, K);
  const int Ke = part.interval_count();
  const std::size_t n = data.n();
  const std::size_t d = data.dims();
  const std::size_t j = static_cast<std::size_t>(feature);

  const auto column = data.column(feature);
  std::vector<int> bin(n);
  kernels::locate_bins(part, column, bin, default_backend());

  // Observation ids grouped by bin, dataset order preserved within a bin.
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(Ke) + 1);
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(bin[i])].push_back(i);

  // Batched rows, bin-major: all lower-endpoint rows of a bin, then all
  // upper-endpoint rows, then the next bin.
  Matrix rows(2 * n, d);
  std::vector<std::size_t> lower_pos(n), upper_pos(n);
  std::size_t at = 0;
  for (int k = 1; k <= Ke; ++k) {
    for (int side = 0; side < 2; ++side) {
      const double z = side == 0 ? part.lower(k) : part.upper(k);
      for (std::size_t i : members[static_cast<std::size_t>(k)]) {
        rows.set_row(at, data.values().row(i));
        rows(at, j) = z;
        (side == 0 ? lower_pos : upper_pos)[i] = at;
        ++at;
      }
    }
  }
  const std::vector<double> pred = model.predict(rows);

  EffectCurve curve;
  curve.feature = feature;
  curve.breakpoints = part.breakpoints();
  curve.counts = part.counts();
  curve.uncentered.assign(static_cast<std::size_t>(Ke) + 1, 0.0);
  curve.centered.assign(static_cast<std::size_t>(Ke) + 1, 0.0);

  for (int k = 1; k <= Ke; ++k) {
    double sum = 0;
    for (std::size_t i : members[static_cast<std::size_t>(k)]) sum += pred[upper_pos[i]] - pred[lower_pos[i]];
    const double increment = sum / static_cast<double>(part.count(k));
    curve.uncentered[static_cast<std::size_t>(k)] = curve.uncentered[static_cast<std::size_t>(k) - 1] + increment;
  }

  double weighted = 0;
  for (int k = 1; k <= Ke; ++k) weighted += static_cast<double>(part.count(k)) * curve.uncentered[static_cast<std::size_t>(k)];
  curve.centering_constant = weighted / static_cast<double>(n);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(Ke); ++k) {
    curve.centered[k] = curve.uncentered[k] - curve.centering_constant;
  }
  return curve;
}

double evaluate_curve(const EffectCurve& curve, double x) {
  const auto& z = curve.breakpoints;
  const auto& v = curve.centered;
  if (x <= z.front()) return v.front();
  if (x >= z.back()) return v.back();
  const auto it = std::upper_bound(z.begin(), z.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - z.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - z[lo]) / (z[hi] - z[lo]);
  return v[lo] + t * (v[hi] - v[lo]);
}

}  // namespace ale
