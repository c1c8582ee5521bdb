#ifndef ALE_FIRST_ORDER_HPP
#define ALE_FIRST_ORDER_HPP

#include <cstdint>
#include <vector>

#include "ale/dataset.hpp"
#include "ale/partition.hpp"
#include "ale/predictor.hpp"

namespace ale {

/// Main-effect estimate of one predictor on the partition corners z_0..z_K.
/// `uncentered` accumulates the per-bin averaged local differences with
/// uncentered[0] == 0; `centered` subtracts the data-weighted mean
/// c = (1/n) * sum_k n_j(k) * uncentered[k], so
/// sum_k n_j(k) * centered[k] == 0 up to rounding.
struct EffectCurve {
  int feature = 0;
  std::vector<double> breakpoints;       // z_0..z_K
  std::vector<double> uncentered;        // per corner
  std::vector<double> centered;          // per corner
  std::vector<std::int64_t> counts;      // n_j(k), k = 1..K
  double centering_constant = 0;

  int interval_count() const { return static_cast<int>(counts.size()); }
};

/// First-order accumulated local effects of feature j.
///
/// All 2n modified rows go out as a single batched predict call, ordered
/// bin-major: bin 1 lower-endpoint rows (dataset order), bin 1 upper rows,
/// bin 2 lower rows, and so on. Within-bin difference averages accumulate in
/// dataset order; the prefix sum runs in ascending bin order. The model
/// ledger grows by exactly 2n, independent of K.
EffectCurve ale_first(Predictor& model, const Dataset& data, int feature, int K);

/// Piecewise-linear interpolation between consecutive corners, clamped to
/// [z_0, z_K]. The estimator itself is a step function of the bin index;
/// this is the display/evaluation convention.
double evaluate_curve(const EffectCurve& curve, double x);

}  // namespace ale

#endif  // ALE_FIRST_ORDER_HPP
