#ifndef ALE_HIGHER_ORDER_HPP
#define ALE_HIGHER_ORDER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ale/dataset.hpp"
#include "ale/nd_array.hpp"
#include "ale/predictor.hpp"

namespace ale {

struct GridStage {
  enum Kind { uncentered, lower_removed, centered } kind = uncentered;
  int level = 0;  // lower_removed: smallest order already subtracted

  bool operator==(const GridStage&) const = default;
};

/// |J|-order effect values on the Cartesian corner lattice
/// prod_a (K_a + 1), with joint cell occupancy over the prod_a K_a cells.
/// Axis order follows the caller's feature order. In the uncentered stage
/// every base face (any coordinate at index 0) is identically zero.
struct EffectGrid {
  std::vector<int> features;
  std::vector<std::vector<double>> breakpoints;  // per axis, z_0..z_K
  NdArray<double> values;                        // corner lattice
  NdArray<std::int64_t> cell_counts;             // cells
  std::vector<std::size_t> imputed_from;         // donor per cell, self if untouched
  std::size_t imputed_cells = 0;
  GridStage stage;
  double centering_constant = 0;

  int order() const { return static_cast<int>(features.size()); }
};

/// Visualizing effects beyond this order is not the point of the method;
/// raise it explicitly if you really need to.
inline constexpr int kDefaultMaxOrder = 4;

/// |u|-order finite difference of the model over one cell at one background
/// row: inclusion-exclusion over the 2^{|u|} corner-modified rows, issued
/// as a single predict call. Sign of a corner selection s is
/// (-1)^(|u| - popcount(s)), upper endpoints being the 1-bits.
double finite_difference_general(Predictor& model, std::span<const double> background,
                                 std::span<const int> features, std::span<const double> lows,
                                 std::span<const double> highs);

/// Cell-averaged |J|-order finite differences (empty cells imputed from the
/// nearest nonempty cell) followed by one sequential prefix sum per axis.
/// Exactly 2^{|J|} * n prediction rows in one batched call, cell-major with
/// each observation contributing its 2^{|J|} corner rows in bit order.
EffectGrid ale_general_uncentered(Predictor& model, const Dataset& data, std::span<const int> features,
                                  std::span<const int> K_per_axis, int max_order = kDefaultMaxOrder);

/// Discrete L-hat of a grid-valued function over a proper nonempty subset v
/// of the grid's axes: finite differences along the v axes at each joint
/// cell, averaged over the remaining axes with conditional weights
/// n_J(k) / n_v(k_v), then prefix-summed along v. Empty v-marginal cells
/// (possible once |J| >= 3) take the nearest nonempty cell's increment.
/// At |J| = 2 this is exactly the main-effect subtrahend of the
/// second-order estimator.
EffectGrid extract_lower_order(const EffectGrid& grid, std::span<const int> v_features);

/// Fully centered |J|-order effect: starting from the uncentered grid,
/// subtract all order-r extractions for r = |J|-1 down to 1 (each level
/// extracted from the current grid), then the data-weighted grand mean.
/// Reduces exactly to the first- and second-order estimators.
EffectGrid ale_general(Predictor& model, const Dataset& data, std::span<const int> features,
                       std::span<const int> K_per_axis, int max_order = kDefaultMaxOrder);

/// Data-weighted mean of corner values, weights n_J(k) at each cell's upper
/// corner. Zero (up to rounding) for any fully centered grid.
double grid_weighted_mean(const EffectGrid& grid);

/// Full-order decomposition diagnostic for J = all predictors: every
/// centered effect grid for nonempty proper subsets of the axes, the
/// estimated grand mean of f, and the residual
///   f(corner) - grand_mean - sum_S effect_S(corner_S)
/// on the full corner lattice. The residual is the alternative full-order
/// effect estimate; its prediction cost (corner lattice + n rows) is
/// reported through the ledger like everything else.
struct Decomposition {
  std::vector<EffectGrid> effects;  // ordered by subset size, then lexicographic
  double grand_mean = 0;
  std::vector<std::vector<double>> breakpoints;
  NdArray<double> residual;
};

Decomposition ale_decomposition(Predictor& model, const Dataset& data, std::span<const int> K_per_axis);

}  // namespace ale

#endif  // ALE_HIGHER_ORDER_HPP
