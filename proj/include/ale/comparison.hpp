#ifndef ALE_COMPARISON_HPP
#define ALE_COMPARISON_HPP

#include <optional>
#include <vector>

#include "ale/baselines.hpp"
#include "ale/expression.hpp"
#include "ale/first_order.hpp"

namespace ale {

/// ALE, PD and M main effects of one feature on the shared axis z_1..z_K,
/// optionally scored against a declared true effect. Each method is
/// determined only up to an additive constant, so residuals against the
/// truth are mean-aligned over the central window before the RMSE; the
/// window keeps breakpoints z_k with 0.05*K <= k <= 0.95*K.
struct MethodComparison {
  int feature = 0;
  std::vector<double> grid;  // z_1..z_K
  std::vector<double> ale;
  std::vector<double> pd;
  std::vector<double> m;
  std::optional<std::vector<double>> truth;

  struct Rmse {
    double ale = 0, pd = 0, m = 0;
  };
  std::optional<Rmse> rmse;
  std::size_t window_lo = 0, window_hi = 0;  // inclusive indices into grid

  std::int64_t ale_rows = 0, pd_rows = 0, m_rows = 0;
  EffectCurve ale_curve;  // full curve including z_0
};

/// The truth expression, when given, may reference only the compared
/// feature's variable and is evaluated directly on the grid.
MethodComparison compare_methods(Predictor& model, const Dataset& data, int feature, int K,
                                 const std::optional<ExprProgram>& truth = std::nullopt);

/// Least-squares slope of y against x over [lo, hi] (inclusive indices).
double least_squares_slope(std::span<const double> x, std::span<const double> y, std::size_t lo,
                           std::size_t hi);

}  // namespace ale

#endif  // ALE_COMPARISON_HPP
