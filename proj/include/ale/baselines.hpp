#ifndef ALE_BASELINES_HPP
#define ALE_BASELINES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ale/dataset.hpp"
#include "ale/nd_array.hpp"
#include "ale/predictor.hpp"

namespace ale {

/// Partial-dependence estimate on a tensor grid: at each grid point the
/// mean prediction over all n rows with the J columns overwritten.
/// Costs exactly prod_a grid[a].size() * n prediction rows.
struct PDEffect {
  std::vector<int> features;
  std::vector<std::vector<double>> grid;  // per-axis evaluation points
  NdArray<double> values;
  std::int64_t evaluation_rows = 0;
};

PDEffect pd_effect(Predictor& model, const Dataset& data, std::span<const int> features,
                   std::vector<std::vector<double>> grid);

/// Default grid: the K upper quantile breakpoints z_1..z_K of each feature,
/// so PD shares an x-axis with the ALE corner values and costs K^{|J|} * n.
PDEffect pd_effect(Predictor& model, const Dataset& data, std::span<const int> features, int K);

/// Marginal-plot estimate: at each breakpoint z_k the mean prediction over
/// the observations whose feature value falls in bin k, the quantile bin
/// standing in for the neighborhood. Costs exactly n prediction rows.
struct MEffect {
  int feature = 0;
  std::vector<double> points;                    // z_1..z_K
  std::vector<double> values;
  std::vector<std::int64_t> neighborhood_sizes;  // n_j(k), sums to n
};

MEffect m_effect(Predictor& model, const Dataset& data, int feature, int K);

}  // namespace ale

#endif  // ALE_BASELINES_HPP
