#include "ale/baselines.hpp"

#include "ale/kernels.hpp"
#include "ale/partition.hpp"

namespace ale {

PDEffect pd_effect(Predictor& model, const Dataset& data, std::span<const int> features,
                   std::vector<std::vector<double>> grid) {
  if (features.empty()) fail("pd: need at least one feature");
  if (grid.size() != features.size()) fail("pd: ", features.size(), " features but ", grid.size(), " grid axes");
  for (const auto& axis : grid) {
    if (axis.empty()) fail("pd: empty grid axis");
  }

  PDEffect out;
  out.features.assign(features.begin(), features.end());
  out.grid = std::move(grid);

  std::vector<int> dims;
  for (const auto& axis : out.grid) dims.push_back(static_cast<int>(axis.size()));
  out.values = NdArray<double>(dims, 0.0);

  const std::size_t n = data.n();
  Matrix rows(n, data.dims());
  std::vector<int> idx(dims.size(), 0);
  // One predict call of n rows per grid point, grid points in
  // lexicographic order; the mean accumulates in dataset order.
  do {
    for (std::size_t i = 0; i < n; ++i) {
      rows.set_row(i, data.values().row(i));
      for (std::size_t a = 0; a < out.features.size(); ++a) {
        rows(i, static_cast<std::size_t>(out.features[a])) = out.grid[a][static_cast<std::size_t>(idx[a])];
      }
    }
    const std::vector<double> pred = model.predict(rows);
    double sum = 0;
    for (double p : pred) sum += p;
    out.values.at(idx) = sum / static_cast<double>(n);
    out.evaluation_rows += static_cast<std::int64_t>(n);
  } while (next_index(idx, dims));

  return out;
}

PDEffect pd_effect(Predictor& model, const Dataset& data, std::span<const int> features, int K) {
  std::vector<std::vector<double>> grid;
  for (int j : features) {
    const QuantilePartition part = build_quantile_partition(data, j, K);
    grid.emplace_back(part.breakpoints().begin() + 1, part.breakpoints().end());
  }
  return pd_effect(model, data, features, std::move(grid));
}

MEffect m_effect(Predictor& model, const Dataset& data, int feature, int K) {
  const QuantilePartition part = build_quantile_partition(data, feature, K);
  const int Ke = part.interval_count();
  const std::size_t n = data.n();
  const std::size_t j = static_cast<std::size_t>(feature);

  const auto column = data.column(feature);
  std::vector<int> bin(n);
  kernels::locate_bins(part, column, bin, default_backend());

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(Ke) + 1);
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(bin[i])].push_back(i);

  // Each observation appears once, at its own bin's upper breakpoint.
  Matrix rows(n, data.dims());
  std::size_t at = 0;
  for (int k = 1; k <= Ke; ++k) {
    for (std::size_t i : members[static_cast<std::size_t>(k)]) {
      rows.set_row(at, data.values().row(i));
      rows(at, j) = part.upper(k);
      ++at;
    }
  }
  const std::vector<double> pred = model.predict(rows);

  MEffect out;
  out.feature = feature;
  out.points.assign(part.breakpoints().begin() + 1, part.breakpoints().end());
  out.neighborhood_sizes = part.counts();
  out.values.assign(static_cast<std::size_t>(Ke), 0.0);
  at = 0;
  for (int k = 1; k <= Ke; ++k) {
    double sum = 0;
    for (std::size_t m = 0; m < members[static_cast<std::size_t>(k)].size(); ++m) sum += pred[at++];
    out.values[static_cast<std::size_t>(k) - 1] = sum / static_cast<double>(part.count(k));
  }
  return out;
}

}  // namespace ale
