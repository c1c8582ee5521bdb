#include "ale/higher_order.hpp"

#include <algorithm>
#include <bit>

#include "ale/cells.hpp"
#include "ale/kernels.hpp"
#include "ale/partition.hpp"

namespace ale {

namespace {

void check_features(const Dataset& data, std::span<const int> features, int max_order) {
  if (features.empty()) fail("ale: feature set must be nonempty");
  if (static_cast<int>(features.size()) > max_order) {
    fail("ale: order ", features.size(), " exceeds the cap of ", max_order);
  }
  if (features.size() > data.dims()) fail("ale: ", features.size(), " features but data has ", data.dims());
  for (std::size_t a = 0; a < features.size(); ++a) {
    if (features[a] < 0 || static_cast<std::size_t>(features[a]) >= data.dims()) {
      fail("ale: feature index ", features[a] + 1, " out of range 1..", data.dims());
    }
    for (std::size_t b = a + 1; b < features.size(); ++b) {
      if (features[a] == features[b]) fail("ale: repeated feature index ", features[a] + 1);
    }
  }
}

double corner_sign(int order, unsigned s) {
  return ((order - std::popcount(s)) % 2 == 0) ? 1.0 : -1.0;
}

// In-place inclusive prefix sum along one axis. Row-major flat order makes
// the lower neighbor's value already final when a point is reached.
void prefix_sum_axis(NdArray<double>& g, int axis) {
  const std::size_t stride = g.stride(axis);
  const std::size_t dim = static_cast<std::size_t>(g.dim(axis));
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if ((flat / stride) % dim != 0) g[flat] += g[flat - stride];
  }
}

}  // namespace

double finite_difference_general(Predictor& model, std::span<const double> background,
                                 std::span<const int> features, std::span<const double> lows,
                                 std::span<const double> highs) {
  const int p = static_cast<int>(features.size());
  if (p < 1) fail("finite difference: feature set must be nonempty");
  if (lows.size() != features.size() || highs.size() != features.size()) {
    fail("finite difference: endpoint arity mismatch");
  }
  const unsigned corners = 1u << p;
  Matrix rows(corners, background.size());
  for (unsigned s = 0; s < corners; ++s) {
    rows.set_row(s, background);
    for (int a = 0; a < p; ++a) {
      rows(s, static_cast<std::size_t>(features[static_cast<std::size_t>(a)])) =
          (s >> a & 1u) ? highs[static_cast<std::size_t>(a)] : lows[static_cast<std::size_t>(a)];
    }
  }
  const auto pred = model.predict(rows);
  double sum = 0;
  for (unsigned s = 0; s < corners; ++s) sum += corner_sign(p, s) * pred[s];
  return sum;
}

EffectGrid ale_general_uncentered(Predictor& model, const Dataset& data, std::span<const int> features,
                                  std::span<const int> K_per_axis, int max_order) {
  check_features(data, features, max_order);
  if (K_per_axis.size() != features.size()) {
    fail("ale: ", features.size(), " features but ", K_per_axis.size(), " interval counts");
  }
  const int p = static_cast<int>(features.size());
  const std::size_t n = data.n();

  std::vector<QuantilePartition> parts;
  parts.reserve(features.size());
  for (std::size_t a = 0; a < features.size(); ++a) {
    parts.push_back(build_quantile_partition(data, features[a], K_per_axis[a]));
  }

  std::vector<int> cell_dims, corner_dims;
  for (const auto& part : parts) {
    cell_dims.push_back(part.interval_count());
    corner_dims.push_back(part.interval_count() + 1);
  }

  // Joint cell membership, dataset order within a cell.
  NdArray<std::int64_t> counts(cell_dims, 0);
  std::vector<std::vector<int>> bins(features.size(), std::vector<int>(n));
  for (std::size_t a = 0; a < features.size(); ++a) {
    const auto col = data.column(features[a]);
    kernels::locate_bins(parts[a], col, bins[a], default_backend());
  }
  std::vector<std::vector<std::size_t>> members(counts.size());
  {
    std::vector<int> idx(features.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < features.size(); ++a) idx[a] = bins[a][i] - 1;
      const std::size_t c = counts.flat_index(idx);
      members[c].push_back(i);
      counts[c]++;
    }
  }

  // 2^p rows per observation, cells lexicographic, corners in bit order
  // (bit a set = axis a at its upper breakpoint).
  const unsigned corners = 1u << p;
  Matrix rows(static_cast<std::size_t>(corners) * n, data.dims());
  {
    std::vector<int> cell(features.size(), 0);
    std::size_t at = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      counts.unflatten(c, cell);
      for (std::size_t i : members[c]) {
        for (unsigned s = 0; s < corners; ++s) {
          rows.set_row(at, data.values().row(i));
          for (int a = 0; a < p; ++a) {
            const int k = cell[static_cast<std::size_t>(a)] + 1;
            rows(at, static_cast<std::size_t>(features[static_cast<std::size_t>(a)])) =
                (s >> a & 1u) ? parts[static_cast<std::size_t>(a)].upper(k) : parts[static_cast<std::size_t>(a)].lower(k);
          }
          ++at;
        }
      }
    }
  }
  const std::vector<double> pred = model.predict(rows);

  NdArray<double> increments(cell_dims, 0.0);
  {
    std::size_t at = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      double sum = 0;
      for (std::size_t r = 0; r < members[c].size(); ++r) {
        double diff = 0;
        for (unsigned s = 0; s < corners; ++s) diff += corner_sign(p, s) * pred[at + s];
        sum += diff;
        at += corners;
      }
      if (counts[c] > 0) increments[c] = sum / static_cast<double>(counts[c]);
    }
  }

  const ImputationResult imputation = impute_nearest_nonempty(increments, counts);

  EffectGrid grid;
  grid.features.assign(features.begin(), features.end());
  for (const auto& part : parts) grid.breakpoints.push_back(part.breakpoints());
  grid.cell_counts = std::move(counts);
  grid.imputed_from = imputation.source;
  grid.imputed_cells = imputation.imputed_cells;
  grid.stage = {GridStage::uncentered, 0};
  grid.values = NdArray<double>(corner_dims, 0.0);

  // Copy cell increments to their upper corners, then prefix-sum axis by
  // axis; base faces remain zero.
  {
    std::vector<int> cell(features.size(), 0), corner(features.size(), 0);
    for (std::size_t c = 0; c < grid.cell_counts.size(); ++c) {
      grid.cell_counts.unflatten(c, cell);
      for (std::size_t a = 0; a < features.size(); ++a) corner[a] = cell[a] + 1;
      grid.values.at(corner) = increments[c];
    }
    for (int axis = 0; axis < p; ++axis) prefix_sum_axis(grid.values, axis);
  }
  return grid;
}

EffectGrid extract_lower_order(const EffectGrid& grid, std::span<const int> v_features) {
  const int p = grid.order();
  if (v_features.empty()) fail("extract: subset must be nonempty");
  if (static_cast<int>(v_features.size()) >= p) fail("extract: subset must be a proper subset of the grid axes");

  std::vector<int> pos;  // positions of v within the grid axes
  for (int f : v_features) {
    const auto it = std::find(grid.features.begin(), grid.features.end(), f);
    if (it == grid.features.end()) fail("extract: feature index ", f + 1, " is not an axis of the grid");
    pos.push_back(static_cast<int>(it - grid.features.begin()));
  }
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = a + 1; b < pos.size(); ++b) {
      if (pos[a] == pos[b]) fail("extract: repeated feature index ", v_features[a] + 1);
    }
  }

  const int q = static_cast<int>(pos.size());
  const auto& cell_dims = grid.cell_counts.dims();
  std::vector<int> v_dims(pos.size());
  for (std::size_t a = 0; a < pos.size(); ++a) v_dims[a] = cell_dims[static_cast<std::size_t>(pos[a])];

  // Weighted v-differences accumulated over the full joint cells.
  NdArray<double> numerator(v_dims, 0.0);
  {
    std::vector<int> cell(cell_dims.size(), 0), corner(cell_dims.size(), 0), vidx(pos.size(), 0);
    const unsigned corners = 1u << q;
    for (std::size_t c = 0; c < grid.cell_counts.size(); ++c) {
      const std::int64_t w = grid.cell_counts[c];
      if (w == 0) continue;
      grid.cell_counts.unflatten(c, cell);
      double diff = 0;
      for (unsigned s = 0; s < corners; ++s) {
        // v axes at a cell corner, remaining axes at the cell's upper corner.
        for (std::size_t a = 0; a < cell.size(); ++a) corner[a] = cell[a] + 1;
        for (int a = 0; a < q; ++a) {
          corner[static_cast<std::size_t>(pos[static_cast<std::size_t>(a)])] =
              cell[static_cast<std::size_t>(pos[static_cast<std::size_t>(a)])] + ((s >> a & 1u) ? 1 : 0);
        }
        diff += corner_sign(q, s) * grid.values.at(corner);
      }
      for (std::size_t a = 0; a < pos.size(); ++a) vidx[a] = cell[static_cast<std::size_t>(pos[a])];
      numerator.at(vidx) += static_cast<double>(w) * diff;
    }
  }

  std::vector<int> keep(pos.begin(), pos.end());
  JointCellCounts full(grid.features, grid.cell_counts);
  JointCellCounts v_marginal = full.marginal(keep);

  NdArray<double> increments(v_dims, 0.0);
  for (std::size_t c = 0; c < increments.size(); ++c) {
    if (v_marginal.grid()[c] > 0) increments[c] = numerator[c] / static_cast<double>(v_marginal.grid()[c]);
  }
  const ImputationResult imputation = impute_nearest_nonempty(increments, v_marginal.grid());

  EffectGrid out;
  out.features.assign(v_features.begin(), v_features.end());
  for (int a : pos) out.breakpoints.push_back(grid.breakpoints[static_cast<std::size_t>(a)]);
  out.cell_counts = v_marginal.grid();
  out.imputed_from = imputation.source;
  out.imputed_cells = imputation.imputed_cells;
  out.stage = {GridStage::uncentered, 0};

  std::vector<int> v_corner_dims(v_dims);
  for (auto& dim : v_corner_dims) dim += 1;
  out.values = NdArray<double>(v_corner_dims, 0.0);
  {
    std::vector<int> cell(pos.size(), 0), corner(pos.size(), 0);
    for (std::size_t c = 0; c < increments.size(); ++c) {
      increments.unflatten(c, cell);
      for (std::size_t a = 0; a < pos.size(); ++a) corner[a] = cell[a] + 1;
      out.values.at(corner) = increments[c];
    }
    for (int axis = 0; axis < q; ++axis) prefix_sum_axis(out.values, axis);
  }
  return out;
}

double grid_weighted_mean(const EffectGrid& grid) {
  double weighted = 0;
  std::int64_t n = 0;
  std::vector<int> cell(grid.cell_counts.dims().size(), 0), corner(cell.size(), 0);
  for (std::size_t c = 0; c < grid.cell_counts.size(); ++c) {
    const std::int64_t w = grid.cell_counts[c];
    n += w;
    if (w == 0) continue;
    grid.cell_counts.unflatten(c, cell);
    for (std::size_t a = 0; a < cell.size(); ++a) corner[a] = cell[a] + 1;
    weighted += static_cast<double>(w) * grid.values.at(corner);
  }
  return weighted / static_cast<double>(n);
}

EffectGrid ale_general(Predictor& model, const Dataset& data, std::span<const int> features,
                       std::span<const int> K_per_axis, int max_order) {
  EffectGrid grid = ale_general_uncentered(model, data, features, K_per_axis, max_order);
  const int p = grid.order();

  // Subtract effects level by level, largest order first; all extractions
  // of one level read the grid as it stood before that level.
  for (int r = p - 1; r >= 1; --r) {
    std::vector<EffectGrid> extracted;
    std::vector<int> choice(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) choice[static_cast<std::size_t>(a)] = a;
    while (true) {
      std::vector<int> v;
      for (int a : choice) v.push_back(grid.features[static_cast<std::size_t>(a)]);
      extracted.push_back(extract_lower_order(grid, v));

      int move = r - 1;
      while (move >= 0 && choice[static_cast<std::size_t>(move)] == p - r + move) --move;
      if (move < 0) break;
      choice[static_cast<std::size_t>(move)]++;
      for (int a = move + 1; a < r; ++a) choice[static_cast<std::size_t>(a)] = choice[static_cast<std::size_t>(a) - 1] + 1;
    }

    // Axis positions of each extraction within the full grid, fixed once.
    std::vector<std::vector<int>> positions(extracted.size());
    for (std::size_t e = 0; e < extracted.size(); ++e) {
      for (int f : extracted[e].features) {
        const auto it = std::find(grid.features.begin(), grid.features.end(), f);
        positions[e].push_back(static_cast<int>(it - grid.features.begin()));
      }
    }
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    std::vector<int> sub(static_cast<std::size_t>(r), 0);
    const auto& corner_dims = grid.values.dims();
    do {
      double sum = 0;
      for (std::size_t e = 0; e < extracted.size(); ++e) {
        for (std::size_t a = 0; a < positions[e].size(); ++a) sub[a] = idx[static_cast<std::size_t>(positions[e][a])];
        sum += extracted[e].values.at(sub);
      }
      grid.values.at(idx) -= sum;
    } while (next_index(idx, corner_dims));
    grid.stage = {GridStage::lower_removed, r};
  }

  grid.centering_constant = grid_weighted_mean(grid);
  for (auto& v : grid.values.flat()) v -= grid.centering_constant;
  grid.stage = {GridStage::centered, 0};
  return grid;
}

Decomposition ale_decomposition(Predictor& model, const Dataset& data, std::span<const int> K_per_axis) {
  const std::size_t d = data.dims();
  if (K_per_axis.size() != d) fail("decomposition: need one interval count per predictor");
  if (d > 16) fail("decomposition: too many predictors (", d, ")");

  Decomposition out;

  // Grand mean of f over the training rows.
  {
    const std::vector<double> pred = model.predict(data.values());
    double sum = 0;
    for (double p : pred) sum += p;
    out.grand_mean = sum / static_cast<double>(data.n());
  }

  // Every nonempty proper subset, smallest order first, lexicographic inside
  // an order. |D| itself is represented by the residual.
  std::vector<std::vector<int>> subsets;
  for (std::size_t size = 1; size < d; ++size) {
    std::vector<int> choice(size);
    for (std::size_t a = 0; a < size; ++a) choice[a] = static_cast<int>(a);
    while (true) {
      subsets.emplace_back(choice);
      int move = static_cast<int>(size) - 1;
      while (move >= 0 && choice[static_cast<std::size_t>(move)] == static_cast<int>(d - size) + move) --move;
      if (move < 0) break;
      choice[static_cast<std::size_t>(move)]++;
      for (std::size_t a = static_cast<std::size_t>(move) + 1; a < size; ++a) choice[a] = choice[a - 1] + 1;
    }
  }
  for (const auto& subset : subsets) {
    std::vector<int> K;
    for (int f : subset) K.push_back(K_per_axis[static_cast<std::size_t>(f)]);
    out.effects.push_back(ale_general(model, data, subset, K, static_cast<int>(d)));
  }

  // f on the full corner lattice.
  std::vector<int> corner_dims;
  for (std::size_t a = 0; a < d; ++a) {
    const QuantilePartition part = build_quantile_partition(data, static_cast<int>(a), K_per_axis[a]);
    out.breakpoints.push_back(part.breakpoints());
    corner_dims.push_back(part.interval_count() + 1);
  }
  out.residual = NdArray<double>(corner_dims, 0.0);
  Matrix rows(out.residual.size(), d);
  {
    std::vector<int> idx(d, 0);
    std::size_t at = 0;
    do {
      for (std::size_t a = 0; a < d; ++a) rows(at, a) = out.breakpoints[a][static_cast<std::size_t>(idx[a])];
      ++at;
    } while (next_index(idx, corner_dims));
  }
  const std::vector<double> pred = model.predict(rows);

  std::vector<int> idx(d, 0);
  std::vector<int> sub(d, 0);
  std::size_t at = 0;
  do {
    double value = pred[at] - out.grand_mean;
    for (const auto& grid : out.effects) {
      for (std::size_t a = 0; a < grid.features.size(); ++a) sub[a] = idx[static_cast<std::size_t>(grid.features[a])];
      value -= grid.values.at({sub.data(), grid.features.size()});
    }
    out.residual.at(idx) = value;
    ++at;
  } while (next_index(idx, corner_dims));

  return out;
}

}  // namespace ale
