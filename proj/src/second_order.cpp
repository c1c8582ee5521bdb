#include "ale/second_order.hpp"

#include "ale/cells.hpp"
#include "ale/kernels.hpp"

namespace ale {

double second_order_difference(Predictor& model, std::span<const double> background, int feature_j,
                               int feature_l, double lo_j, double hi_j, double lo_l, double hi_l) {
  if (feature_j == feature_l) fail("second-order difference: features must differ");
  Matrix rows(4, background.size());
  const double zj[2] = {lo_j, hi_j};
  const double zl[2] = {lo_l, hi_l};
  for (int c = 0; c < 4; ++c) {
    rows.set_row(static_cast<std::size_t>(c), background);
    rows(static_cast<std::size_t>(c), static_cast<std::size_t>(feature_j)) = zj[c & 1];
    rows(static_cast<std::size_t>(c), static_cast<std::size_t>(feature_l)) = zl[(c >> 1) & 1];
  }
  const auto p = model.predict(rows);
  return (p[3] - p[2]) - (p[1] - p[0]);
}

CellImputation impute_empty_cells(std::vector<double>& increments,
                                  const std::vector<std::int64_t>& counts, int K_j, int K_l) {
  if (increments.size() != counts.size() ||
      increments.size() != static_cast<std::size_t>(K_j) * static_cast<std::size_t>(K_l)) {
    fail("impute: cell grid shape mismatch");
  }
  NdArray<double> values({K_j, K_l});
  NdArray<std::int64_t> occupancy({K_j, K_l});
  values.flat() = increments;
  occupancy.flat() = counts;
  const ImputationResult r = impute_nearest_nonempty(values, occupancy);
  increments = values.flat();
  return {r.source, r.imputed_cells};
}

namespace {

struct CellLayout {
  QuantilePartition part_j;
  QuantilePartition part_l;
  std::vector<std::vector<std::size_t>> members;  // per cell, dataset order
  std::vector<std::int64_t> counts;               // per cell
  int Kj, Kl;

  std::size_t cell(int k, int m) const {
    return static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(Kl) + static_cast<std::size_t>(m - 1);
  }
};

CellLayout build_cells(const Dataset& data, int feature_j, int feature_l, int K_j, int K_l) {
  if (feature_j == feature_l) fail("second-order: features must differ");
  CellLayout out{build_quantile_partition(data, feature_j, K_j),
                 build_quantile_partition(data, feature_l, K_l),
                 {},
                 {},
                 0,
                 0};
  out.Kj = out.part_j.interval_count();
  out.Kl = out.part_l.interval_count();

  const std::size_t n = data.n();
  const auto col_j = data.column(feature_j);
  const auto col_l = data.column(feature_l);
  std::vector<int> bin_j(n), bin_l(n);
  kernels::locate_bins(out.part_j, col_j, bin_j, default_backend());
  kernels::locate_bins(out.part_l, col_l, bin_l, default_backend());

  const std::size_t cells = static_cast<std::size_t>(out.Kj) * static_cast<std::size_t>(out.Kl);
  out.members.assign(cells, {});
  out.counts.assign(cells, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = out.cell(bin_j[i], bin_l[i]);
    out.members[c].push_back(i);
    out.counts[c]++;
  }
  return out;
}

// Averaged cross differences per cell: one batched predict of 4n rows,
// cells in lexicographic (k, m) order, observations in dataset order, the
// four corners of an observation adjacent as (--, +-, -+, ++) on (j, l).
std::vector<double> averaged_cell_differences(Predictor& model, const Dataset& data,
                                              const CellLayout& cells, int feature_j, int feature_l) {
  const std::size_t n = data.n();
  Matrix rows(4 * n, data.dims());
  std::size_t at = 0;
  for (int k = 1; k <= cells.Kj; ++k) {
    for (int m = 1; m <= cells.Kl; ++m) {
      for (std::size_t i : cells.members[cells.cell(k, m)]) {
        for (int c = 0; c < 4; ++c) {
          rows.set_row(at, data.values().row(i));
          rows(at, static_cast<std::size_t>(feature_j)) = (c & 1) ? cells.part_j.upper(k) : cells.part_j.lower(k);
          rows(at, static_cast<std::size_t>(feature_l)) = ((c >> 1) & 1) ? cells.part_l.upper(m) : cells.part_l.lower(m);
          ++at;
        }
      }
    }
  }
  const std::vector<double> pred = model.predict(rows);

  std::vector<double> increments(cells.counts.size(), 0.0);
  at = 0;
  for (std::size_t c = 0; c < cells.counts.size(); ++c) {
    double sum = 0;
    for (std::size_t r = 0; r < cells.members[c].size(); ++r) {
      sum += (pred[at + 3] - pred[at + 2]) - (pred[at + 1] - pred[at + 0]);
      at += 4;
    }
    if (cells.counts[c] > 0) increments[c] = sum / static_cast<double>(cells.counts[c]);
  }
  return increments;
}

}  // namespace

EffectSurface ale_second(Predictor& model, const Dataset& data, int feature_j, int feature_l, int K) {
  return ale_second(model, data, feature_j, feature_l, K, K);
}

EffectSurface ale_second(Predictor& model, const Dataset& data, int feature_j, int feature_l,
                         int K_j, int K_l) {
  const CellLayout cells = build_cells(data, feature_j, feature_l, K_j, K_l);
  const int Kj = cells.Kj, Kl = cells.Kl;
  const std::size_t n = data.n();

  std::vector<double> increments = averaged_cell_differences(model, data, cells, feature_j, feature_l);
  const CellImputation imputation = impute_empty_cells(increments, cells.counts, Kj, Kl);

  EffectSurface s;
  s.feature_j = feature_j;
  s.feature_l = feature_l;
  s.breaks_j = cells.part_j.breakpoints();
  s.breaks_l = cells.part_l.breakpoints();
  s.cell_counts = cells.counts;
  s.imputed_from = imputation.source;
  s.imputed_cells = imputation.imputed_cells;
  s.cell_empty.assign(cells.counts.size(), 0);
  for (std::size_t c = 0; c < cells.counts.size(); ++c) s.cell_empty[c] = cells.counts[c] == 0;

  const std::size_t W = static_cast<std::size_t>(Kl) + 1;
  auto corner = [&](std::vector<double>& g, int k, int m) -> double& {
    return g[static_cast<std::size_t>(k) * W + static_cast<std::size_t>(m)];
  };

  // Double prefix sum over cells; corner row/column 0 stays zero.
  s.accumulated.assign(static_cast<std::size_t>(Kj + 1) * W, 0.0);
  for (int k = 1; k <= Kj; ++k) {
    for (int m = 1; m <= Kl; ++m) {
      corner(s.accumulated, k, m) = increments[cells.cell(k, m)] + corner(s.accumulated, k - 1, m) +
                                    corner(s.accumulated, k, m - 1) - corner(s.accumulated, k - 1, m - 1);
    }
  }

  // Discrete main effects of the accumulated surface, conditional weights
  // n_{jl}(k, m) / n_j(k) along j and n_{jl}(k, m) / n_l(m) along l.
  std::vector<double> g_j(static_cast<std::size_t>(Kj) + 1, 0.0);
  for (int k = 1; k <= Kj; ++k) {
    double acc = 0;
    for (int m = 1; m <= Kl; ++m) {
      acc += static_cast<double>(cells.counts[cells.cell(k, m)]) *
             (corner(s.accumulated, k, m) - corner(s.accumulated, k - 1, m));
    }
    g_j[static_cast<std::size_t>(k)] = g_j[static_cast<std::size_t>(k) - 1] + acc / static_cast<double>(cells.part_j.count(k));
  }
  std::vector<double> g_l(static_cast<std::size_t>(Kl) + 1, 0.0);
  for (int m = 1; m <= Kl; ++m) {
    double acc = 0;
    for (int k = 1; k <= Kj; ++k) {
      acc += static_cast<double>(cells.counts[cells.cell(k, m)]) *
             (corner(s.accumulated, k, m) - corner(s.accumulated, k, m - 1));
    }
    g_l[static_cast<std::size_t>(m)] = g_l[static_cast<std::size_t>(m) - 1] + acc / static_cast<double>(cells.part_l.count(m));
  }

  s.main_removed.assign(s.accumulated.size(), 0.0);
  for (int k = 0; k <= Kj; ++k) {
    for (int m = 0; m <= Kl; ++m) {
      corner(s.main_removed, k, m) = corner(s.accumulated, k, m) - g_j[static_cast<std::size_t>(k)] - g_l[static_cast<std::size_t>(m)];
    }
  }

  double weighted = 0;
  for (int k = 1; k <= Kj; ++k) {
    for (int m = 1; m <= Kl; ++m) {
      weighted += static_cast<double>(cells.counts[cells.cell(k, m)]) * corner(s.main_removed, k, m);
    }
  }
  s.centering_constant = weighted / static_cast<double>(n);

  s.centered.assign(s.accumulated.size(), 0.0);
  for (std::size_t i = 0; i < s.centered.size(); ++i) s.centered[i] = s.main_removed[i] - s.centering_constant;
  return s;
}

LocalEffectSurface local_effect_surface(Predictor& model, const Dataset& data, int feature_j,
                                        int feature_l, int K) {
  const CellLayout cells = build_cells(data, feature_j, feature_l, K, K);
  std::vector<double> increments = averaged_cell_differences(model, data, cells, feature_j, feature_l);

  LocalEffectSurface s;
  s.feature_j = feature_j;
  s.feature_l = feature_l;
  s.breaks_j = cells.part_j.breakpoints();
  s.breaks_l = cells.part_l.breakpoints();
  s.cell_counts = cells.counts;
  s.cell_empty.assign(cells.counts.size(), 0);
  s.values.assign(cells.counts.size(), 0.0);
  for (int k = 1; k <= cells.Kj; ++k) {
    for (int m = 1; m <= cells.Kl; ++m) {
      const std::size_t c = cells.cell(k, m);
      if (cells.counts[c] == 0) {
        s.cell_empty[c] = 1;
        continue;
      }
      const double area = (cells.part_j.upper(k) - cells.part_j.lower(k)) * (cells.part_l.upper(m) - cells.part_l.lower(m));
      s.values[c] = increments[c] / area;
    }
  }
  return s;
}

}  // namespace ale
