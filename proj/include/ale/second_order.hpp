#ifndef ALE_SECOND_ORDER_HPP
#define ALE_SECOND_ORDER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ale/dataset.hpp"
#include "ale/predictor.hpp"

namespace ale {

/// Second-order (interaction) effect of a feature pair on the corner
/// lattice (K_j+1) x (K_l+1). Three stages are kept:
///   accumulated    double prefix sum of cell-averaged second differences,
///                  row/column 0 identically zero;
///   main_removed   accumulated minus the discrete main effects extracted
///                  from it with conditional joint-count weights;
///   centered       main_removed minus the data-weighted grand mean.
/// Corner lattices are row-major: index k * (K_l + 1) + m. Cell arrays are
/// row-major K_j x K_l: index (k-1) * K_l + (m-1).
struct EffectSurface {
  int feature_j = 0;
  int feature_l = 0;
  std::vector<double> breaks_j;  // z_0..z_Kj
  std::vector<double> breaks_l;  // z_0..z_Kl

  std::vector<double> accumulated;
  std::vector<double> main_removed;
  std::vector<double> centered;

  std::vector<std::int64_t> cell_counts;
  std::vector<std::uint8_t> cell_empty;
  std::vector<std::size_t> imputed_from;  // donor cell per cell, self if not imputed
  std::size_t imputed_cells = 0;
  double centering_constant = 0;

  int K_j() const { return static_cast<int>(breaks_j.size()) - 1; }
  int K_l() const { return static_cast<int>(breaks_l.size()) - 1; }
  double corner(const std::vector<double>& lattice, int k, int m) const {
    return lattice[static_cast<std::size_t>(k) * (static_cast<std::size_t>(K_l()) + 1) + static_cast<std::size_t>(m)];
  }
};

/// Cross difference of the model over one grid cell at one background row:
/// [f(hi_j, hi_l, .) - f(lo_j, hi_l, .)] - [f(hi_j, lo_l, .) - f(lo_j, lo_l, .)].
/// Issues the four corner-modified rows as one predict call.
double second_order_difference(Predictor& model, std::span<const double> background, int feature_j,
                               int feature_l, double lo_j, double hi_j, double lo_l, double hi_l);

/// Nearest-nonempty completion of per-cell averaged second differences,
/// in place. Distance is Euclidean between (k, m) index pairs; equidistant
/// donors resolve to the lexicographically smallest cell. Returns donor
/// provenance and the number of filled cells.
struct CellImputation {
  std::vector<std::size_t> source;
  std::size_t imputed_cells = 0;
};

CellImputation impute_empty_cells(std::vector<double>& increments,
                                  const std::vector<std::int64_t>& counts, int K_j, int K_l);

/// Second-order ALE of the pair {j, l}: cell-averaged cross differences
/// (empty cells imputed), double prefix sum, discrete main effects removed,
/// data-weighted grand centering. One batched predict call of exactly 4n
/// rows, cell-major with each observation contributing its four corner
/// rows; imputation reuses averaged increments and costs no extra rows.
EffectSurface ale_second(Predictor& model, const Dataset& data, int feature_j, int feature_l, int K);
EffectSurface ale_second(Predictor& model, const Dataset& data, int feature_j, int feature_l, int K_j, int K_l);

/// Unaccumulated normalized local effects: cell-averaged cross difference
/// divided by the cell side lengths. Empty cells are flagged, not imputed.
struct LocalEffectSurface {
  int feature_j = 0;
  int feature_l = 0;
  std::vector<double> breaks_j;
  std::vector<double> breaks_l;
  std::vector<double> values;             // per cell, 0 where empty
  std::vector<std::int64_t> cell_counts;  // per cell
  std::vector<std::uint8_t> cell_empty;   // per cell
};

LocalEffectSurface local_effect_surface(Predictor& model, const Dataset& data, int feature_j,
                                        int feature_l, int K);

}  // namespace ale

#endif  // ALE_SECOND_ORDER_HPP
