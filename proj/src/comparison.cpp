#include "ale/comparison.hpp"

#include <cmath>

namespace ale {

namespace {

double aligned_rmse(std::span<const double> method, std::span<const double> truth, std::size_t lo,
                    std::size_t hi) {
  double mean_resid = 0;
  const std::size_t count = hi - lo + 1;
  for (std::size_t i = lo; i <= hi; ++i) mean_resid += method[i] - truth[i];
  mean_resid /= static_cast<double>(count);
  double ss = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double r = method[i] - truth[i] - mean_resid;
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(count));
}

}  // namespace

double least_squares_slope(std::span<const double> x, std::span<const double> y, std::size_t lo,
                           std::size_t hi) {
  const std::size_t count = hi - lo + 1;
  double mx = 0, my = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0, sxx = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) fail("slope: degenerate x window");
  return sxy / sxx;
}

MethodComparison compare_methods(Predictor& model, const Dataset& data, int feature, int K,
                                 const std::optional<ExprProgram>& truth) {
  MethodComparison out;
  out.feature = feature;

  std::int64_t before = model.ledger().total_rows_predicted();
  out.ale_curve = ale_first(model, data, feature, K);
  out.ale_rows = model.ledger().total_rows_predicted() - before;

  out.grid.assign(out.ale_curve.breakpoints.begin() + 1, out.ale_curve.breakpoints.end());
  out.ale.assign(out.ale_curve.centered.begin() + 1, out.ale_curve.centered.end());

  const int features[1] = {feature};
  before = model.ledger().total_rows_predicted();
  const PDEffect pd = pd_effect(model, data, features, std::vector<std::vector<double>>{out.grid});
  out.pd_rows = model.ledger().total_rows_predicted() - before;
  out.pd = pd.values.flat();

  before = model.ledger().total_rows_predicted();
  const MEffect m = m_effect(model, data, feature, K);
  out.m_rows = model.ledger().total_rows_predicted() - before;
  out.m = m.values;

  const std::size_t Ke = out.grid.size();
  // 1-based bin k in [ceil(0.05K), floor(0.95K)], clamped to valid bins.
  std::size_t lo_k = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(Ke)));
  std::size_t hi_k = static_cast<std::size_t>(std::floor(0.95 * static_cast<double>(Ke)));
  lo_k = std::max<std::size_t>(lo_k, 1);
  hi_k = std::min(std::max(hi_k, lo_k), Ke);
  out.window_lo = lo_k - 1;
  out.window_hi = hi_k - 1;

  if (truth) {
    if (truth->max_var() >= 0 && truth->max_var() != feature) {
      fail("truth expression '", truth->source(), "' must reference only x", feature + 1);
    }
    std::vector<double> t(Ke);
    std::vector<double> row(data.dims(), 0.0);
    for (std::size_t i = 0; i < Ke; ++i) {
      row[static_cast<std::size_t>(feature)] = out.grid[i];
      t[i] = (*truth)(row);
    }
    out.truth = std::move(t);
    MethodComparison::Rmse r;
    r.ale = aligned_rmse(out.ale, *out.truth, out.window_lo, out.window_hi);
    r.pd = aligned_rmse(out.pd, *out.truth, out.window_lo, out.window_hi);
    r.m = aligned_rmse(out.m, *out.truth, out.window_lo, out.window_hi);
    out.rmse = r;
  }
  return out;
}

}  // namespace ale
