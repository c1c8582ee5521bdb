#include <atomic>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ale/kernels.hpp"

namespace ale {

Backend default_backend() {
#ifdef _OPENMP
  return Backend::openmp;
#else
  return Backend::serial;
#endif
}

namespace kernels {

namespace detail {
[[noreturn]] void report_row_error(const ExprProgram& program, std::size_t row, EvalStatus status);
double tree_row(std::span<const TreeNode> nodes, std::span<const double> row);
}  // namespace detail

namespace omp {

#ifdef _OPENMP

void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(rows.rows());
  std::atomic<std::int64_t> first_bad{n};
#pragma omp parallel
  {
    std::vector<double> stack(static_cast<std::size_t>(std::max(program.stack_depth(), 1)));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const EvalStatus s = program.eval_row(rows.row(static_cast<std::size_t>(i)), stack.data(), out[static_cast<std::size_t>(i)]);
      if (s != EvalStatus::ok) {
        std::int64_t seen = first_bad.load(std::memory_order_relaxed);
        while (i < seen && !first_bad.compare_exchange_weak(seen, i, std::memory_order_relaxed)) {
        }
      }
    }
  }
  const std::int64_t bad = first_bad.load();
  if (bad < n) {
    // Re-evaluate the first failing row serially to recover its status.
    std::vector<double> stack(static_cast<std::size_t>(std::max(program.stack_depth(), 1)));
    double v = 0;
    const EvalStatus s = program.eval_row(rows.row(static_cast<std::size_t>(bad)), stack.data(), v);
    detail::report_row_error(program, static_cast<std::size_t>(bad), s);
  }
}

void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(rows.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = detail::tree_row(nodes, rows.row(static_cast<std::size_t>(i)));
  }
}

void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = locate_bin(partition, values[static_cast<std::size_t>(i)]);
  }
}

#else  // no OpenMP at build time: forward to the reference loops

void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out) {
  serial::eval_expression(program, rows, out);
}

void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out) {
  serial::predict_tree(nodes, rows, out);
}

void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out) {
  serial::locate_bins(partition, values, out);
}

#endif

}  // namespace omp
}  // namespace kernels
}  // namespace ale
