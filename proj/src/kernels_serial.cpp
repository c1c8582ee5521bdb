#include <vector>

#include "ale/kernels.hpp"

namespace ale {

const char* backend_name(Backend b) { return b == Backend::serial ? "serial" : "openmp"; }

namespace kernels {

namespace detail {

[[noreturn]] void report_row_error(const ExprProgram& program, std::size_t row, EvalStatus status) {
  fail("expression '", program.source(), "': ", eval_status_message(status), " at row ", row + 1);
}

double tree_row(std::span<const TreeNode> nodes, std::span<const double> row) {
  int at = 0;
  while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
    const TreeNode& nd = nodes[static_cast<std::size_t>(at)];
    at = row[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left : nd.right;
  }
  return nodes[static_cast<std::size_t>(at)].value;
}

}  // namespace detail

namespace serial {

void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out) {
  std::vector<double> stack(static_cast<std::size_t>(std::max(program.stack_depth(), 1)));
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const EvalStatus s = program.eval_row(rows.row(i), stack.data(), out[i]);
    if (s != EvalStatus::ok) detail::report_row_error(program, i, s);
  }
}

void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out) {
  for (std::size_t i = 0; i < rows.rows(); ++i) out[i] = detail::tree_row(nodes, rows.row(i));
}

void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out) {
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = locate_bin(partition, values[i]);
}

}  // namespace serial

void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out, Backend backend) {
  backend == Backend::serial ? serial::eval_expression(program, rows, out) : omp::eval_expression(program, rows, out);
}

void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out, Backend backend) {
  backend == Backend::serial ? serial::predict_tree(nodes, rows, out) : omp::predict_tree(nodes, rows, out);
}

void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out, Backend backend) {
  backend == Backend::serial ? serial::locate_bins(partition, values, out) : omp::locate_bins(partition, values, out);
}

}  // namespace kernels
}  // namespace ale
