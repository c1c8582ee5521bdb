#ifndef ALE_KERNELS_HPP
#define ALE_KERNELS_HPP

#include <span>

#include "ale/expression.hpp"
#include "ale/partition.hpp"
#include "ale/tree.hpp"

namespace ale::kernels {

// Row-parallel inner loops behind the models and the bin location step.
// Each row is independent, so the OpenMP variants produce byte-identical
// output to the serial reference regardless of thread count or schedule.
// When an expression row fails (domain error), the error reported is the
// one at the lowest row index under either backend.

namespace serial {
void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out);
void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out);
void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out);
}  // namespace serial

namespace omp {
void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out);
void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out);
void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out);
}  // namespace omp

void eval_expression(const ExprProgram& program, const Matrix& rows, std::span<double> out, Backend backend);
void predict_tree(std::span<const TreeNode> nodes, const Matrix& rows, std::span<double> out, Backend backend);
void locate_bins(const QuantilePartition& partition, std::span<const double> values, std::span<int> out, Backend backend);

}  // namespace ale::kernels

#endif  // ALE_KERNELS_HPP
