#ifndef ALE_EXPRESSION_HPP
#define ALE_EXPRESSION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ale/predictor.hpp"

namespace ale {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class EvalStatus : std::uint8_t { ok, div_by_zero, log_nonpositive, sqrt_negative, nonfinite };

const char* eval_status_message(EvalStatus s);

/// Closed-form model over variables x1..xd, compiled to a flat postfix
/// program so batch evaluation is a tight loop.
///
/// Grammar: numbers, x<k> variables, exp/log/sqrt/abs, parentheses, binary
/// + - * / ^ and unary minus. '^' is right-associative and binds tighter
/// than unary minus, which binds tighter than '*' and '/'.
class ExprProgram {
 public:
  enum class Op : std::uint8_t {
    push_const,
    push_var,
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    fn_exp,
    fn_log,
    fn_sqrt,
    fn_abs,
  };

  struct Instr {
    Op op;
    int var = 0;      // push_var: 0-based column
    double value = 0; // push_const
  };

  const std::string& source() const { return source_; }
  const std::vector<Instr>& code() const { return code_; }
  /// Largest 0-based variable index referenced, -1 for constant expressions.
  int max_var() const { return max_var_; }
  int stack_depth() const { return stack_depth_; }

  EvalStatus eval_row(std::span<const double> row, double* scratch, double& out) const noexcept;

  /// Convenience single-row evaluation; throws on a domain error.
  double operator()(std::span<const double> row) const;

 private:
  friend ExprProgram parse_expression(std::string_view text);

  std::string source_;
  std::vector<Instr> code_;
  int max_var_ = -1;
  int stack_depth_ = 0;
};

/// Parses the expression grammar above. Errors carry the byte offset of the
/// offending token.
ExprProgram parse_expression(std::string_view text);

class ExprModel : public Predictor {
 public:
  explicit ExprModel(std::string_view text, Backend backend = default_backend());
  explicit ExprModel(ExprProgram program, Backend backend = default_backend());

  std::string label() const override { return "expr:" + program_.source(); }
  const ExprProgram& program() const { return program_; }
  Backend backend() const { return backend_; }

 private:
  std::vector<double> evaluate(const Matrix& rows) override;

  ExprProgram program_;
  Backend backend_;
};

}  // namespace ale

#endif  // ALE_EXPRESSION_HPP
