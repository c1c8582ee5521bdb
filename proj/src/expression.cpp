#include "ale/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "ale/kernels.hpp"

namespace ale {

const char* eval_status_message(EvalStatus s) {
  switch (s) {
    case EvalStatus::ok: return "ok";
    case EvalStatus::div_by_zero: return "division by zero";
    case EvalStatus::log_nonpositive: return "log of a non-positive value";
    case EvalStatus::sqrt_negative: return "sqrt of a negative value";
    case EvalStatus::nonfinite: return "non-finite result";
  }
  return "unknown";
}

namespace {

enum class TokKind { number, ident, op, lparen, rparen, end };

struct Token {
  TokKind kind;
  std::size_t offset;
  char op = 0;
  double value = 0;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {TokKind::end, pos_};
    const std::size_t at = pos_;
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      const char* begin = s_.data() + pos_;
      const char* end = s_.data() + s_.size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc{}) throw ParseError(str_cat("syntax error at offset ", at, ": bad number"), at);
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return {TokKind::number, at, 0, v};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t e = pos_;
      while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_')) ++e;
      Token t{TokKind::ident, at, 0, 0, s_.substr(pos_, e - pos_)};
      pos_ = e;
      return t;
    }
    if (c == '(') { ++pos_; return {TokKind::lparen, at}; }
    if (c == ')') { ++pos_; return {TokKind::rparen, at}; }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      ++pos_;
      return {TokKind::op, at, c};
    }
    throw ParseError(str_cat("syntax error at offset ", at, ": unexpected character '", c, "'"), at);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  ExprProgram parse() {
    ExprProgram out;
    parse_sum(out);
    if (cur_.kind != TokKind::end) {
      throw ParseError(str_cat("syntax error at offset ", cur_.offset, ": unexpected ", describe(cur_)), cur_.offset);
    }
    out.stack_depth_ = compute_stack_depth(out);
    return out;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokKind::number: return "number";
      case TokKind::ident: return str_cat("'", t.text, "'");
      case TokKind::op: return str_cat("'", t.op, "'");
      case TokKind::lparen: return "'('";
      case TokKind::rparen: return "')'";
      case TokKind::end: return "end of input";
    }
    return "token";
  }

  void parse_sum(ExprProgram& out) {
    parse_product(out);
    while (cur_.kind == TokKind::op && (cur_.op == '+' || cur_.op == '-')) {
      const char op = cur_.op;
      advance();
      parse_product(out);
      emit(out, op == '+' ? ExprProgram::Op::add : ExprProgram::Op::sub);
    }
  }

  void parse_product(ExprProgram& out) {
    parse_unary(out);
    while (cur_.kind == TokKind::op && (cur_.op == '*' || cur_.op == '/')) {
      const char op = cur_.op;
      advance();
      parse_unary(out);
      emit(out, op == '*' ? ExprProgram::Op::mul : ExprProgram::Op::div);
    }
  }

  // '^' binds tighter than unary minus: -x^2 parses as -(x^2).
  void parse_unary(ExprProgram& out) {
    if (cur_.kind == TokKind::op && cur_.op == '-') {
      advance();
      parse_unary(out);
      emit(out, ExprProgram::Op::neg);
      return;
    }
    parse_power(out);
  }

  void parse_power(ExprProgram& out) {
    parse_primary(out);
    if (cur_.kind == TokKind::op && cur_.op == '^') {
      advance();
      parse_unary(out);  // right-associative; allows a signed exponent
      emit(out, ExprProgram::Op::pow);
    }
  }

  void parse_primary(ExprProgram& out) {
    if (cur_.kind == TokKind::number) {
      out.code_.push_back({ExprProgram::Op::push_const, 0, cur_.value});
      advance();
      return;
    }
    if (cur_.kind == TokKind::lparen) {
      advance();
      parse_sum(out);
      expect_rparen();
      return;
    }
    if (cur_.kind == TokKind::ident) {
      const Token name = cur_;
      advance();
      if (auto fn = function_op(name.text)) {
        if (cur_.kind != TokKind::lparen) {
          throw ParseError(str_cat("arity mismatch at offset ", name.offset, ": ", name.text, " takes one parenthesized argument"), name.offset);
        }
        advance();
        parse_sum(out);
        expect_rparen();
        emit(out, *fn);
        return;
      }
      const int var = variable_index(name.text);
      if (var < 0) {
        throw ParseError(str_cat("unknown identifier '", name.text, "' at offset ", name.offset), name.offset);
      }
      out.code_.push_back({ExprProgram::Op::push_var, var, 0});
      out.max_var_ = std::max(out.max_var_, var);
      return;
    }
    throw ParseError(str_cat("syntax error at offset ", cur_.offset, ": unexpected ", describe(cur_)), cur_.offset);
  }

  void expect_rparen() {
    if (cur_.kind != TokKind::rparen) {
      throw ParseError(str_cat("syntax error at offset ", cur_.offset, ": expected ')', found ", describe(cur_)), cur_.offset);
    }
    advance();
  }

  static void emit(ExprProgram& out, ExprProgram::Op op) { out.code_.push_back({op, 0, 0}); }

  static std::optional<ExprProgram::Op> function_op(std::string_view name) {
    if (name == "exp") return ExprProgram::Op::fn_exp;
    if (name == "log") return ExprProgram::Op::fn_log;
    if (name == "sqrt") return ExprProgram::Op::fn_sqrt;
    if (name == "abs") return ExprProgram::Op::fn_abs;
    return std::nullopt;
  }

  // Variables are x1..xd, 1-based against the dataset's column order.
  static int variable_index(std::string_view name) {
    if (name.size() < 2 || name[0] != 'x') return -1;
    int idx = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (ec != std::errc{} || ptr != name.data() + name.size() || idx < 1) return -1;
    return idx - 1;
  }

  static int compute_stack_depth(const ExprProgram& p) {
    int depth = 0, peak = 0;
    for (const auto& ins : p.code_) {
      switch (ins.op) {
        case ExprProgram::Op::push_const:
        case ExprProgram::Op::push_var:
          peak = std::max(peak, ++depth);
          break;
        case ExprProgram::Op::add:
        case ExprProgram::Op::sub:
        case ExprProgram::Op::mul:
        case ExprProgram::Op::div:
        case ExprProgram::Op::pow:
          --depth;
          break;
        default:
          break;  // unary ops keep depth
      }
    }
    return peak;
  }

  Lexer lex_;
  Token cur_{TokKind::end, 0};
};

}  // namespace

ExprProgram parse_expression(std::string_view text) {
  Parser parser(text);
  ExprProgram p = parser.parse();
  p.source_ = std::string(text);
  return p;
}

EvalStatus ExprProgram::eval_row(std::span<const double> row, double* stack, double& out) const noexcept {
  int top = -1;
  for (const auto& ins : code_) {
    switch (ins.op) {
      case Op::push_const: stack[++top] = ins.value; break;
      case Op::push_var: stack[++top] = row[static_cast<std::size_t>(ins.var)]; break;
      case Op::add: stack[top - 1] += stack[top]; --top; break;
      case Op::sub: stack[top - 1] -= stack[top]; --top; break;
      case Op::mul: stack[top - 1] *= stack[top]; --top; break;
      case Op::div:
        if (stack[top] == 0.0) return EvalStatus::div_by_zero;
        stack[top - 1] /= stack[top];
        --top;
        break;
      case Op::pow: stack[top - 1] = std::pow(stack[top - 1], stack[top]); --top; break;
      case Op::neg: stack[top] = -stack[top]; break;
      case Op::fn_exp: stack[top] = std::exp(stack[top]); break;
      case Op::fn_log:
        if (stack[top] <= 0.0) return EvalStatus::log_nonpositive;
        stack[top] = std::log(stack[top]);
        break;
      case Op::fn_sqrt:
        if (stack[top] < 0.0) return EvalStatus::sqrt_negative;
        stack[top] = std::sqrt(stack[top]);
        break;
      case Op::fn_abs: stack[top] = std::fabs(stack[top]); break;
    }
  }
  out = stack[0];
  if (!std::isfinite(out)) return EvalStatus::nonfinite;
  return EvalStatus::ok;
}

double ExprProgram::operator()(std::span<const double> row) const {
  std::vector<double> scratch(static_cast<std::size_t>(std::max(stack_depth_, 1)));
  double out = 0;
  const EvalStatus s = eval_row(row, scratch.data(), out);
  if (s != EvalStatus::ok) fail("expression '", source_, "': ", eval_status_message(s));
  return out;
}

ExprModel::ExprModel(std::string_view text, Backend backend)
    : program_(parse_expression(text)), backend_(backend) {}

ExprModel::ExprModel(ExprProgram program, Backend backend)
    : program_(std::move(program)), backend_(backend) {}

std::vector<double> ExprModel::evaluate(const Matrix& rows) {
  if (program_.max_var() >= static_cast<int>(rows.cols())) {
    fail("expression '", program_.source(), "' references x", program_.max_var() + 1, " but rows have ", rows.cols(), " columns");
  }
  std::vector<double> out(rows.rows());
  kernels::eval_expression(program_, rows, out, backend_);
  return out;
}

}  // namespace ale
