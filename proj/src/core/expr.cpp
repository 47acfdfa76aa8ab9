#include "core/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace hjs {

namespace {

struct ConstExpr final : Expression {
  double value;
  explicit ConstExpr(double v) : value(v) {}
  double eval(const double*) const override { return value; }
};

struct VarExpr final : Expression {
  int axis;
  explicit VarExpr(int a) : axis(a) {}
  double eval(const double* c) const override { return c[axis]; }
};

enum class BinOp { Add, Sub, Mul, Div };

struct BinExpr final : Expression {
  BinOp op;
  ExpressionPtr lhs, rhs;
  BinExpr(BinOp o, ExpressionPtr l, ExpressionPtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
  double eval(const double* c) const override {
    double a = lhs->eval(c), b = rhs->eval(c);
    switch (op) {
      case BinOp::Add: return a + b;
      case BinOp::Sub: return a - b;
      case BinOp::Mul: return a * b;
      case BinOp::Div: return a / b;
    }
    return 0.0;
  }
};

struct NegExpr final : Expression {
  ExpressionPtr arg;
  explicit NegExpr(ExpressionPtr a) : arg(std::move(a)) {}
  double eval(const double* c) const override { return -arg->eval(c); }
};

struct PowExpr final : Expression {
  ExpressionPtr base;
  int exponent;
  PowExpr(ExpressionPtr b, int e) : base(std::move(b)), exponent(e) {}
  double eval(const double* c) const override {
    double b = base->eval(c);
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= b;
    return r;
  }
};

enum class Fn { Cos, Sin };

struct FnExpr final : Expression {
  Fn fn;
  ExpressionPtr arg;
  FnExpr(Fn f, ExpressionPtr a) : fn(f), arg(std::move(a)) {}
  double eval(const double* c) const override {
    double a = arg->eval(c);
    return fn == Fn::Cos ? std::cos(a) : std::sin(a);
  }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ParsedExpression parse() {
    ParsedExpression out;
    out.source = text_;
    ExpressionPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(ErrorCode::ParseError, "unexpected character '" + std::string(1, text_[pos_]) +
                                      "' at position " + std::to_string(pos_) + " in expression");
    out.root = std::move(e);
    out.max_axis = max_axis_;
    return out;
  }

 private:
  ExpressionPtr parse_expr() {
    ExpressionPtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        lhs = std::make_shared<BinExpr>(BinOp::Add, lhs, parse_term());
      else if (accept('-'))
        lhs = std::make_shared<BinExpr>(BinOp::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  ExpressionPtr parse_term() {
    ExpressionPtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (accept('*'))
        lhs = std::make_shared<BinExpr>(BinOp::Mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = std::make_shared<BinExpr>(BinOp::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  ExpressionPtr parse_unary() {
    skip_ws();
    if (accept('-')) return std::make_shared<NegExpr>(parse_unary());
    return parse_power();
  }

  ExpressionPtr parse_power() {
    ExpressionPtr base = parse_primary();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_)
        fail(ErrorCode::ParseError,
             "expected integer exponent at position " + std::to_string(start));
      int e = std::stoi(text_.substr(start, pos_ - start));
      return std::make_shared<PowExpr>(base, e);
    }
    return base;
  }

  ExpressionPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::ParseError, "unexpected end of expression");
    char c = text_[pos_];
    if (accept('(')) {
      ExpressionPtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(ErrorCode::ParseError, "unexpected character '" + std::string(1, c) + "' at position " +
                                    std::to_string(pos_) + " in expression");
  }

  ExpressionPtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    try {
      return std::make_shared<ConstExpr>(std::stod(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad number at position " + std::to_string(start));
    }
  }

  ExpressionPtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "pi") return std::make_shared<ConstExpr>(std::numbers::pi);
    if (name == "x" || name == "x1") {
      max_axis_ = std::max(max_axis_, 0);
      return std::make_shared<VarExpr>(0);
    }
    if (name == "x2") {
      max_axis_ = std::max(max_axis_, 1);
      return std::make_shared<VarExpr>(1);
    }
    if (name == "cos" || name == "sin") {
      skip_ws();
      expect('(');
      ExpressionPtr arg = parse_expr();
      expect(')');
      return std::make_shared<FnExpr>(name == "cos" ? Fn::Cos : Fn::Sin, arg);
    }
    fail(ErrorCode::ParseError,
         "unknown identifier '" + name + "' at position " + std::to_string(start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c))
      fail(ErrorCode::ParseError,
           std::string("expected '") + c + "' at position " + std::to_string(pos_));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int max_axis_ = -1;
};

}  // namespace

ParsedExpression parse_expression(const std::string& text) { return Parser(text).parse(); }

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::MaximizerOnBoundary: return "MaximizerOnBoundary";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnboundedDual: return "UnboundedDual";
    case ErrorCode::BoundaryControl: return "BoundaryControl";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::SubsolutionViolated: return "SubsolutionViolated";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Error";
}

}  // namespace hjs
