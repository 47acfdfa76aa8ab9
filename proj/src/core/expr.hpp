#pragma once

#include <memory>
#include <string>

namespace hjs {

// Closed-form scalar expression in the coordinates of a torus point.
// Supported: numbers, pi, x (alias x1), x2, + - * /, integer ^, unary -,
// cos(...), sin(...), parentheses.
class Expression {
 public:
  virtual ~Expression() = default;
  virtual double eval(const double* coords) const = 0;
};

using ExpressionPtr = std::shared_ptr<const Expression>;

struct ParsedExpression {
  ExpressionPtr root;
  int max_axis = 0;  // highest coordinate axis referenced (0-based), -1 if none
  std::string source;

  double operator()(const double* coords) const { return root->eval(coords); }
};

// Throws Error(ParseError) with a character position on bad input.
ParsedExpression parse_expression(const std::string& text);

}  // namespace hjs
