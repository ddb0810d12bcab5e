#pragma once

// Input language:
//   file   := header ';' expr
//   header := 'n=' int 'k=' int
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | 'x[' int ',' int ']' | 'P[' int (',' int)* ']'
//           | 'sym' '(' expr ')' | '(' expr ')'
// Whitespace is insignificant; '#' starts a comment running to end of line.
// sym() sums the distinct images under row permutations, each once.

#include "msym/poly.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msym {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Expr {
  enum class Kind { Number, Variable, PowerSum, Sym, Add, Sub, Mul, Neg, Pow };

  Kind kind = Kind::Number;
  Rational number;                       // Number
  std::vector<std::size_t> indices;      // Variable (i,j) or PowerSum exponents
  std::uint32_t exponent = 0;            // Pow
  std::vector<std::unique_ptr<Expr>> children;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParsedExpression {
  Shape shape;
  std::unique_ptr<Expr> root;
};

ParsedExpression parse_expression(std::string_view source);

Polynomial elaborate(const Expr& e, const Shape& shape);

// Accepts either the expression language or a canonical 'poly n= k=' file.
Polynomial parse_input(std::string_view source);

}  // namespace msym
