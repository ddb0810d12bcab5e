#include "msym/expr.hpp"

#include "msym/multisym.hpp"

#include <cctype>
#include <limits>

namespace msym {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ParsedExpression file() {
    ParsedExpression out;
    skip();
    expect_word("n");
    expect('=');
    out.shape.rows = integer("n");
    skip();
    expect_word("k");
    expect('=');
    out.shape.cols = integer("k");
    if (out.shape.rows == 0 || out.shape.cols == 0) fail("n and k must be positive");
    expect(';');
    out.root = expr();
    skip();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void expect_word(std::string_view w) {
    skip();
    if (src_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  std::size_t integer(const char* what) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == '-') fail(std::string("negative ") + what);
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      fail(std::string("expected ") + what);
    }
    std::size_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      std::size_t d = static_cast<std::size_t>(src_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint32_t>::max() - d) / 10) fail(std::string(what) + " too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::unique_ptr<Expr> node(Expr::Kind kind) {
    skip();
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_; ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    e->line = line;
    e->column = col;
    return e;
  }

  std::unique_ptr<Expr> binary(Expr::Kind kind, std::unique_ptr<Expr> lhs, std::unique_ptr<Expr> rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = lhs->line;
    e->column = lhs->column;
    e->children.push_back(std::move(lhs));
    e->children.push_back(std::move(rhs));
    return e;
  }

  std::unique_ptr<Expr> expr() {
    std::unique_ptr<Expr> lhs;
    char c = peek();
    if (c == '-' || c == '+') {
      auto neg = node(Expr::Kind::Neg);
      ++pos_;
      auto t = term();
      if (c == '-') {
        neg->children.push_back(std::move(t));
        lhs = std::move(neg);
      } else {
        lhs = std::move(t);
      }
    } else {
      lhs = term();
    }
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      auto rhs = term();
      lhs = binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs));
    }
  }

  std::unique_ptr<Expr> term() {
    auto lhs = factor();
    while (peek() == '*') {
      ++pos_;
      lhs = binary(Expr::Kind::Mul, std::move(lhs), factor());
    }
    return lhs;
  }

  std::unique_ptr<Expr> factor() {
    auto b = base();
    if (peek() != '^') return b;
    auto p = node(Expr::Kind::Pow);
    ++pos_;
    if (peek() == '-') fail("negative exponent");
    p->exponent = static_cast<std::uint32_t>(integer("exponent"));
    p->line = b->line;
    p->column = b->column;
    p->children.push_back(std::move(b));
    return p;
  }

  std::unique_ptr<Expr> base() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = node(Expr::Kind::Number);
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string digits(src_.substr(start, pos_ - start));
      Rational q(digits);
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
        Integer den(std::string(src_.substr(dstart, pos_ - dstart)));
        if (den == 0) {
          pos_ = dstart;
          fail("zero denominator");
        }
        q = Rational(Integer(digits), den);
        q.canonicalize();
      }
      e->number = q;
      return e;
    }
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (src_.substr(pos_, 3) == "sym") {
      auto e = node(Expr::Kind::Sym);
      pos_ += 3;
      expect('(');
      e->children.push_back(expr());
      expect(')');
      return e;
    }
    if (c == 'x') {
      auto e = node(Expr::Kind::Variable);
      ++pos_;
      expect('[');
      e->indices.push_back(integer("row index"));
      expect(',');
      e->indices.push_back(integer("column index"));
      expect(']');
      return e;
    }
    if (c == 'P') {
      auto e = node(Expr::Kind::PowerSum);
      ++pos_;
      expect('[');
      e->indices.push_back(integer("exponent"));
      while (peek() == ',') {
        ++pos_;
        e->indices.push_back(integer("exponent"));
      }
      expect(']');
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedExpression parse_expression(std::string_view source) { return Parser(source).file(); }

Polynomial elaborate(const Expr& e, const Shape& shape) {
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, e.line, e.column); };
  switch (e.kind) {
    case Expr::Kind::Number:
      return Polynomial::constant(shape, e.number);
    case Expr::Kind::Variable: {
      auto i = e.indices[0];
      auto j = e.indices[1];
      if (i < 1 || i > shape.rows) fail("row index " + std::to_string(i) + " out of range");
      if (j < 1 || j > shape.cols) fail("column index " + std::to_string(j) + " out of range");
      return Polynomial::variable(shape, {i, j});
    }
    case Expr::Kind::PowerSum: {
      if (e.indices.size() != shape.cols) {
        fail("power sum needs " + std::to_string(shape.cols) + " exponents");
      }
      ExponentTuple alpha(e.indices.begin(), e.indices.end());
      if (is_zero_tuple(alpha)) fail("power sum index must be nonzero");
      return power_sum(alpha, shape);
    }
    case Expr::Kind::Sym:
      return symmetrize(elaborate(*e.children[0], shape));
    case Expr::Kind::Neg:
      return -elaborate(*e.children[0], shape);
    case Expr::Kind::Add:
      return elaborate(*e.children[0], shape) + elaborate(*e.children[1], shape);
    case Expr::Kind::Sub:
      return elaborate(*e.children[0], shape) - elaborate(*e.children[1], shape);
    case Expr::Kind::Mul:
      return elaborate(*e.children[0], shape) * elaborate(*e.children[1], shape);
    case Expr::Kind::Pow:
      return pow(elaborate(*e.children[0], shape), e.exponent);
  }
  throw std::logic_error("unknown expression kind");
}

Polynomial parse_input(std::string_view source) {
  std::size_t i = 0;
  // skip blank and comment lines to find the first token
  while (i < source.size()) {
    if (source[i] == '#') {
      while (i < source.size() && source[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(source[i]))) {
      ++i;
    } else {
      break;
    }
  }
  if (source.substr(i, 5) == "poly ") return parse_polynomial(source);
  ParsedExpression p = parse_expression(source);
  return elaborate(*p.root, p.shape);
}

}  // namespace msym
