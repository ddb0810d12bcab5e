#include "msym/expr.hpp"

#include "msym/multisym.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

using namespace msym;

namespace {

Polynomial x(Shape s, std::size_t i, std::size_t j) { return Polynomial::variable(s, {i, j}); }

void check_error_at(std::string_view src, std::size_t line, std::size_t col) {
  CAPTURE(src);
  try {
    parse_input(src);
    FAIL("no error raised");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == col);
  }
}

}  // namespace

TEST_CASE("power sums and products") {
  Shape s{3, 1};
  CHECK(parse_input("n=3 k=1; P[2]") == x(s, 1, 1) * x(s, 1, 1) + x(s, 2, 1) * x(s, 2, 1) + x(s, 3, 1) * x(s, 3, 1));
  Shape t{2, 2};
  Polynomial g = parse_input("n=2 k=2; P[1,0]*P[0,1] - P[1,1]");
  CHECK(g == x(t, 1, 1) * x(t, 2, 2) + x(t, 2, 1) * x(t, 1, 2));
}

TEST_CASE("the example family from its power-sum text") {
  Polynomial f = parse_input(
      "n=5 k=2;\n"
      "  P[4,0] + P[1,0]^4 - P[1,0]^2*P[1,1]\n"
      "- P[3,0]*P[0,1] - P[1,0]*P[0,1]^2 + P[1,0]^2 + P[1,1]\n");
  CHECK(f == fixture::example_family(5));
  CHECK(exponent_profile(f) == fixture::profile(2, {{4, 0}, {3, 1}, {2, 0}, {1, 2}, {1, 1}}));
}

TEST_CASE("rationals, signs, parentheses, sym and comments") {
  Shape s{2, 1};
  CHECK(parse_input("n=2 k=1; -3/6*x[1,1]") == Rational(-1, 2) * x(s, 1, 1));
  CHECK(parse_input("n=2 k=1; (x[1,1] + 1)^2") == x(s, 1, 1) * x(s, 1, 1) + Rational(2) * x(s, 1, 1) + Polynomial::constant(s, 1));
  CHECK(parse_input("n=2 k=1; sym(x[1,1]*x[2,1]^2)") ==
        x(s, 1, 1) * x(s, 2, 1) * x(s, 2, 1) + x(s, 2, 1) * x(s, 1, 1) * x(s, 1, 1));
  CHECK(parse_input("# leading comment\nn=2 k=1; # trailing\n x[2,1] # more\n") == x(s, 2, 1));
  CHECK(parse_input("n=2 k=1; x[1,1]^0") == Polynomial::constant(s, 1));
  CHECK(parse_input("n=2 k=1; 0").is_zero());
}

TEST_CASE("sym uses distinct images only") {
  Polynomial f = parse_input("n=3 k=1; sym(x[1,1]*x[2,1])");
  CHECK(f.size() == 3);
  for (const auto& t : f.terms()) CHECK(t.coeff == 1);
}

TEST_CASE("errors carry positions") {
  check_error_at("n=2 k=1; x[1,1]^-2", 1, 17);
  check_error_at("n=2 k=1; x[3,1]", 1, 10);
  check_error_at("n=2 k=1;\n  x[1,2]", 2, 3);
  check_error_at("n=2 k=1; P[1,1]", 1, 10);
  check_error_at("n=2 k=1; x[1,1] +", 1, 18);
  check_error_at("n=2 k=1; 1/0", 1, 12);
  check_error_at("n=2 k=1; x[1,1] )", 1, 17);
  check_error_at("n=0 k=1; 1", 1, 8);
  check_error_at("k=1 n=2; 1", 1, 1);
  check_error_at("n=2 k=1; P[0]", 1, 10);
}

TEST_CASE("abstract syntax tree") {
  ParsedExpression e = parse_expression("n=4 k=2; 2*P[1,0]^3 - x[2,2]");
  CHECK(e.shape == Shape{4, 2});
  REQUIRE(e.root);
  CHECK(e.root->kind == Expr::Kind::Sub);
  REQUIRE(e.root->children.size() == 2);
  CHECK(e.root->children[0]->kind == Expr::Kind::Mul);
  CHECK(e.root->children[1]->kind == Expr::Kind::Variable);
  CHECK(e.root->children[1]->indices == std::vector<std::size_t>{2, 2});
  const Expr& pw = *e.root->children[0]->children[1];
  CHECK(pw.kind == Expr::Kind::Pow);
  CHECK(pw.exponent == 3);
  CHECK(pw.children[0]->kind == Expr::Kind::PowerSum);
}

TEST_CASE("canonical polynomial files parse back to themselves") {
  oracle::Random rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f = rng.polynomial({3, 2}, 6, 3);
    CHECK(parse_input(serialize(f)) == f);
    CHECK(parse_input("# header comment\n" + serialize(f)) == f);
  }
}
