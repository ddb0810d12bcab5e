#pragma once

// Exact sparse polynomials over an n x k array of variables x[i,j].
//
// Rows and columns are 1-based in the public API (VarIndex) and 0-based in the
// flattened row-major variable index used internally (flat = (i-1)*k + (j-1)).
// Terms are kept in canonical order: graded lexicographic on the flattened
// exponent vector, largest monomial first.

#include "msym/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msym {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Shape {
  std::size_t rows = 1;  // n
  std::size_t cols = 1;  // k

  std::size_t variables() const { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

struct VarIndex {
  std::size_t row = 1;
  std::size_t col = 1;

  friend bool operator==(const VarIndex&, const VarIndex&) = default;
};

std::size_t flat_index(const Shape& shape, const VarIndex& v);
VarIndex var_index(const Shape& shape, std::size_t flat);

// Total degree with a distinct sentinel for the zero polynomial.
class Degree {
 public:
  Degree() = default;  // minus infinity
  explicit Degree(long value) : value_(value) {}

  static Degree minus_infinity() { return Degree(); }

  bool is_finite() const { return value_.has_value(); }
  long value() const { return value_.value(); }

  friend auto operator<=>(const Degree&, const Degree&) = default;
  friend bool operator==(const Degree&, const Degree&) = default;

  std::string to_string() const;

 private:
  std::optional<long> value_;
};

class Monomial {
 public:
  struct Factor {
    std::uint32_t var = 0;  // flattened index
    std::uint32_t exp = 0;  // always > 0 when stored

    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;

  static Monomial variable(std::uint32_t var, std::uint32_t exp = 1);
  // Merges repeated variables and drops zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(std::uint32_t var) const;
  std::uint64_t total_degree() const { return degree_; }

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by var
  std::uint64_t degree_ = 0;
};

// <0 if a precedes b in canonical order (a is grlex-larger), 0 if equal.
int canonical_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

class Polynomial {
 public:
  explicit Polynomial(Shape shape) : shape_(shape) { check_shape(shape); }

  static Polynomial constant(Shape shape, const Rational& c);
  static Polynomial variable(Shape shape, VarIndex v);
  // Sorts, merges duplicate monomials and drops zero coefficients.
  static Polynomial from_terms(Shape shape, std::vector<Term> terms);

  const Shape& shape() const { return shape_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Rational& c, Polynomial f);

  friend bool operator==(const Polynomial& f, const Polynomial& g);
  // Strict weak order on canonical term lists (used for orbit sets).
  friend bool operator<(const Polynomial& f, const Polynomial& g);

 private:
  static void check_shape(const Shape& shape);

  Shape shape_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial mul(const Polynomial& f, const Polynomial& g);
Polynomial pow(const Polynomial& f, std::uint32_t e);

Polynomial partial(const Polynomial& f, VarIndex v);

Rational evaluate(const Polynomial& f, std::span<const Rational> x);
double evaluate(const Polynomial& f, std::span<const double> x);

Degree degree(const Polynomial& f);

// Maps each source row i (0-based) to row_map[i] in `target`, shifting columns
// by col_offset. Images of distinct variables may coincide; exponents then add.
Polynomial relabel_rows(const Polynomial& f, std::span<const std::size_t> row_map,
                        Shape target, std::size_t col_offset = 0);

std::string serialize(const Polynomial& f);
Polynomial parse_polynomial(std::string_view text);

}  // namespace msym
