#pragma once

// Row-permutation action, multisymmetric power sums and monomial functions,
// collapsed exponent profiles, weighted degrees and the rewriting of
// k-symmetric polynomials as polynomials in power sums.

#include "msym/poly.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msym {

using ExponentTuple = std::vector<std::uint32_t>;

std::string to_string(const ExponentTuple& alpha);
bool is_zero_tuple(const ExponentTuple& alpha);

class Weights {
 public:
  explicit Weights(std::vector<std::uint32_t> w);
  static Weights ones(std::size_t k) { return Weights(std::vector<std::uint32_t>(k, 1)); }

  std::size_t size() const { return w_.size(); }
  std::uint32_t operator[](std::size_t j) const { return w_[j]; }
  const std::vector<std::uint32_t>& values() const { return w_; }
  std::uint32_t max() const;
  std::uint32_t min() const;
  // w^T alpha
  std::uint64_t dot(const ExponentTuple& alpha) const;

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::vector<std::uint32_t> w_;
};

std::string to_string(const Weights& w);

// E_f: the distinct column-collapsed exponent tuples of the monomials of f.
struct ExponentProfile {
  std::size_t k = 0;
  std::set<ExponentTuple> points;

  friend bool operator==(const ExponentProfile&, const ExponentProfile&) = default;
};

std::string to_string(const ExponentProfile& e);

// Nonzero row exponent tuples of a monomial, sorted (its S_n-orbit type).
std::vector<ExponentTuple> orbit_type(const Monomial& m, const Shape& shape);

Polynomial apply_row_permutation(const Polynomial& f, std::span<const std::size_t> perm);

// Sum over the S_n-orbit of f taken as a set: every distinct image once.
Polynomial symmetrize(const Polynomial& f);

bool is_k_symmetric(const Polynomial& f);

Polynomial power_sum(const ExponentTuple& alpha, Shape shape);

// sym(X_1^{a1} ... X_l^{al}) with orbit-as-set semantics.
Polynomial monomial_function(std::span<const ExponentTuple> alphas, Shape shape);

ExponentProfile exponent_profile(const Polynomial& f);

Degree weighted_degree(const ExponentProfile& e, const Weights& w);
Degree weighted_degree(const Polynomial& f, const Weights& w);

// An element of the abstract algebra Q[Z_alpha]; f = F((p_alpha)_alpha).
class PowerSumExpr {
 public:
  struct Factor {
    ExponentTuple alpha;
    std::uint32_t exp = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  using Monomial = std::vector<Factor>;  // sorted by alpha, alphas nonzero

  struct Order {
    bool operator()(const Monomial& a, const Monomial& b) const;
  };
  using TermMap = std::map<Monomial, Rational, Order>;

  explicit PowerSumExpr(std::size_t k) : k_(k) {}

  static PowerSumExpr constant(std::size_t k, const Rational& c);
  static PowerSumExpr generator(const ExponentTuple& alpha);

  std::size_t k() const { return k_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::set<ExponentTuple> indices() const;
  std::uint32_t max_degree() const;

  PowerSumExpr operator-() const;
  PowerSumExpr& operator+=(const PowerSumExpr& other);
  PowerSumExpr& operator-=(const PowerSumExpr& other);
  PowerSumExpr& operator*=(const Rational& c);
  friend PowerSumExpr operator+(PowerSumExpr a, const PowerSumExpr& b) { return a += b; }
  friend PowerSumExpr operator-(PowerSumExpr a, const PowerSumExpr& b) { return a -= b; }
  friend PowerSumExpr operator*(const PowerSumExpr& a, const PowerSumExpr& b);
  friend PowerSumExpr operator*(const Rational& c, PowerSumExpr a) { return a *= c; }

  friend bool operator==(const PowerSumExpr&, const PowerSumExpr&) = default;

  void add_term(Monomial mono, const Rational& c);

 private:
  std::size_t k_;
  TermMap terms_;
};

// Requires f k-symmetric. Every index alpha of the result has w^T alpha <= deg_w(f).
PowerSumExpr rewrite_in_power_sums(const Polynomial& f, const Weights& w);

// Monomial function m_mu as an element of Q[Z_alpha], via the elimination
// recursion p_{a0} m_nu = c m_{nu+a0} + sum_beta t_beta m_{nu-beta+(beta+a0)}.
PowerSumExpr monomial_function_in_power_sums(std::vector<ExponentTuple> mu, std::size_t k);

// Z_alpha -> p_alpha on `shape`.
Polynomial substitute(const PowerSumExpr& F, Shape shape);

// Z_alpha -> sum_c mult[c] * Y_c^alpha, a polynomial on shape (len(mult), k).
// This is F evaluated on the subspace where row block c (of size mult[c])
// takes the common value Y_c.
Polynomial substitute_weighted(const PowerSumExpr& F, std::span<const std::size_t> multiplicities);

std::string serialize(const PowerSumExpr& F);
PowerSumExpr parse_power_sum_expr(std::string_view text);

// Linear combination sum_alpha u_alpha p_alpha, keyed by alpha.
using PowerSumCombination = std::map<ExponentTuple, Rational>;

// q~_1..q~_k in Y_1..Y_k (returned on shape (1,k)) with
// d/dX_ij sum_alpha u_alpha p_alpha = q~_j(X_i.) for every row i.
// Requires w^T alpha <= d for every alpha in u.
std::vector<Polynomial> power_sum_gradient_factor(const PowerSumCombination& u, std::size_t k,
                                                  const Weights& w, long d);

// The linear part of F, rejecting F with higher-degree terms.
PowerSumCombination as_combination(const PowerSumExpr& F);

}  // namespace msym
