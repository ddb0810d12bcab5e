#pragma once

// Upper bounds on kappa(f), the least m such that sphere minima of f are
// attained on A_m, from weighted degrees and simplices enclosing E_f.

#include "msym/multisym.hpp"

#include <string>
#include <variant>
#include <vector>

namespace msym {

// Delta(a) = conv(0, a_1 e_1, ..., a_k e_k).
struct Simplex {
  std::vector<Rational> a;

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

std::string to_string(const Simplex& s);

// sum_j alpha_j / a_j <= 1 (or < 1 when strict) for every alpha in E.
bool encloses(const Simplex& s, const ExponentProfile& e, bool strict = false);

enum class KappaMethod {
  WeightedDegree,
  SimplexFit,
  DegreePower,
  ColumnDegrees,
  HalfDegreeK1,
  LowDegree,
  HessianSimplex,
  HessianRefined,
  HessianWeighted,
  HessianDegree,
};

std::string to_string(KappaMethod m);

struct ColumnDegreeWitness {
  std::vector<std::uint32_t> degrees;
  friend bool operator==(const ColumnDegreeWitness&, const ColumnDegreeWitness&) = default;
};

struct DegreeWitness {
  long degree = 0;
  friend bool operator==(const DegreeWitness&, const DegreeWitness&) = default;
};

using Witness = std::variant<Weights, Simplex, ColumnDegreeWitness, DegreeWitness>;

std::string to_string(const Witness& w);

struct KappaBound {
  std::size_t value = 1;  // min(unclamped, n)
  Integer unclamped;
  KappaMethod method = KappaMethod::WeightedDegree;
  Witness witness = DegreeWitness{};
  bool n_clamped = false;
};

KappaBound make_bound(const Integer& unclamped, std::size_t n, KappaMethod method, Witness witness);

// Profile-level forms take n explicitly; the Polynomial forms check
// k-symmetry and read n from the shape.
KappaBound kappa_weighted(const ExponentProfile& e, std::size_t n, const Weights& w);
KappaBound kappa_weighted(const Polynomial& f, const Weights& w);

KappaBound kappa_simplex(const ExponentProfile& e, std::size_t n, const Simplex& a);
KappaBound kappa_simplex(const Polynomial& f, const Simplex& a);

struct SimplexFit {
  Simplex simplex;
  Weights weights{std::vector<std::uint32_t>{1}};
  long degree = 0;  // d after inflation
  Integer objective;
};

// Exhaustive search over w in {1..cap}^k, a_j = d/w_j with
// d = max(max_E w^T alpha, 2 max_j w_j); minimizes prod floor(a_j), ties to
// the lexicographically smallest w.
SimplexFit fit_simplex(const ExponentProfile& e, std::uint32_t weight_cap);
SimplexFit fit_simplex_serial(const ExponentProfile& e, std::uint32_t weight_cap);

struct LatticeFit {
  std::vector<std::uint32_t> floors;  // b_j
  Simplex simplex;                    // a_j = (b_j + 1)/scale - eps
  Integer objective;                  // prod b_j
};

// Exact search for integer floors b_j >= min_floor minimizing prod b_j
// subject to sum_j scale*alpha_j/(b_j+1) < 1 for all alpha in E. Then
// Delta(a) with a_j slightly below (b_j+1)/scale encloses E and
// floor(scale*a_j) = b_j.
LatticeFit fit_lattice_simplex(const ExponentProfile& e, std::uint32_t scale,
                               std::uint32_t min_floor);

KappaBound kappa_degree_power(const Polynomial& f);
KappaBound kappa_column_degrees(const Polynomial& f);
KappaBound kappa_column_degrees(const ExponentProfile& e, std::size_t n);
KappaBound kappa_half_degree_k1(const Polynomial& f);

// Every bound that applies to f, in method order.
std::vector<KappaBound> applicable_kappa_bounds(const Polynomial& f, std::uint32_t weight_cap);

// Minimum over applicable_kappa_bounds; the first method wins ties.
KappaBound best_kappa(const Polynomial& f, std::uint32_t weight_cap);

// Partitions of n into exactly ell positive parts.
Integer count_partitions(std::size_t n, std::size_t ell);

}  // namespace msym
