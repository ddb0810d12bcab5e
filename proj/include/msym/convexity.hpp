#pragma once

// The Hessian form g_f(x, x~) = x~^T D^2 f(x) x~ on an (n, 2k) array
// (x columns first, x~ columns second) and the kappa(g_f) bounds used to
// reduce convexity testing.

#include "msym/bounds.hpp"

#include <optional>
#include <string>

namespace msym {

struct HessianForm {
  Polynomial g;
  std::string source;  // free-form label of f
};

HessianForm hessian_form(const Polynomial& f, std::string source = {});

// Union over i <= j of (E_f - e_i - e_j) intersected with the orthant.
ExponentProfile h_profile(const ExponentProfile& e);
ExponentProfile h_profile(const Polynomial& f);

// Exact E_{g_f} (length-2k tuples) of the constructed Hessian form.
ExponentProfile e_gf_profile(const Polynomial& f);
ExponentProfile e_gf_profile(const HessianForm& g);

// Union over i <= j of (E_f - e_i - e_j, e_i + e_j), a superset of E_{g_f}.
ExponentProfile e_gf_superset(const ExponentProfile& e);

// 3^k prod floor(2 a_j); requires a_j >= 1 and Delta(a) enclosing H.
KappaBound kappa_hessian_simplex(const ExponentProfile& h, std::size_t n, const Simplex& a);
KappaBound kappa_hessian_simplex(const Polynomial& f, const Simplex& a);

// The same bound with a fitted to H by exact lattice search.
KappaBound kappa_hessian_simplex_fitted(const ExponentProfile& h, std::size_t n);
KappaBound kappa_hessian_simplex_fitted(const Polynomial& f);

// prod of floors of the best simplex enclosing E_{g_f} in 2k coordinates.
KappaBound kappa_hessian_refined(const ExponentProfile& egf, std::size_t n);
KappaBound kappa_hessian_refined(const Polynomial& f);

// 3^k prod floor(2 d~ / w_j) with d~ = d - 2 min w; requires d >= 2 min w + max w.
KappaBound kappa_hessian_weighted(const ExponentProfile& e, std::size_t n, const Weights& w);
KappaBound kappa_hessian_weighted(const Polynomial& f, const Weights& w);

// 6^k (d-2)^k; requires d >= 3.
KappaBound kappa_hessian_degree(const Polynomial& f);

std::vector<KappaBound> applicable_hessian_bounds(const Polynomial& f, std::uint32_t weight_cap);
KappaBound best_hessian_kappa(const Polynomial& f, std::uint32_t weight_cap);

// Exact verdict when deg f <= 2 (constant Hessian); nullopt otherwise.
std::optional<bool> low_degree_convexity(const Polynomial& f);

// Exact test of positive semidefiniteness of a symmetric rational matrix.
bool is_positive_semidefinite(std::vector<std::vector<Rational>> m);

// f restricted to A_1 (all rows equal to Y), a polynomial on shape (1, k).
Polynomial convex_kappa_one_check(const Polynomial& f);

}  // namespace msym
