#include "msym/convexity.hpp"

#include <algorithm>

namespace msym {

HessianForm hessian_form(const Polynomial& f, std::string source) {
  const std::size_t n = f.shape().rows;
  const std::size_t k = f.shape().cols;
  const Shape target{n, 2 * k};
  auto x_var = [k](std::uint32_t v) { return static_cast<std::uint32_t>((v / k) * 2 * k + v % k); };
  auto xt_var = [k](std::uint32_t v) { return static_cast<std::uint32_t>((v / k) * 2 * k + k + v % k); };

  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    auto fs = t.mono.factors();
    for (std::size_t a = 0; a < fs.size(); ++a) {
      // diagonal: beta_u (beta_u - 1) x^{beta - 2 e_u} x~_u^2
      if (fs[a].exp >= 2) {
        std::vector<Monomial::Factor> out;
        for (std::size_t c = 0; c < fs.size(); ++c) {
          auto e = fs[c].exp - (c == a ? 2U : 0U);
          if (e > 0) out.push_back({x_var(fs[c].var), e});
        }
        out.push_back({xt_var(fs[a].var), 2});
        terms.push_back({Monomial::from_factors(std::move(out)),
                         t.coeff * fs[a].exp * (fs[a].exp - 1)});
      }
      // off-diagonal pairs counted twice
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        std::vector<Monomial::Factor> out;
        for (std::size_t c = 0; c < fs.size(); ++c) {
          auto e = fs[c].exp - ((c == a || c == b) ? 1U : 0U);
          if (e > 0) out.push_back({x_var(fs[c].var), e});
        }
        out.push_back({xt_var(fs[a].var), 1});
        out.push_back({xt_var(fs[b].var), 1});
        terms.push_back({Monomial::from_factors(std::move(out)),
                         t.coeff * 2 * fs[a].exp * fs[b].exp});
      }
    }
  }
  return {Polynomial::from_terms(target, std::move(terms)), std::move(source)};
}

ExponentProfile h_profile(const ExponentProfile& e) {
  ExponentProfile h;
  h.k = e.k;
  for (const auto& alpha : e.points) {
    for (std::size_t i = 0; i < e.k; ++i) {
      for (std::size_t j = i; j < e.k; ++j) {
        ExponentTuple t = alpha;
        if (t[i] == 0) continue;
        --t[i];
        if (t[j] == 0) continue;
        --t[j];
        h.points.insert(std::move(t));
      }
    }
  }
  return h;
}

ExponentProfile h_profile(const Polynomial& f) { return h_profile(exponent_profile(f)); }

ExponentProfile e_gf_profile(const HessianForm& g) { return exponent_profile(g.g); }

ExponentProfile e_gf_profile(const Polynomial& f) { return e_gf_profile(hessian_form(f)); }

ExponentProfile e_gf_superset(const ExponentProfile& e) {
  ExponentProfile out;
  out.k = 2 * e.k;
  for (const auto& alpha : e.points) {
    for (std::size_t i = 0; i < e.k; ++i) {
      for (std::size_t j = i; j < e.k; ++j) {
        ExponentTuple t(2 * e.k, 0);
        std::copy(alpha.begin(), alpha.end(), t.begin());
        if (t[i] == 0) continue;
        --t[i];
        if (t[j] == 0) continue;
        --t[j];
        ++t[e.k + i];
        ++t[e.k + j];
        out.points.insert(std::move(t));
      }
    }
  }
  return out;
}

namespace {

void require_symmetric(const Polynomial& f) {
  if (!is_k_symmetric(f)) throw PreconditionError("polynomial is not k-symmetric");
}

Integer three_pow(std::size_t k) {
  Integer p = 1;
  for (std::size_t j = 0; j < k; ++j) p *= 3;
  return p;
}

}  // namespace

KappaBound kappa_hessian_simplex(const ExponentProfile& h, std::size_t n, const Simplex& a) {
  if (a.a.size() != h.k) throw ShapeError("simplex dimension differs from k");
  for (const auto& x : a.a) {
    if (x < 1) throw PreconditionError("simplex intercepts must be at least 1");
  }
  if (!encloses(a, h)) throw PreconditionError("simplex does not enclose H_f");
  Integer p = three_pow(h.k);
  for (const auto& x : a.a) p *= floor(2 * x);
  return make_bound(p, n, KappaMethod::HessianSimplex, a);
}

KappaBound kappa_hessian_simplex(const Polynomial& f, const Simplex& a) {
  require_symmetric(f);
  return kappa_hessian_simplex(h_profile(f), f.shape().rows, a);
}

KappaBound kappa_hessian_simplex_fitted(const ExponentProfile& h, std::size_t n) {
  if (h.points.empty()) throw PreconditionError("H_f is empty");
  LatticeFit fit = fit_lattice_simplex(h, 2, 2);
  return kappa_hessian_simplex(h, n, fit.simplex);
}

KappaBound kappa_hessian_simplex_fitted(const Polynomial& f) {
  require_symmetric(f);
  return kappa_hessian_simplex_fitted(h_profile(f), f.shape().rows);
}

KappaBound kappa_hessian_refined(const ExponentProfile& egf, std::size_t n) {
  if (egf.points.empty()) throw PreconditionError("E_{g_f} is empty");
  LatticeFit fit = fit_lattice_simplex(egf, 1, 1);
  return make_bound(fit.objective, n, KappaMethod::HessianRefined, fit.simplex);
}

KappaBound kappa_hessian_refined(const Polynomial& f) {
  require_symmetric(f);
  return kappa_hessian_refined(e_gf_profile(f), f.shape().rows);
}

KappaBound kappa_hessian_weighted(const ExponentProfile& e, std::size_t n, const Weights& w) {
  Degree d = weighted_degree(e, w);
  if (!d.is_finite()) throw PreconditionError("weighted degree of the zero polynomial");
  const long wmin = w.min();
  const long wmax = w.max();
  if (d.value() < 2 * wmin + wmax) {
    throw PreconditionError("weighted degree " + std::to_string(d.value()) + " below 2*min(w)+max(w)");
  }
  const long dt = d.value() - 2 * wmin;
  Integer p = three_pow(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) p *= Integer(2 * dt / static_cast<long>(w[j]));
  return make_bound(p, n, KappaMethod::HessianWeighted, w);
}

KappaBound kappa_hessian_weighted(const Polynomial& f, const Weights& w) {
  require_symmetric(f);
  return kappa_hessian_weighted(exponent_profile(f), f.shape().rows, w);
}

KappaBound kappa_hessian_degree(const Polynomial& f) {
  Degree d = degree(f);
  if (!d.is_finite() || d.value() < 3) throw PreconditionError("degree must be at least 3");
  Integer p = 1;
  for (std::size_t j = 0; j < f.shape().cols; ++j) p *= 6 * (d.value() - 2);
  return make_bound(p, f.shape().rows, KappaMethod::HessianDegree, DegreeWitness{d.value()});
}

std::vector<KappaBound> applicable_hessian_bounds(const Polynomial& f, std::uint32_t weight_cap) {
  require_symmetric(f);
  const std::size_t n = f.shape().rows;
  const std::size_t k = f.shape().cols;
  const ExponentProfile e = exponent_profile(f);
  std::vector<KappaBound> out;
  auto attempt = [&](auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const PreconditionError&) {
      // bound does not apply
    }
  };
  attempt([&] { return kappa_hessian_degree(f); });
  attempt([&] { return kappa_hessian_refined(f); });
  attempt([&] { return kappa_hessian_simplex_fitted(h_profile(e), n); });
  attempt([&] { return kappa_hessian_weighted(e, n, Weights::ones(k)); });
  // The weights of the best enclosing simplex of E_f are a natural second candidate.
  attempt([&] { return kappa_hessian_weighted(e, n, fit_simplex(e, weight_cap).weights); });
  return out;
}

KappaBound best_hessian_kappa(const Polynomial& f, std::uint32_t weight_cap) {
  auto all = applicable_hessian_bounds(f, weight_cap);
  if (all.empty()) throw PreconditionError("no Hessian kappa bound applies");
  auto best = all.begin();
  for (auto it = all.begin(); it != all.end(); ++it) {
    if (it->unclamped < best->unclamped) best = it;
  }
  return *best;
}

bool is_positive_semidefinite(std::vector<std::vector<Rational>> m) {
  const std::size_t size = m.size();
  for (std::size_t i = 0; i < size; ++i) {
    if (m[i].size() != size) throw ShapeError("matrix is not square");
  }
  for (std::size_t i = 0; i < size; ++i) {
    const Rational pivot = m[i][i];
    if (pivot < 0) return false;
    if (pivot == 0) {
      for (std::size_t j = i + 1; j < size; ++j) {
        if (m[i][j] != 0 || m[j][i] != 0) return false;
      }
      continue;
    }
    for (std::size_t j = i + 1; j < size; ++j) {
      if (m[j][i] == 0) continue;
      const Rational factor = m[j][i] / pivot;
      for (std::size_t l = i; l < size; ++l) m[j][l] -= factor * m[i][l];
    }
  }
  return true;
}

std::optional<bool> low_degree_convexity(const Polynomial& f) {
  Degree d = degree(f);
  if (!d.is_finite() || d.value() <= 1) return true;
  if (d.value() > 2) return std::nullopt;
  const std::size_t vars = f.shape().variables();
  std::vector<std::vector<Rational>> h(vars, std::vector<Rational>(vars, 0));
  for (const auto& t : f.terms()) {
    auto fs = t.mono.factors();
    if (fs.size() == 1 && fs[0].exp == 2) {
      h[fs[0].var][fs[0].var] += 2 * t.coeff;
    } else if (fs.size() == 2) {
      h[fs[0].var][fs[1].var] += t.coeff;
      h[fs[1].var][fs[0].var] += t.coeff;
    }
  }
  return is_positive_semidefinite(std::move(h));
}

Polynomial convex_kappa_one_check(const Polynomial& f) {
  require_symmetric(f);
  std::vector<std::size_t> to_first(f.shape().rows, 0);
  return relabel_rows(f, to_first, Shape{1, f.shape().cols});
}

}  // namespace msym
