#include "msym/bounds.hpp"

#include "msym/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace msym {

std::string to_string(const Simplex& s) {
  std::string out = "(";
  for (std::size_t j = 0; j < s.a.size(); ++j) {
    if (j) out += ",";
    out += s.a[j].get_str();
  }
  return out + ")";
}

bool encloses(const Simplex& s, const ExponentProfile& e, bool strict) {
  if (s.a.size() != e.k) throw ShapeError("simplex dimension differs from profile length");
  for (const auto& alpha : e.points) {
    Rational sum = 0;
    for (std::size_t j = 0; j < e.k; ++j) {
      if (alpha[j] != 0) sum += Rational(alpha[j]) / s.a[j];
    }
    if (strict ? sum >= 1 : sum > 1) return false;
  }
  return true;
}

std::string to_string(KappaMethod m) {
  switch (m) {
    case KappaMethod::WeightedDegree: return "WeightedDegree";
    case KappaMethod::SimplexFit: return "SimplexFit";
    case KappaMethod::DegreePower: return "DegreePower";
    case KappaMethod::ColumnDegrees: return "ColumnDegrees";
    case KappaMethod::HalfDegreeK1: return "HalfDegreeK1";
    case KappaMethod::LowDegree: return "LowDegree";
    case KappaMethod::HessianSimplex: return "HessianSimplex";
    case KappaMethod::HessianRefined: return "HessianRefined";
    case KappaMethod::HessianWeighted: return "HessianWeighted";
    case KappaMethod::HessianDegree: return "HessianDegree";
  }
  return "Unknown";
}

std::string to_string(const Witness& w) {
  struct Visitor {
    std::string operator()(const Weights& x) const { return "w=" + to_string(x); }
    std::string operator()(const Simplex& x) const { return "a=" + to_string(x); }
    std::string operator()(const ColumnDegreeWitness& x) const {
      return "column_degrees=" + to_string(ExponentTuple(x.degrees));
    }
    std::string operator()(const DegreeWitness& x) const { return "d=" + std::to_string(x.degree); }
  };
  return std::visit(Visitor{}, w);
}

KappaBound make_bound(const Integer& unclamped, std::size_t n, KappaMethod method, Witness witness) {
  KappaBound b;
  b.unclamped = unclamped;
  b.method = method;
  b.witness = std::move(witness);
  Integer nn(static_cast<unsigned long>(n));
  b.n_clamped = unclamped > nn;
  Integer v = b.n_clamped ? nn : unclamped;
  b.value = std::max<unsigned long>(1, v.get_ui());
  return b;
}

namespace {

void require_symmetric(const Polynomial& f) {
  if (!is_k_symmetric(f)) throw PreconditionError("polynomial is not k-symmetric");
}

Integer floor_product(const std::vector<Rational>& a) {
  Integer p = 1;
  for (const auto& x : a) p *= floor(x);
  return p;
}

}  // namespace

KappaBound kappa_weighted(const ExponentProfile& e, std::size_t n, const Weights& w) {
  Degree d = weighted_degree(e, w);
  if (!d.is_finite()) throw PreconditionError("weighted degree of the zero polynomial");
  if (d.value() < 2 * static_cast<long>(w.max())) {
    throw PreconditionError("weighted degree " + std::to_string(d.value()) + " below 2*max(w)");
  }
  Integer p = 1;
  for (std::size_t j = 0; j < w.size(); ++j) p *= Integer(d.value() / static_cast<long>(w[j]));
  return make_bound(p, n, KappaMethod::WeightedDegree, w);
}

KappaBound kappa_weighted(const Polynomial& f, const Weights& w) {
  require_symmetric(f);
  return kappa_weighted(exponent_profile(f), f.shape().rows, w);
}

KappaBound kappa_simplex(const ExponentProfile& e, std::size_t n, const Simplex& a) {
  if (a.a.size() != e.k) throw ShapeError("simplex dimension differs from k");
  for (const auto& x : a.a) {
    if (x < 2) throw PreconditionError("simplex intercepts must be at least 2");
  }
  if (!encloses(a, e)) throw PreconditionError("simplex does not enclose the exponent profile");
  return make_bound(floor_product(a.a), n, KappaMethod::SimplexFit, a);
}

KappaBound kappa_simplex(const Polynomial& f, const Simplex& a) {
  require_symmetric(f);
  return kappa_simplex(exponent_profile(f), f.shape().rows, a);
}

namespace {

struct WeightGrid {
  std::uint32_t cap;
  std::size_t k;
  std::uint64_t size;

  WeightGrid(std::uint32_t c, std::size_t dims) : cap(c), k(dims), size(1) {
    if (cap < 1) throw PreconditionError("weight cap must be at least 1");
    for (std::size_t j = 0; j < k; ++j) {
      if (size > 50'000'000 / cap) throw PreconditionError("weight grid too large");
      size *= cap;
    }
  }

  // First coordinate most significant, so index order is lexicographic.
  std::vector<std::uint32_t> at(std::uint64_t idx) const {
    std::vector<std::uint32_t> w(k);
    for (std::size_t j = k; j-- > 0;) {
      w[j] = 1 + static_cast<std::uint32_t>(idx % cap);
      idx /= cap;
    }
    return w;
  }
};

long inflated_degree(const ExponentProfile& e, const std::vector<std::uint32_t>& w) {
  long d = 0;
  for (const auto& alpha : e.points) {
    long s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += static_cast<long>(w[j]) * alpha[j];
    d = std::max(d, s);
  }
  long wmax = *std::max_element(w.begin(), w.end());
  return std::max(d, 2 * wmax);
}

Integer weight_objective(const ExponentProfile& e, const std::vector<std::uint32_t>& w) {
  long d = inflated_degree(e, w);
  Integer p = 1;
  for (auto wj : w) p *= Integer(d / static_cast<long>(wj));
  return p;
}

SimplexFit make_fit(const ExponentProfile& e, std::vector<std::uint32_t> w, Integer objective) {
  SimplexFit fit;
  fit.degree = inflated_degree(e, w);
  for (auto wj : w) fit.simplex.a.emplace_back(Rational(fit.degree, wj));
  fit.weights = Weights(std::move(w));
  fit.objective = std::move(objective);
  return fit;
}

void check_profile(const ExponentProfile& e) {
  if (e.points.empty()) throw PreconditionError("exponent profile is empty");
}

}  // namespace

SimplexFit fit_simplex_serial(const ExponentProfile& e, std::uint32_t weight_cap) {
  check_profile(e);
  WeightGrid grid(weight_cap, e.k);
  std::uint64_t best_idx = 0;
  Integer best = weight_objective(e, grid.at(0));
  for (std::uint64_t idx = 1; idx < grid.size; ++idx) {
    Integer obj = weight_objective(e, grid.at(idx));
    if (obj < best) {
      best = obj;
      best_idx = idx;
    }
  }
  return make_fit(e, grid.at(best_idx), best);
}

SimplexFit fit_simplex(const ExponentProfile& e, std::uint32_t weight_cap) {
  check_profile(e);
  WeightGrid grid(weight_cap, e.k);
  std::vector<Integer> objectives(grid.size);
  const auto total = static_cast<std::int64_t>(grid.size);
#pragma omp parallel for schedule(static) num_threads(worker_threads())
  for (std::int64_t idx = 0; idx < total; ++idx) {
    objectives[idx] = weight_objective(e, grid.at(static_cast<std::uint64_t>(idx)));
  }
  std::uint64_t best_idx = 0;
  for (std::uint64_t idx = 1; idx < grid.size; ++idx) {
    if (objectives[idx] < objectives[best_idx]) best_idx = idx;
  }
  return make_fit(e, grid.at(best_idx), objectives[best_idx]);
}

namespace {

class LatticeSearch {
 public:
  LatticeSearch(const ExponentProfile& e, std::uint32_t scale, std::uint32_t min_floor)
      : points_(e.points.begin(), e.points.end()), dims_(e.k), scale_(scale), min_floor_(min_floor) {
    std::uint64_t max_norm = 0;
    for (const auto& p : points_) {
      std::uint64_t s = 0;
      for (auto x : p) s += x;
      max_norm = std::max(max_norm, s);
    }
    auto start = static_cast<std::uint32_t>(std::max<std::uint64_t>(min_floor_, scale_ * max_norm));
    best_floors_.assign(dims_, start);
    best_ = 1;
    for (std::size_t j = 0; j < dims_; ++j) best_ *= start;
  }

  void run() {
    std::vector<std::uint32_t> floors;
    std::vector<Rational> partial(points_.size(), 0);
    descend(floors, partial, 1);
  }

  const std::vector<std::uint32_t>& floors() const { return best_floors_; }
  const Integer& objective() const { return best_; }

 private:
  Integer remaining_minimum(std::size_t level) const {
    Integer m = 1;
    for (std::size_t j = level; j < dims_; ++j) m *= min_floor_;
    return m;
  }

  void descend(std::vector<std::uint32_t>& floors, const std::vector<Rational>& partial,
               const Integer& product) {
    const std::size_t level = floors.size();
    if (level + 1 == dims_) {
      finish(floors, partial, product);
      return;
    }
    const Integer rest = remaining_minimum(level + 1);
    std::vector<Rational> next(partial.size());
    for (std::uint32_t b = min_floor_; product * b * rest < best_; ++b) {
      bool feasible = true;
      for (std::size_t p = 0; p < points_.size() && feasible; ++p) {
        next[p] = partial[p] + Rational(scale_ * points_[p][level], b + 1);
        feasible = next[p] < 1;
      }
      if (!feasible) continue;
      floors.push_back(b);
      descend(floors, next, product * b);
      floors.pop_back();
    }
  }

  void finish(std::vector<std::uint32_t>& floors, const std::vector<Rational>& partial,
              const Integer& product) {
    const std::size_t last = dims_ - 1;
    Integer b = min_floor_;
    for (std::size_t p = 0; p < points_.size(); ++p) {
      if (points_[p][last] == 0) continue;
      // b + 1 > scale*alpha / (1 - partial)  <=>  b >= floor(scale*alpha / (1 - partial))
      Rational x = Rational(scale_ * points_[p][last]) / (1 - partial[p]);
      b = std::max(b, floor(x));
    }
    if (product * b < best_) {
      best_ = product * b;
      best_floors_ = floors;
      best_floors_.push_back(static_cast<std::uint32_t>(b.get_ui()));
    }
  }

  std::vector<ExponentTuple> points_;
  std::size_t dims_;
  std::uint32_t scale_;
  std::uint32_t min_floor_;
  std::vector<std::uint32_t> best_floors_;
  Integer best_;
};

}  // namespace

LatticeFit fit_lattice_simplex(const ExponentProfile& e, std::uint32_t scale, std::uint32_t min_floor) {
  check_profile(e);
  if (scale < 1 || min_floor < 1) throw PreconditionError("scale and min_floor must be positive");
  LatticeSearch search(e, scale, min_floor);
  search.run();
  LatticeFit fit;
  fit.floors = search.floors();
  fit.objective = search.objective();
  Rational eps(1, 1000);
  for (;;) {
    fit.simplex.a.clear();
    bool floors_ok = true;
    for (auto b : fit.floors) {
      Rational a = Rational(b + 1, scale) - eps;
      fit.simplex.a.push_back(a);
      floors_ok = floors_ok && floor(a * scale) == b;
    }
    if (floors_ok && encloses(fit.simplex, e)) break;
    eps /= 2;
  }
  return fit;
}

KappaBound kappa_degree_power(const Polynomial& f) {
  require_symmetric(f);
  Degree d = degree(f);
  if (!d.is_finite() || d.value() < 2) throw PreconditionError("degree must be at least 2");
  Integer p = 1;
  for (std::size_t j = 0; j < f.shape().cols; ++j) p *= d.value();
  return make_bound(p, f.shape().rows, KappaMethod::DegreePower, DegreeWitness{d.value()});
}

KappaBound kappa_column_degrees(const ExponentProfile& e, std::size_t n) {
  if (e.k < 2) throw PreconditionError("column-degree bound needs k >= 2");
  std::vector<std::uint32_t> degs(e.k, 0);
  for (const auto& alpha : e.points) {
    for (std::size_t j = 0; j < e.k; ++j) degs[j] = std::max(degs[j], alpha[j]);
  }
  Integer p = 1;
  for (std::size_t j = 0; j < e.k; ++j) {
    if (degs[j] == 0) throw PreconditionError("column " + std::to_string(j + 1) + " does not occur");
    p *= static_cast<unsigned long>(e.k) * degs[j];
  }
  return make_bound(p, n, KappaMethod::ColumnDegrees, ColumnDegreeWitness{degs});
}

KappaBound kappa_column_degrees(const Polynomial& f) {
  require_symmetric(f);
  return kappa_column_degrees(exponent_profile(f), f.shape().rows);
}

KappaBound kappa_half_degree_k1(const Polynomial& f) {
  require_symmetric(f);
  if (f.shape().cols != 1) throw PreconditionError("half-degree bound needs k = 1");
  Degree d = degree(f);
  if (!d.is_finite()) throw PreconditionError("degree of the zero polynomial");
  Integer v = std::max(2L, d.value() / 2);
  return make_bound(v, f.shape().rows, KappaMethod::HalfDegreeK1, DegreeWitness{d.value()});
}

std::vector<KappaBound> applicable_kappa_bounds(const Polynomial& f, std::uint32_t weight_cap) {
  require_symmetric(f);
  const std::size_t n = f.shape().rows;
  const std::size_t k = f.shape().cols;
  std::vector<KappaBound> out;
  Degree d = degree(f);
  if (!d.is_finite() || d.value() <= 1) {
    // Constant or linear: the sphere minimum sits on the diagonal.
    out.push_back(make_bound(1, n, KappaMethod::LowDegree, DegreeWitness{d.is_finite() ? d.value() : -1}));
    return out;
  }
  const ExponentProfile e = exponent_profile(f);
  auto attempt = [&](auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const PreconditionError&) {
      // bound does not apply
    }
  };
  attempt([&] { return kappa_weighted(e, n, Weights::ones(k)); });
  attempt([&] { return kappa_simplex(e, n, fit_simplex(e, weight_cap).simplex); });
  attempt([&] { return kappa_simplex(e, n, fit_lattice_simplex(e, 1, 2).simplex); });
  attempt([&] { return kappa_degree_power(f); });
  if (k >= 2) attempt([&] { return kappa_column_degrees(e, n); });
  if (k == 1) attempt([&] { return kappa_half_degree_k1(f); });
  return out;
}

KappaBound best_kappa(const Polynomial& f, std::uint32_t weight_cap) {
  auto all = applicable_kappa_bounds(f, weight_cap);
  if (all.empty()) throw PreconditionError("no kappa bound applies");
  auto best = all.begin();
  for (auto it = all.begin(); it != all.end(); ++it) {
    if (it->unclamped < best->unclamped) best = it;
  }
  return *best;
}

Integer count_partitions(std::size_t n, std::size_t ell) {
  if (ell < 1 || ell > n) throw PreconditionError("need 1 <= ell <= n");
  // p[m][j]: partitions of m into exactly j parts.
  std::vector<std::vector<Integer>> p(n + 1, std::vector<Integer>(ell + 1, 0));
  p[0][0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t j = 1; j <= std::min(m, ell); ++j) p[m][j] = p[m - 1][j - 1] + p[m - j][j];
  }
  Integer limit = 1;
  for (std::size_t j = 0; j < ell; ++j) limit *= static_cast<unsigned long>(n);
  if (p[n][ell] > limit) throw std::logic_error("partition count exceeds n^ell");
  return p[n][ell];
}

}  // namespace msym
