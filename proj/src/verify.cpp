#include "msym/verify.hpp"

#include <cmath>
#include <limits>

namespace msym {

SphereSpec::SphereSpec(Rational radius_sq) : r_(std::move(radius_sq)) {
  if (r_ <= 0) throw PreconditionError("sphere radius must be positive");
}

std::size_t default_starts(std::size_t variables) { return variables <= 12 ? 64 : 256; }

SphereProblem make_problem(const Polynomial& f) {
  SphereProblem p;
  p.exact = f;
  p.objective = std::make_shared<CompiledPolynomial>(f);
  p.omega.assign(f.shape().variables(), 1.0);
  return p;
}

SphereProblem make_problem(const Reducer& reducer) {
  const Polynomial& f = reducer.source();
  if (!reducer.symmetric()) return make_problem(f);
  SphereProblem p;
  p.exact = f;
  p.objective = std::make_shared<WeightedPowerSumObjective>(*reducer.power_sum_form(),
                                                            std::vector<double>(f.shape().rows, 1.0));
  p.omega.assign(f.shape().variables(), 1.0);
  return p;
}

SphereProblem make_problem(const Reducer& reducer, const ReducedInstance& inst) {
  SphereProblem p;
  p.exact = inst.q;
  const std::size_t k = inst.q.shape().cols;
  std::vector<double> mult;
  for (auto part : inst.lam.parts()) {
    mult.push_back(static_cast<double>(part));
    p.omega.insert(p.omega.end(), k, static_cast<double>(part));
  }
  if (reducer.symmetric()) {
    p.objective = std::make_shared<WeightedPowerSumObjective>(*reducer.power_sum_form(), std::move(mult));
  } else {
    p.objective = std::make_shared<CompiledPolynomial>(inst.q);
  }
  return p;
}

MinReport minimize(const SphereProblem& p, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                   std::uint64_t item, const SolverOptions& opts, bool parallel) {
  auto run = parallel ? run_multistart_omp : run_multistart_serial;
  MultistartResult res = run(*p.objective, p.omega, s.value(), starts, seed, item, opts);
  MinReport rep;
  rep.argmin = std::move(res.best.x);
  rep.value = evaluate(p.exact, std::span<const double>(rep.argmin));
  rep.starts = res.starts;
  rep.converged_fraction = static_cast<double>(res.converged) / static_cast<double>(res.starts);
  rep.seed = seed;
  return rep;
}

MinReport min_on_sphere(const Reducer& reducer, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                        const SolverOptions& opts) {
  return minimize(make_problem(reducer), s, starts, seed, 0, opts);
}

MinReport min_on_sphere(const Polynomial& f, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                        const SolverOptions& opts) {
  return min_on_sphere(Reducer(f), s, starts, seed, opts);
}

MinReport min_on_reduced(const Reducer& reducer, std::size_t m, const SphereSpec& s, std::size_t starts,
                         std::uint64_t seed, const SolverOptions& opts) {
  const Polynomial& f = reducer.source();
  if (m < 1 || m > f.shape().rows) throw PreconditionError("need 1 <= m <= n");
  ReductionPlan plan(reducer, m);
  std::optional<MinReport> best;
  std::size_t total_starts = 0;
  double converged = 0.0;
  std::uint64_t item = 1;
  while (auto inst = plan.next()) {
    MinReport r = minimize(make_problem(reducer, *inst), s, starts, seed, item++, opts);
    total_starts += r.starts;
    converged += r.converged_fraction * static_cast<double>(r.starts);
    if (!best || r.value < best->value) {
      r.argmin = expand_point<double>(r.argmin, inst->lam, f.shape().cols);
      r.lam = inst->lam;
      best = std::move(r);
    }
  }
  best->value = evaluate(f, std::span<const double>(best->argmin));
  best->starts = total_starts;
  best->converged_fraction = converged / static_cast<double>(total_starts);
  return *best;
}

MinReport min_on_reduced(const Polynomial& f, std::size_t m, const SphereSpec& s, std::size_t starts,
                         std::uint64_t seed, const SolverOptions& opts) {
  return min_on_reduced(Reducer(f), m, s, starts, seed, opts);
}

bool ConsistencyReport::all_pass() const {
  for (const auto& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

ConsistencyReport kappa_consistency_experiment(const Polynomial& f, std::size_t m,
                                               const std::vector<Rational>& radii, std::size_t starts,
                                               std::uint64_t seed, double tol) {
  Reducer reducer(f);
  ConsistencyReport rep;
  rep.m = std::min(m, f.shape().rows);
  rep.tolerance = tol;
  for (const auto& r : radii) {
    SphereSpec s(r);
    ConsistencyRecord rec;
    rec.radius_sq = r;
    rec.full = min_on_sphere(reducer, s, starts, seed);
    rec.reduced = min_on_reduced(reducer, rep.m, s, starts, seed);
    rec.pass = std::abs(rec.full.value - rec.reduced.value) <= tol * (1.0 + std::abs(rec.full.value));
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

ConsistencyReport kappa_consistency_experiment(const Polynomial& f, const KappaBound& bound,
                                               const std::vector<Rational>& radii, std::size_t starts,
                                               std::uint64_t seed, double tol) {
  return kappa_consistency_experiment(f, bound.value, radii, starts, seed, tol);
}

std::string to_string(const NonnegVerdict& v) {
  if (!v.counterexample) return "NoCounterexampleFound";
  return v.confirmed ? "CounterexampleAt(confirmed)" : "CounterexampleAt(unconfirmed)";
}

NonnegVerdict nonneg_check(const SphereProblem& p, const std::vector<Rational>& radii, std::size_t starts,
                           std::uint64_t seed, std::uint64_t item, const SolverOptions& opts) {
  constexpr double threshold = -1e-9;
  NonnegVerdict v;
  const std::size_t dim = p.exact.shape().variables();
  // the origin
  std::vector<Rational> zero(dim, 0);
  Rational at_origin = evaluate(p.exact, std::span<const Rational>(zero));
  v.value = to_double(at_origin);
  std::vector<double> best_point(dim, 0.0);
  v.sphere_min = std::numeric_limits<double>::infinity();
  for (const auto& r : radii) {
    MinReport rep = minimize(p, SphereSpec(r), starts, seed, item, opts);
    ++v.spheres;
    v.sphere_min = std::min(v.sphere_min, rep.value);
    if (rep.value < v.value) {
      v.value = rep.value;
      best_point = rep.argmin;
    }
  }
  if (v.value < threshold) {
    v.counterexample = true;
    v.point = best_point;
    std::vector<Rational> exact;
    exact.reserve(dim);
    for (double x : best_point) exact.push_back(exact_rational(x));
    v.exact_value = evaluate(p.exact, std::span<const Rational>(exact));
    v.confirmed = v.exact_value < 0;
  }
  return v;
}

NonnegVerdict nonneg_check(const Polynomial& q, const std::vector<Rational>& radii, std::size_t starts,
                           std::uint64_t seed) {
  return nonneg_check(make_problem(q), radii, starts, seed);
}

bool ConvexityReport::counterexample() const {
  if (exact) return !*exact;
  for (const auto& i : instances) {
    if (i.verdict.counterexample) return true;
  }
  return false;
}

bool ConvexityReport::confirmed_counterexample() const {
  if (exact) return !*exact;
  for (const auto& i : instances) {
    if (i.verdict.confirmed) return true;
  }
  return false;
}

std::string ConvexityReport::verdict() const {
  if (exact) return *exact ? "convex (exact)" : "not convex (exact)";
  if (confirmed_counterexample()) return "not convex (confirmed counterexample)";
  if (counterexample()) return "counterexample to convexity (unconfirmed)";
  return "no counterexample to convexity";
}

ConvexityReport convexity_pipeline(const Polynomial& f, const ConvexityOptions& opts) {
  if (!is_k_symmetric(f)) throw PreconditionError("polynomial is not k-symmetric");
  ConvexityReport rep;
  if (auto exact = low_degree_convexity(f)) {
    rep.exact = exact;
    return rep;
  }
  HessianForm g = hessian_form(f);
  rep.hessian_terms = g.g.size();
  rep.bound = best_hessian_kappa(f, opts.weight_cap);
  const std::size_t n = f.shape().rows;
  const std::size_t top = std::min(rep.bound->value, n);
  Reducer reducer(std::move(g.g));
  std::uint64_t item = 1;
  for (std::size_t ell = opts.all_levels ? 1 : top; ell <= top; ++ell) {
    PartitionStream stream(n, ell);
    while (auto lam = stream.next()) {
      ReducedInstance inst = reducer(*lam);
      InstanceVerdict iv;
      iv.lam = *lam;
      iv.variables = inst.q.shape().variables();
      iv.terms = inst.q.size();
      std::size_t starts = opts.starts ? opts.starts : default_starts(iv.variables);
      iv.verdict = nonneg_check(make_problem(reducer, inst), opts.radii, starts, opts.seed, item++);
      rep.instances.push_back(std::move(iv));
    }
  }
  return rep;
}

}  // namespace msym
