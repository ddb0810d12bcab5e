#include "msym/objective.hpp"

#include "msym/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace msym {

namespace {

double ipow(double x, std::uint32_t e) {
  double r = 1.0;
  while (e) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

}  // namespace

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) : dim_(f.shape().variables()) {
  offsets_.push_back(0);
  for (const auto& t : f.terms()) {
    coeffs_.push_back(to_double(t.coeff));
    for (const auto& fac : t.mono.factors()) factors_.push_back({fac.var, fac.exp});
    offsets_.push_back(factors_.size());
  }
}

double CompiledPolynomial::value(std::span<const double> x) const {
  if (x.size() != dim_) throw ShapeError("point dimension mismatch");
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double p = coeffs_[t];
    for (std::size_t a = offsets_[t]; a < offsets_[t + 1]; ++a) p *= ipow(x[factors_[a].var], factors_[a].exp);
    sum += p;
  }
  return sum;
}

double CompiledPolynomial::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  if (x.size() != dim_ || grad.size() != dim_) throw ShapeError("point dimension mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::size_t lo = offsets_[t];
    const std::size_t hi = offsets_[t + 1];
    double p = coeffs_[t];
    for (std::size_t a = lo; a < hi; ++a) p *= ipow(x[factors_[a].var], factors_[a].exp);
    sum += p;
    for (std::size_t a = lo; a < hi; ++a) {
      double d = coeffs_[t] * factors_[a].exp * ipow(x[factors_[a].var], factors_[a].exp - 1);
      for (std::size_t b = lo; b < hi; ++b) {
        if (b != a) d *= ipow(x[factors_[b].var], factors_[b].exp);
      }
      grad[factors_[a].var] += d;
    }
  }
  return sum;
}

WeightedPowerSumObjective::WeightedPowerSumObjective(const PowerSumExpr& F, std::vector<double> multiplicities)
    : k_(F.k()), rows_(multiplicities.size()), mult_(std::move(multiplicities)) {
  if (rows_ == 0) throw ShapeError("need at least one row");
  std::map<ExponentTuple, std::size_t> index;
  for (const auto& alpha : F.indices()) {
    index.emplace(alpha, alphas_.size());
    alphas_.push_back(alpha);
  }
  offsets_.push_back(0);
  for (const auto& [mono, c] : F.terms()) {
    if (mono.empty()) {
      constant_ += to_double(c);
      continue;
    }
    coeffs_.push_back(to_double(c));
    for (const auto& fac : mono) factors_.push_back({index.at(fac.alpha), fac.exp});
    offsets_.push_back(factors_.size());
  }
}

void WeightedPowerSumObjective::power_sums(std::span<const double> x, std::span<double> z) const {
  for (std::size_t a = 0; a < alphas_.size(); ++a) {
    double s = 0.0;
    for (std::size_t c = 0; c < rows_; ++c) {
      double m = mult_[c];
      for (std::size_t j = 0; j < k_; ++j) m *= ipow(x[c * k_ + j], alphas_[a][j]);
      s += m;
    }
    z[a] = s;
  }
}

double WeightedPowerSumObjective::value(std::span<const double> x) const {
  if (x.size() != dimension()) throw ShapeError("point dimension mismatch");
  std::vector<double> z(alphas_.size());
  power_sums(x, z);
  double sum = constant_;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double p = coeffs_[t];
    for (std::size_t a = offsets_[t]; a < offsets_[t + 1]; ++a) p *= ipow(z[factors_[a].index], factors_[a].exp);
    sum += p;
  }
  return sum;
}

double WeightedPowerSumObjective::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  if (x.size() != dimension() || grad.size() != dimension()) throw ShapeError("point dimension mismatch");
  std::vector<double> z(alphas_.size());
  power_sums(x, z);
  // dF/dZ_alpha
  std::vector<double> dz(alphas_.size(), 0.0);
  double sum = constant_;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::size_t lo = offsets_[t];
    const std::size_t hi = offsets_[t + 1];
    double p = coeffs_[t];
    for (std::size_t a = lo; a < hi; ++a) p *= ipow(z[factors_[a].index], factors_[a].exp);
    sum += p;
    for (std::size_t a = lo; a < hi; ++a) {
      double d = coeffs_[t] * factors_[a].exp * ipow(z[factors_[a].index], factors_[a].exp - 1);
      for (std::size_t b = lo; b < hi; ++b) {
        if (b != a) d *= ipow(z[factors_[b].index], factors_[b].exp);
      }
      dz[factors_[a].index] += d;
    }
  }
  // dP_alpha/dy_cj = mult_c alpha_j y_c^{alpha - e_j}
  std::fill(grad.begin(), grad.end(), 0.0);
  for (std::size_t a = 0; a < alphas_.size(); ++a) {
    if (dz[a] == 0.0) continue;
    const auto& alpha = alphas_[a];
    for (std::size_t c = 0; c < rows_; ++c) {
      for (std::size_t j = 0; j < k_; ++j) {
        if (alpha[j] == 0) continue;
        double d = dz[a] * mult_[c] * alpha[j];
        for (std::size_t jj = 0; jj < k_; ++jj) {
          d *= ipow(x[c * k_ + jj], alpha[jj] - (jj == j ? 1U : 0U));
        }
        grad[c * k_ + j] += d;
      }
    }
  }
  return sum;
}

namespace {

// Works in z = sqrt(omega) x, where the constraint is the round sphere |z|^2 = r.
class ScaledProblem {
 public:
  ScaledProblem(const Objective& obj, std::span<const double> omega)
      : obj_(obj), root_(omega.size()), x_(omega.size()), gx_(omega.size()) {
    for (std::size_t i = 0; i < omega.size(); ++i) root_[i] = std::sqrt(omega[i]);
  }

  double value(std::span<const double> z) {
    for (std::size_t i = 0; i < z.size(); ++i) x_[i] = z[i] / root_[i];
    return obj_.value(x_);
  }

  double value_and_gradient(std::span<const double> z, std::span<double> g) {
    for (std::size_t i = 0; i < z.size(); ++i) x_[i] = z[i] / root_[i];
    double v = obj_.value_and_gradient(x_, gx_);
    for (std::size_t i = 0; i < z.size(); ++i) g[i] = gx_[i] / root_[i];
    return v;
  }

  void to_x(std::span<const double> z, std::span<double> x) const {
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] / root_[i];
  }

  std::vector<double> to_z(std::span<const double> x) const {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * root_[i];
    return z;
  }

 private:
  const Objective& obj_;
  std::vector<double> root_;
  std::vector<double> x_;
  std::vector<double> gx_;
};

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void project(std::span<double> z, double radius) {
  double nz = norm(z);
  if (nz == 0.0) {
    z[0] = radius;
    return;
  }
  for (double& x : z) x *= radius / nz;
}

}  // namespace

LocalResult descend_on_sphere(const Objective& obj, std::span<const double> omega, double r,
                              std::vector<double> start, const SolverOptions& opts) {
  const std::size_t dim = obj.dimension();
  if (omega.size() != dim || start.size() != dim) throw ShapeError("sphere weights do not match dimension");
  if (!(r > 0)) throw PreconditionError("sphere radius must be positive");
  ScaledProblem prob(obj, omega);
  const double radius = std::sqrt(r);
  std::vector<double> z = prob.to_z(start);
  project(z, radius);
  std::vector<double> g(dim), gt(dim), trial(dim);
  double f = prob.value_and_gradient(z, g);
  double step = opts.initial_step;
  LocalResult res;
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    // tangential component of the gradient
    double gz = 0.0;
    for (std::size_t i = 0; i < dim; ++i) gz += g[i] * z[i];
    for (std::size_t i = 0; i < dim; ++i) gt[i] = g[i] - gz / r * z[i];
    const double gn2 = std::inner_product(gt.begin(), gt.end(), gt.begin(), 0.0);
    if (std::sqrt(gn2) <= opts.gradient_tolerance) {
      res.converged = true;
      break;
    }
    double t = step;
    double ft = 0.0;
    bool accepted = false;
    while (t > 1e-20 * std::max(1.0, radius)) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = z[i] - t * gt[i];
      project(trial, radius);
      ft = prob.value(trial);
      if (ft <= f - opts.armijo * t * gn2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no descent left at working precision
      break;
    }
    const double decrease = f - ft;
    z.swap(trial);
    f = prob.value_and_gradient(z, g);
    step = 2.0 * t;
    if (decrease <= opts.stall_tolerance * (1.0 + std::abs(f))) {
      res.converged = true;
      break;
    }
  }
  project(z, radius);
  res.x.resize(dim);
  prob.to_x(z, res.x);
  res.value = obj.value(res.x);
  return res;
}

std::vector<double> sphere_start(std::span<const double> omega, double r, std::uint64_t seed,
                                 std::uint64_t item, std::uint64_t start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(item), static_cast<std::uint32_t>(item >> 32),
                    static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(start >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal;
  std::vector<double> z(omega.size());
  for (double& v : z) v = normal(gen);
  project(z, std::sqrt(r));
  for (std::size_t i = 0; i < z.size(); ++i) z[i] /= std::sqrt(omega[i]);
  return z;
}

namespace {

MultistartResult reduce_results(std::vector<LocalResult>& runs) {
  MultistartResult out;
  out.starts = runs.size();
  std::size_t best = 0;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    if (runs[s].converged) ++out.converged;
    if (runs[s].value < runs[best].value) best = s;
  }
  out.best = std::move(runs[best]);
  return out;
}

}  // namespace

MultistartResult run_multistart_serial(const Objective& obj, std::span<const double> omega, double r,
                                       std::size_t starts, std::uint64_t seed, std::uint64_t item,
                                       const SolverOptions& opts) {
  if (starts < 1) throw PreconditionError("need at least one start");
  std::vector<LocalResult> runs(starts);
  for (std::size_t s = 0; s < starts; ++s) {
    runs[s] = descend_on_sphere(obj, omega, r, sphere_start(omega, r, seed, item, s), opts);
  }
  return reduce_results(runs);
}

MultistartResult run_multistart_omp(const Objective& obj, std::span<const double> omega, double r,
                                    std::size_t starts, std::uint64_t seed, std::uint64_t item,
                                    const SolverOptions& opts) {
  if (starts < 1) throw PreconditionError("need at least one start");
  std::vector<LocalResult> runs(starts);
  const auto total = static_cast<std::int64_t>(starts);
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
  for (std::int64_t s = 0; s < total; ++s) {
    auto u = static_cast<std::size_t>(s);
    runs[u] = descend_on_sphere(obj, omega, r, sphere_start(omega, r, seed, item, u), opts);
  }
  return reduce_results(runs);
}

}  // namespace msym
