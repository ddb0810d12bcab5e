#pragma once

// Numerical oracles: multistart minimization on spheres, comparison of full
// and A_m-restricted minima, and heuristic non-negativity checks.

#include "msym/convexity.hpp"
#include "msym/objective.hpp"
#include "msym/reduce.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace msym {

class SphereSpec {
 public:
  explicit SphereSpec(Rational radius_sq);
  const Rational& radius_sq() const { return r_; }
  double value() const { return to_double(r_); }

 private:
  Rational r_;
};

struct MinReport {
  double value = 0.0;
  std::vector<double> argmin;  // row-major n x k
  std::size_t starts = 0;
  double converged_fraction = 0.0;
  std::uint64_t seed = 0;
  std::optional<Partition> lam;  // subspace of the minimizer, for reduced runs
};

// Default start count: 64 up to 12 variables, 256 above.
std::size_t default_starts(std::size_t variables);

// An objective tied to its exact polynomial and the weights omega of the
// sphere sum_i omega_i x_i^2 = r in its variables.
struct SphereProblem {
  Polynomial exact{Shape{}};
  std::shared_ptr<const Objective> objective;
  std::vector<double> omega;
};

SphereProblem make_problem(const Polynomial& f);
SphereProblem make_problem(const Reducer& reducer);
SphereProblem make_problem(const Reducer& reducer, const ReducedInstance& inst);

MinReport minimize(const SphereProblem& p, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                   std::uint64_t item, const SolverOptions& opts = {}, bool parallel = true);

MinReport min_on_sphere(const Polynomial& f, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                        const SolverOptions& opts = {});
MinReport min_on_sphere(const Reducer& reducer, const SphereSpec& s, std::size_t starts, std::uint64_t seed,
                        const SolverOptions& opts = {});

// Minimum over every instance of the level-m reduction plan, each on its
// pulled-back sphere sum_c lam_c |y_c|^2 = r. argmin is expanded to n x k.
MinReport min_on_reduced(const Polynomial& f, std::size_t m, const SphereSpec& s, std::size_t starts,
                         std::uint64_t seed, const SolverOptions& opts = {});
MinReport min_on_reduced(const Reducer& reducer, std::size_t m, const SphereSpec& s, std::size_t starts,
                         std::uint64_t seed, const SolverOptions& opts = {});

struct ConsistencyRecord {
  Rational radius_sq;
  MinReport full;
  MinReport reduced;
  bool pass = false;
};

struct ConsistencyReport {
  std::size_t m = 1;
  double tolerance = 1e-5;
  std::vector<ConsistencyRecord> records;
  bool all_pass() const;
};

ConsistencyReport kappa_consistency_experiment(const Polynomial& f, std::size_t m,
                                               const std::vector<Rational>& radii, std::size_t starts,
                                               std::uint64_t seed, double tol = 1e-5);
ConsistencyReport kappa_consistency_experiment(const Polynomial& f, const KappaBound& bound,
                                               const std::vector<Rational>& radii, std::size_t starts,
                                               std::uint64_t seed, double tol = 1e-5);

struct NonnegVerdict {
  bool counterexample = false;
  std::vector<double> point;       // only for counterexamples
  double value = 0.0;              // lowest value seen, origin included
  double sphere_min = 0.0;         // lowest value over the spheres
  bool confirmed = false;          // exact value at the rationalized point is negative
  Rational exact_value;            // valid when counterexample
  std::size_t spheres = 0;
};

std::string to_string(const NonnegVerdict& v);

NonnegVerdict nonneg_check(const SphereProblem& p, const std::vector<Rational>& radii, std::size_t starts,
                           std::uint64_t seed, std::uint64_t item = 0, const SolverOptions& opts = {});
NonnegVerdict nonneg_check(const Polynomial& q, const std::vector<Rational>& radii, std::size_t starts,
                           std::uint64_t seed);

struct ConvexityOptions {
  std::vector<Rational> radii{1, 4, 16};
  std::size_t starts = 0;  // 0: default_starts per instance
  std::uint64_t seed = 0;
  std::uint32_t weight_cap = 8;
  bool all_levels = false;  // also check partitions shorter than the bound
};

struct InstanceVerdict {
  Partition lam{std::vector<std::size_t>{1}};
  std::size_t variables = 0;
  std::size_t terms = 0;
  NonnegVerdict verdict;
};

struct ConvexityReport {
  std::optional<bool> exact;  // set when decided without numerics (deg <= 2)
  std::optional<KappaBound> bound;
  std::size_t hessian_terms = 0;
  std::vector<InstanceVerdict> instances;
  bool counterexample() const;
  bool confirmed_counterexample() const;
  std::string verdict() const;
};

ConvexityReport convexity_pipeline(const Polynomial& f, const ConvexityOptions& opts);

}  // namespace msym
