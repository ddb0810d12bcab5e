#pragma once

// Floating-point objectives with exact-form gradients and the projected
// gradient multistart used by the numerical oracles.

#include "msym/multisym.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace msym {

class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  // Writes the gradient into grad and returns the value.
  virtual double value_and_gradient(std::span<const double> x, std::span<double> grad) const = 0;
};

// A polynomial flattened into double coefficients; gradient from the
// formal partials of every term.
class CompiledPolynomial final : public Objective {
 public:
  explicit CompiledPolynomial(const Polynomial& f);

  std::size_t dimension() const override { return dim_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  std::size_t dim_;
  std::vector<double> coeffs_;
  std::vector<std::size_t> offsets_;  // term t uses factors_[offsets_[t], offsets_[t+1])
  std::vector<Factor> factors_;
};

// F((P_alpha)_alpha) with P_alpha(y) = sum_c mult_c y_c^alpha on rows y_c in R^k.
// With all multiplicities 1 this is f itself on the full n x k array.
class WeightedPowerSumObjective final : public Objective {
 public:
  WeightedPowerSumObjective(const PowerSumExpr& F, std::vector<double> multiplicities);

  std::size_t dimension() const override { return rows_ * k_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override;

 private:
  struct Factor {
    std::size_t index;  // into alphas_
    std::uint32_t exp;
  };
  void power_sums(std::span<const double> x, std::span<double> z) const;

  std::size_t k_;
  std::size_t rows_;
  std::vector<double> mult_;
  std::vector<ExponentTuple> alphas_;
  std::vector<double> coeffs_;
  std::vector<std::size_t> offsets_;
  std::vector<Factor> factors_;
  double constant_ = 0.0;
};

struct SolverOptions {
  std::size_t max_iterations = 500;
  double gradient_tolerance = 1e-10;
  double armijo = 1e-4;
  double initial_step = 1.0;
  double stall_tolerance = 1e-15;
};

struct LocalResult {
  double value = 0.0;
  std::vector<double> x;
  bool converged = false;
  std::size_t iterations = 0;
};

// Projected gradient with Armijo backtracking on sum_i omega_i x_i^2 = r.
LocalResult descend_on_sphere(const Objective& obj, std::span<const double> omega, double r,
                              std::vector<double> start, const SolverOptions& opts);

// Gaussian start normalized to the weighted sphere; stream (seed, item, start).
std::vector<double> sphere_start(std::span<const double> omega, double r, std::uint64_t seed,
                                 std::uint64_t item, std::uint64_t start);

struct MultistartResult {
  LocalResult best;
  std::size_t starts = 0;
  std::size_t converged = 0;
};

// Both kernels evaluate the same starts and keep the lowest value, breaking
// ties by start index, so their results are identical.
MultistartResult run_multistart_serial(const Objective& obj, std::span<const double> omega, double r,
                                       std::size_t starts, std::uint64_t seed, std::uint64_t item,
                                       const SolverOptions& opts);
MultistartResult run_multistart_omp(const Objective& obj, std::span<const double> omega, double r,
                                    std::size_t starts, std::uint64_t seed, std::uint64_t item,
                                    const SolverOptions& opts);

}  // namespace msym
