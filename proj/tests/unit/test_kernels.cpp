#include "msym/objective.hpp"
#include "msym/parallel.hpp"
#include "msym/reduce.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace msym;

namespace {

double weighted_norm(std::span<const double> omega, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += omega[i] * x[i] * x[i];
  return s;
}

void check_gradient(const Objective& obj, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  double v = obj.value_and_gradient(x, g);
  CHECK(v == doctest::Approx(obj.value(x)).epsilon(1e-12));
  const double h = 1e-6;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x;
    auto xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (obj.value(xp) - obj.value(xm)) / (2 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
}

}  // namespace

TEST_CASE("compiled polynomial value and gradient") {
  oracle::Random rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f = rng.polynomial({3, 2}, 8, 4);
    CompiledPolynomial c(f);
    CHECK(c.dimension() == 6);
    auto x = rng.real_point(6);
    CHECK(c.value(x) == doctest::Approx(oracle::naive_evaluate(f, x)).epsilon(1e-12));
    check_gradient(c, x);
    std::vector<double> g(6);
    c.value_and_gradient(x, g);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(g[i] == doctest::Approx(evaluate(partial(f, var_index(f.shape(), i)), std::span<const double>(x)))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted power-sum objective equals the restricted polynomial") {
  oracle::Random rng(72);
  for (int trial = 0; trial < 8; ++trial) {
    Shape s{6, static_cast<std::size_t>(rng.uniform(1, 2))};
    Polynomial f = rng.symmetric_polynomial(s, 4, 3);
    Reducer red(f);
    REQUIRE(red.power_sum_form().has_value());
    Partition lam({3, 2, 1});
    ReducedInstance inst = red(lam);
    WeightedPowerSumObjective w(*red.power_sum_form(), {3.0, 2.0, 1.0});
    CompiledPolynomial c(inst.q);
    CHECK(w.dimension() == c.dimension());
    auto y = rng.real_point(w.dimension());
    CHECK(w.value(y) == doctest::Approx(c.value(y)).epsilon(1e-10));
    check_gradient(w, y);
    std::vector<double> gw(y.size());
    std::vector<double> gc(y.size());
    w.value_and_gradient(y, gw);
    c.value_and_gradient(y, gc);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(gw[i] == doctest::Approx(gc[i]).epsilon(1e-10).scale(1.0));

    // unit multiplicities give f itself
    WeightedPowerSumObjective full(*red.power_sum_form(), std::vector<double>(6, 1.0));
    auto x = rng.real_point(full.dimension());
    CHECK(full.value(x) == doctest::Approx(oracle::naive_evaluate(f, x)).epsilon(1e-10));
  }
}

TEST_CASE("sphere starts are normalized and reproducible") {
  std::vector<double> omega{1, 1, 2, 2, 3, 3};
  auto a = sphere_start(omega, 5.0, 9, 2, 7);
  auto b = sphere_start(omega, 5.0, 9, 2, 7);
  auto c = sphere_start(omega, 5.0, 9, 2, 8);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(weighted_norm(omega, a) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("descent stays on the weighted sphere and does not go uphill") {
  oracle::Random rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f = rng.polynomial({2, 2}, 6, 4);
    CompiledPolynomial c(f);
    std::vector<double> omega{1, 1, 3, 3};
    auto x0 = sphere_start(omega, 2.0, 1, 0, static_cast<std::uint64_t>(trial));
    LocalResult r = descend_on_sphere(c, omega, 2.0, x0, {});
    CHECK(std::abs(weighted_norm(omega, r.x) - 2.0) <= 1e-10 * 2.0);
    CHECK(r.value <= c.value(x0) + 1e-12);
    CHECK(r.value == doctest::Approx(c.value(r.x)).epsilon(1e-12));
    CHECK(r.iterations <= 500);
  }
}

TEST_CASE("serial and OpenMP multistart agree exactly") {
  oracle::Random rng(74);
  for (int trial = 0; trial < 5; ++trial) {
    Polynomial f = rng.symmetric_polynomial({4, 2}, 4, 3);
    CompiledPolynomial c(f);
    std::vector<double> omega(8, 1.0);
    auto s = run_multistart_serial(c, omega, 3.0, 24, 11, 4, {});
    auto p = run_multistart_omp(c, omega, 3.0, 24, 11, 4, {});
    CHECK(s.best.value == p.best.value);
    CHECK(s.best.x == p.best.x);
    CHECK(s.starts == p.starts);
    CHECK(s.converged == p.converged);
  }
}

TEST_CASE("the thread cap is read from the environment") {
  const char* old = std::getenv("MULTISYM_THREADS");
  std::string saved = old ? old : "";
  setenv("MULTISYM_THREADS", "1", 1);
  CHECK(worker_threads() == 1);
  setenv("MULTISYM_THREADS", "junk", 1);
  CHECK(worker_threads() >= 1);
  if (old) {
    setenv("MULTISYM_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("MULTISYM_THREADS");
  }
}
