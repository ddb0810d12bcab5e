#include "msym/bounds.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

using namespace msym;

namespace {

// Every w in {1..cap}^k, inflated degree, first minimum in lexicographic order.
std::pair<std::vector<std::uint32_t>, Integer> brute_fit(const ExponentProfile& e, std::uint32_t cap) {
  std::vector<std::uint32_t> w(e.k, 1);
  std::vector<std::uint32_t> best_w;
  Integer best = -1;
  for (;;) {
    long d = 0;
    for (const auto& a : e.points) {
      long s = 0;
      for (std::size_t j = 0; j < e.k; ++j) s += static_cast<long>(w[j]) * a[j];
      d = std::max(d, s);
    }
    d = std::max<long>(d, 2L * *std::max_element(w.begin(), w.end()));
    Integer obj = 1;
    for (auto wj : w) obj *= d / static_cast<long>(wj);
    if (best < 0 || obj < best) {
      best = obj;
      best_w = w;
    }
    std::size_t j = e.k;
    while (j > 0 && w[j - 1] == cap) w[--j] = 1;
    if (j == 0) break;
    ++w[j - 1];
  }
  return {best_w, best};
}

// Smallest prod b_j with sum scale*alpha_j/(b_j+1) < 1, b_j in [lo, hi], k = 2.
Integer brute_lattice(const ExponentProfile& e, std::uint32_t scale, std::uint32_t lo, std::uint32_t hi) {
  Integer best = -1;
  for (std::uint32_t b0 = lo; b0 <= hi; ++b0) {
    for (std::uint32_t b1 = lo; b1 <= hi; ++b1) {
      bool ok = true;
      for (const auto& a : e.points) {
        Rational s = Rational(scale * a[0], b0 + 1) + Rational(scale * a[1], b1 + 1);
        if (s >= 1) ok = false;
      }
      Integer obj = Integer(b0) * b1;
      if (ok && (best < 0 || obj < best)) best = obj;
    }
  }
  return best;
}

ExponentProfile random_profile(oracle::Random& rng, std::size_t k, int points, int max_total) {
  ExponentProfile e;
  e.k = k;
  for (int i = 0; i < points; ++i) e.points.insert(rng.tuple(k, max_total));
  return e;
}

Polynomial p(std::vector<std::uint32_t> a, Shape s) { return power_sum(a, s); }

}  // namespace

TEST_CASE("kappa_weighted examples") {
  Polynomial f = fixture::example_family(5);
  KappaBound b = kappa_weighted(f, Weights({3, 5}));
  CHECK(b.unclamped == 8);
  CHECK(b.value == 5);
  CHECK(b.n_clamped);
  CHECK(b.method == KappaMethod::WeightedDegree);

  Polynomial f20 = fixture::example_family(20);
  CHECK(kappa_weighted(f20, Weights({3, 5})).value == 8);
  CHECK(kappa_weighted(f20, Weights({1, 1})).value == 16);

  Polynomial g = pow(p({2}, {10, 1}), 3);
  CHECK(kappa_weighted(g, Weights({1})).value == 6);

  // d = 3 < 2*2
  Polynomial low = p({1, 1}, {10, 2}) + p({2, 0}, {10, 2});
  CHECK_THROWS_AS(kappa_weighted(low, Weights({1, 2})), PreconditionError);
  Polynomial nonsym = Polynomial::variable({3, 1}, {1, 1});
  CHECK_THROWS_AS(kappa_weighted(nonsym, Weights({1})), PreconditionError);
}

TEST_CASE("kappa_simplex examples") {
  Polynomial f = fixture::example_family(20);
  CHECK(kappa_simplex(f, Simplex{{Rational(14, 3), Rational(14, 5)}}).value == 8);

  Polynomial g = p({2, 0}, {10, 2}) + p({0, 2}, {10, 2});
  CHECK(kappa_simplex(g, Simplex{{2, 2}}).value == 4);
  CHECK_THROWS_AS(kappa_simplex(g, Simplex{{2, Rational(3, 2)}}), PreconditionError);
  CHECK_THROWS_AS(kappa_simplex(g, Simplex{{3, Rational(19, 10)}}), PreconditionError);
}

TEST_CASE("encloses") {
  auto e = fixture::profile(2, {{2, 0}, {0, 2}});
  CHECK(encloses(Simplex{{2, 2}}, e));
  CHECK_FALSE(encloses(Simplex{{2, 2}}, e, true));
  CHECK(encloses(Simplex{{Rational(21, 10), Rational(21, 10)}}, e, true));
}

TEST_CASE("fit_simplex on the example profile") {
  auto e = exponent_profile(fixture::example_family(5));
  SimplexFit fit = fit_simplex(e, 6);
  CHECK(fit.objective == 8);
  CHECK(fit.weights == Weights({3, 5}));
  CHECK(fit.simplex == Simplex{{Rational(14, 3), Rational(14, 5)}});
  CHECK(fit.degree == 14);
}

TEST_CASE("fit_simplex inflation and degenerate profiles") {
  SimplexFit unit = fit_simplex(fixture::profile(2, {{1, 0}, {0, 1}}), 4);
  CHECK(unit.objective == 4);
  CHECK(unit.weights == Weights({1, 1}));
  CHECK(unit.degree == 2);

  auto axis = fixture::profile(3, {{5, 0, 0}});
  auto [w, obj] = brute_fit(axis, 3);
  SimplexFit fit = fit_simplex(axis, 3);
  CHECK(fit.objective == obj);
  CHECK(fit.weights == Weights(w));

  CHECK_THROWS_AS(fit_simplex(ExponentProfile{2, {}}, 4), PreconditionError);
}

TEST_CASE("fit_simplex agrees with exhaustive search, and OpenMP with serial") {
  oracle::Random rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    auto e = random_profile(rng, k, rng.uniform(1, 6), 8);
    std::uint32_t cap = static_cast<std::uint32_t>(rng.uniform(1, 6));
    auto [w, obj] = brute_fit(e, cap);
    SimplexFit par = fit_simplex(e, cap);
    SimplexFit ser = fit_simplex_serial(e, cap);
    CHECK(par.objective == obj);
    CHECK(par.weights == Weights(w));
    CHECK(ser.objective == par.objective);
    CHECK(ser.weights == par.weights);
    CHECK(encloses(par.simplex, e));
    // never worse than all-ones weights
    auto ones = brute_fit(e, 1);
    CHECK(par.objective <= ones.second);
  }
}

TEST_CASE("lattice simplex fit") {
  oracle::Random rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto e = random_profile(rng, 2, rng.uniform(1, 5), 6);
    std::uint32_t scale = static_cast<std::uint32_t>(rng.uniform(1, 2));
    std::uint32_t lo = static_cast<std::uint32_t>(rng.uniform(1, 2));
    LatticeFit fit = fit_lattice_simplex(e, scale, lo);
    CHECK(fit.objective == brute_lattice(e, scale, lo, 40));
    CHECK(encloses(fit.simplex, e, true));
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(fit.floors[j] >= lo);
      CHECK(floor(scale * fit.simplex.a[j]) == fit.floors[j]);
    }
  }
}

TEST_CASE("degree power, column degree and half degree bounds") {
  Polynomial f = fixture::example_family(40);
  CHECK(kappa_degree_power(f).value == 16);
  CHECK(kappa_degree_power(fixture::quartic(10)).value == 4);
  Polynomial q3 = p({1, 1, 0}, {10, 3}) + p({0, 0, 1}, {10, 3}) * p({0, 0, 1}, {10, 3});
  CHECK(kappa_degree_power(q3).value == 8);
  CHECK_THROWS_AS(kappa_degree_power(p({1}, {4, 1})), PreconditionError);

  CHECK(kappa_column_degrees(fixture::profile(2, {{2, 0}, {0, 1}}), 100).value == 8);
  CHECK(kappa_column_degrees(f).value == 32);
  CHECK(kappa_column_degrees(fixture::profile(3, {{1, 1, 1}}), 100).value == 27);
  CHECK_THROWS_AS(kappa_column_degrees(fixture::profile(2, {{2, 0}}), 100), PreconditionError);
  CHECK_THROWS_AS(kappa_column_degrees(fixture::profile(1, {{2}}), 100), PreconditionError);

  Shape s{20, 1};
  CHECK(kappa_half_degree_k1(fixture::quartic(20)).value == 2);
  CHECK(kappa_half_degree_k1(pow(p({1}, s), 7)).value == 3);
  CHECK(kappa_half_degree_k1(p({2}, s)).value == 2);
  CHECK_THROWS_AS(kappa_half_degree_k1(f), PreconditionError);
}

TEST_CASE("best_kappa") {
  KappaBound b = best_kappa(fixture::example_family(20), 6);
  CHECK(b.value == 8);
  CHECK(b.method == KappaMethod::SimplexFit);

  KappaBound q = best_kappa(fixture::quartic(20), 8);
  CHECK(q.value == 2);
  CHECK(q.method == KappaMethod::HalfDegreeK1);

  KappaBound one = best_kappa(fixture::example_family(1), 8);
  CHECK(one.value == 1);

  CHECK_THROWS_AS(best_kappa(Polynomial::variable({2, 1}, {1, 1}), 8), PreconditionError);
}

TEST_CASE("every applicable bound lies in [1, n]") {
  oracle::Random rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    Shape s{n, static_cast<std::size_t>(rng.uniform(1, 2))};
    Polynomial f = rng.symmetric_polynomial(s, rng.uniform(2, 5), 2);
    if (f.is_zero()) continue;
    for (const auto& b : applicable_kappa_bounds(f, 4)) {
      CHECK(b.value >= 1);
      CHECK(b.value <= n);
      CHECK(b.n_clamped == (b.unclamped > n));
    }
  }
}

TEST_CASE("kappa_weighted is monotone in d") {
  oracle::Random rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    auto e = random_profile(rng, 2, 3, 6);
    Weights w({static_cast<std::uint32_t>(rng.uniform(1, 3)), static_cast<std::uint32_t>(rng.uniform(1, 3))});
    auto bigger = e;
    bigger.points.insert(rng.tuple(2, 9));
    if (weighted_degree(e, w) < Degree(2 * w.max())) continue;
    CHECK(kappa_weighted(e, 1000, w).unclamped <= kappa_weighted(bigger, 1000, w).unclamped);
  }
}

TEST_CASE("simplex from weights reproduces the weighted bound") {
  oracle::Random rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    auto e = random_profile(rng, k, 4, 8);
    std::vector<std::uint32_t> wv;
    for (std::size_t j = 0; j < k; ++j) wv.push_back(static_cast<std::uint32_t>(rng.uniform(1, 3)));
    Weights w(wv);
    Degree d = weighted_degree(e, w);
    if (d < Degree(2 * w.max())) continue;
    Simplex s;
    for (auto wj : wv) s.a.push_back(Rational(d.value(), wj));
    CHECK(kappa_simplex(e, 1000, s).unclamped == kappa_weighted(e, 1000, w).unclamped);
  }
}

TEST_CASE("count_partitions") {
  CHECK(count_partitions(25, 12) == 100);
  CHECK(count_partitions(9, 1) == 1);
  CHECK(count_partitions(5, 2) == 2);
  CHECK_THROWS_AS(count_partitions(5, 0), PreconditionError);
  CHECK_THROWS_AS(count_partitions(5, 6), PreconditionError);
  for (std::size_t n = 1; n <= 14; ++n) {
    for (std::size_t ell = 1; ell <= n; ++ell) {
      CHECK(count_partitions(n, ell) == oracle::partitions(n, ell).size());
    }
  }
  for (std::size_t n = 1; n <= 40; ++n) {
    for (std::size_t ell = 1; ell <= n; ++ell) {
      Integer limit;
      mpz_ui_pow_ui(limit.get_mpz_t(), n, ell);
      CHECK(count_partitions(n, ell) <= limit);
    }
  }
}
