#include "msym/reduce.hpp"

#include "msym/bounds.hpp"
#include "msym/convexity.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

using namespace msym;

namespace {

Polynomial y(Shape s, std::size_t i, std::size_t j) { return Polynomial::variable(s, {i, j}); }

std::vector<std::vector<std::size_t>> parts_of(const std::vector<Partition>& ps) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : ps) out.push_back(p.parts());
  return out;
}

// Closed form of the restricted Hessian form of the quartic.
Polynomial quartic_instance(const Partition& lam) {
  const std::size_t l = lam.length();
  Shape s{l, 2};
  Polynomial sq(s);
  Polynomial sy(s);
  for (std::size_t i = 1; i <= l; ++i) {
    Rational li = static_cast<long>(lam.parts()[i - 1]);
    sq = sq + li * (y(s, i, 1) * y(s, i, 1));
    sy = sy + li * y(s, i, 1);
  }
  Polynomial g(s);
  for (std::size_t k = 1; k <= l; ++k) {
    Rational lk = static_cast<long>(lam.parts()[k - 1]);
    g = g + lk * (y(s, k, 2) * y(s, k, 2) *
                  (Rational(-6) * y(s, k, 1) * y(s, k, 1) + Rational(4) * sq + Polynomial::constant(s, 2)));
    for (std::size_t m = 1; m <= l; ++m) {
      Rational lm = static_cast<long>(lam.parts()[m - 1]);
      g = g + (lk * lm) * (y(s, k, 2) * y(s, m, 2) * (Rational(8) * y(s, k, 1) * y(s, m, 1) + Rational(6) * sy * sy));
    }
  }
  return g;
}

Partition random_partition(oracle::Random& rng, std::size_t n, std::size_t ell) {
  auto all = enumerate_partitions(n, ell);
  return all[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(all.size()) - 1))];
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK(Partition({3, 1, 1}).total() == 5);
  CHECK(to_string(Partition({3, 1, 1})) == "(3,1,1)");
  CHECK_THROWS_AS(Partition({1, 2}), PreconditionError);
  CHECK_THROWS_AS(Partition({2, 0}), PreconditionError);
  CHECK_THROWS_AS(Partition(std::vector<std::size_t>{}), PreconditionError);
}

TEST_CASE("partition enumeration examples") {
  CHECK(enumerate_partitions(25, 12).size() == 100);
  CHECK(parts_of(enumerate_partitions(3, 2)) == std::vector<std::vector<std::size_t>>{{2, 1}});
  CHECK(parts_of(enumerate_partitions(6, 3)) == std::vector<std::vector<std::size_t>>{{4, 1, 1}, {3, 2, 1}, {2, 2, 2}});
  CHECK(parts_of(enumerate_subspaces_up_to(4, 2)) == std::vector<std::vector<std::size_t>>{{4}, {3, 1}, {2, 2}});
  CHECK(parts_of(enumerate_subspaces_up_to(7, 1)) == std::vector<std::vector<std::size_t>>{{7}});
  CHECK_THROWS_AS(enumerate_partitions(4, 5), PreconditionError);
  CHECK_THROWS_AS(enumerate_partitions(4, 0), PreconditionError);
  CHECK_THROWS_AS(enumerate_subspaces_up_to(4, 0), PreconditionError);
}

TEST_CASE("partition stream matches recursive enumeration") {
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t ell = 1; ell <= n; ++ell) {
      auto got = parts_of(enumerate_partitions(n, ell));
      CHECK(got == oracle::partitions(n, ell));
      for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] > got[i]);
      CHECK(count_partitions(n, ell) == got.size());
    }
  }
  Integer total = 0;
  for (std::size_t ell = 1; ell <= 12; ++ell) total += count_partitions(25, ell);
  CHECK(total == enumerate_subspaces_up_to(25, 12).size());
}

TEST_CASE("restrict examples") {
  Shape s{5, 2};
  Partition lam({3, 2});
  ReducedInstance r = restrict(power_sum({2, 1}, s), lam);
  Shape t{2, 2};
  CHECK(r.q == Rational(3) * (y(t, 1, 1) * y(t, 1, 1) * y(t, 1, 2)) + Rational(2) * (y(t, 2, 1) * y(t, 2, 1) * y(t, 2, 2)));
  CHECK(r.lam == lam);

  oracle::Random rng(41);
  Polynomial f = rng.polynomial({3, 2}, 6, 3);
  CHECK(restrict(f, Partition({1, 1, 1})).q == f);

  CHECK_THROWS_AS(restrict(f, Partition({2, 2})), ShapeError);
  CHECK(block_assignment(Partition({3, 1})) == std::vector<std::size_t>{0, 0, 0, 1});
}

TEST_CASE("restrict commutes with evaluation") {
  oracle::Random rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 5));
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 2));
    Polynomial f = rng.polynomial({n, k}, 6, 3);
    Partition lam = random_partition(rng, n, static_cast<std::size_t>(rng.uniform(1, static_cast<int>(n))));
    ReducedInstance r = restrict(f, lam);
    auto pt = rng.rational_point(lam.length() * k);
    auto x = expand_point<Rational>(pt, lam, k);
    CHECK(evaluate(r.q, std::span<const Rational>(pt)) == oracle::naive_evaluate(f, x));
  }
}

TEST_CASE("symmetric inputs depend only on block multiplicities") {
  oracle::Random rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    Shape s{4, static_cast<std::size_t>(rng.uniform(1, 2))};
    Polynomial f = rng.symmetric_polynomial(s, 4, 2);
    Partition lam({2, 1, 1});
    Polynomial q = restrict(f, lam).q;
    // rows 1 and 3 together instead of rows 1 and 2
    std::vector<std::size_t> assign{0, 1, 0, 2};
    CHECK(restrict_with_assignment(f, assign, 3) == q);
    // blocks listed in another order: rename Y rows back
    std::vector<std::size_t> swapped{2, 2, 0, 1};
    Polynomial r = restrict_with_assignment(f, swapped, 3);
    std::vector<std::size_t> back{1, 2, 0};
    CHECK(relabel_rows(r, back, r.shape()) == q);
  }
}

TEST_CASE("power-sum fast path equals direct substitution") {
  oracle::Random rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    Shape s{5, static_cast<std::size_t>(rng.uniform(1, 2))};
    Polynomial f = rng.symmetric_polynomial(s, 4, 3);
    Reducer red(f);
    CHECK(red.symmetric());
    for (std::size_t ell = 1; ell <= 5; ++ell) {
      for (const auto& lam : enumerate_partitions(5, ell)) CHECK(red(lam).q == restrict(f, lam).q);
    }
  }
  Polynomial nonsym = rng.polynomial({3, 1}, 5, 3);
  Reducer plain(nonsym);
  CHECK_FALSE(plain.symmetric());
  CHECK(plain(Partition({2, 1})).q == restrict(nonsym, Partition({2, 1})).q);
}

TEST_CASE("restricted hessian form of the quartic matches its closed form") {
  const std::size_t n = 9;
  Reducer red(hessian_form(fixture::quartic(n)).g);
  for (const auto& lam : enumerate_partitions(n, 4)) {
    CAPTURE(to_string(lam));
    CHECK(red(lam).q == quartic_instance(lam));
  }
}

TEST_CASE("reduction plan counts") {
  Polynomial f = fixture::quartic(7);
  Reducer red(f);
  ReductionPlan plan(red, 3);
  CHECK(plan.total() == count_partitions(7, 1) + count_partitions(7, 2) + count_partitions(7, 3));
  std::size_t seen = 0;
  while (auto inst = plan.next()) {
    ++seen;
    CHECK(inst->q.shape().rows == inst->lam.length());
  }
  CHECK(seen == plan.total());

  Reducer two(fixture::quartic(2));
  ReductionPlan diag(two, 1);
  auto only = diag.next();
  REQUIRE(only.has_value());
  CHECK(only->lam == Partition({2}));
  CHECK_FALSE(diag.next().has_value());
}

TEST_CASE("reduced instance text round trip") {
  Reducer red(fixture::quartic(6), "quartic");
  ReducedInstance r = red(Partition({3, 2, 1}));
  std::string text = serialize(r);
  CHECK(text.rfind("lambda = (3,2,1)\n# source: quartic\npoly n=3 k=1\n", 0) == 0);
  ReducedInstance back = parse_reduced_instance(text);
  CHECK(back.lam == r.lam);
  CHECK(back.q == r.q);
  CHECK(back.provenance == "quartic");
  CHECK(serialize(back) == text);
  CHECK_THROWS(parse_reduced_instance("poly n=1 k=1\n0\n"));
}
