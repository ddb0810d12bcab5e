#pragma once

// Inputs shared by unit and acceptance tests.

#include "msym/multisym.hpp"

#include <array>

namespace fixture {

using msym::Polynomial;
using msym::Rational;
using msym::Shape;

inline Polynomial p(std::vector<std::uint32_t> alpha, Shape s) { return msym::power_sum(alpha, s); }

// The 2-symmetric quartic family with seven nonzero parameters.
inline Polynomial example_family(std::size_t n, const std::array<Rational, 7>& g) {
  Shape s{n, 2};
  Polynomial p10 = p({1, 0}, s);
  Polynomial p01 = p({0, 1}, s);
  Polynomial p11 = p({1, 1}, s);
  Polynomial f = g[0] * p({4, 0}, s);
  f = f + g[1] * msym::pow(p10, 4);
  f = f - g[2] * (p10 * p10 * p11);
  f = f - g[3] * (p({3, 0}, s) * p01);
  f = f - g[4] * (p10 * p01 * p01);
  f = f + g[5] * (p10 * p10);
  f = f + g[6] * p11;
  return f;
}

inline Polynomial example_family(std::size_t n) {
  std::array<Rational, 7> ones;
  ones.fill(1);
  return example_family(n, ones);
}

// -1/2 p_4 + p_2^2 + 1/2 p_1^4 + p_2 in one column.
inline Polynomial quartic(std::size_t n) {
  Shape s{n, 1};
  Polynomial p1 = p({1}, s);
  Polynomial p2 = p({2}, s);
  return Rational(-1, 2) * p({4}, s) + p2 * p2 + Rational(1, 2) * msym::pow(p1, 4) + p2;
}

inline msym::ExponentProfile profile(std::size_t k, std::initializer_list<msym::ExponentTuple> pts) {
  msym::ExponentProfile e;
  e.k = k;
  e.points.insert(pts.begin(), pts.end());
  return e;
}

}  // namespace fixture
