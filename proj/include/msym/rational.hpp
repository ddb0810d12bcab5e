#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace msym {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q" or a plain integer, with an optional sign.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer floor(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact binary value of a finite double.
inline Rational exact_rational(double x) { return Rational(x); }

}  // namespace msym
