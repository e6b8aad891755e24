#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace percsym {

// Exact probabilities. gmpxx keeps results of arithmetic in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "num/den", "int", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Always "num/den" with a positive denominator, e.g. "1/1", "-7/16".
std::string to_string(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

BigInt binomial(unsigned n, unsigned k);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace percsym
