#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace severi {

using Rational = mpq_class;
using Integer = mpz_class;

// mpq_class(p, q) does not reduce; always build fractions through this.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Canonical "p/q" text, "p" when q == 1.
std::string to_string(const Rational& value);

// Accepts "p" or "p/q" with optional sign; throws DomainError otherwise.
Rational parse_rational(std::string_view text);

Integer factorial(int n);

}  // namespace severi
