#pragma once

#include <string>

#include "severi/multiseries.hpp"

namespace severi {

// Quotient of two Laurent polynomials, kept in a canonical form: common
// monomial content removed, negative exponents cleared, and the lowest term of
// the denominator (canonical order) scaled to 1. No polynomial gcd is taken,
// so two forms of the same function are compared with `equivalent`.
class RationalFunction {
 public:
  RationalFunction(MultiSeries numerator, MultiSeries denominator);

  const MultiSeries& numerator() const noexcept { return num_; }
  const MultiSeries& denominator() const noexcept { return den_; }

  // Expansion as a power series in Q2 (other variables untruncated while
  // expanding), restricted to `w` at the end. The Q2-free part of the
  // denominator must be a single monomial.
  MultiSeries expand(const Window& w) const;

  std::string to_string() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  MultiSeries num_;
  MultiSeries den_;
};

// a.num * b.den == b.num * a.den
bool equivalent(const RationalFunction& a, const RationalFunction& b);

}  // namespace severi
