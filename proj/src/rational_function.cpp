#include "severi/rational_function.hpp"

#include <algorithm>
#include <limits>

#include "severi/errors.hpp"

namespace severi {

RationalFunction::RationalFunction(MultiSeries numerator, MultiSeries denominator) {
  const Window ring = Window::polynomial_ring();
  num_ = numerator.restricted(ring);
  den_ = denominator.restricted(ring);
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiSeries::constant(ring, 1);
    return;
  }

  Exponents lowest;
  lowest.fill(std::numeric_limits<int>::max());
  for (const MultiSeries* part : {&num_, &den_}) {
    for (const auto& [e, c] : part->terms()) {
      for (std::size_t i = 0; i < kNumVars; ++i) lowest[i] = std::min(lowest[i], e[i]);
    }
  }
  const Exponents shift = Exponents{} - lowest;
  const Rational scale = 1 / den_.terms().begin()->second;
  MultiSeries n(ring), d(ring);
  n.add_scaled(num_, shift, scale);
  d.add_scaled(den_, shift, scale);
  num_ = std::move(n);
  den_ = std::move(d);
}

MultiSeries RationalFunction::expand(const Window& w) const {
  if (w[Var::q2].hi >= kUnbounded) throw ConfigurationError("expansion needs a bounded Q2 window");
  const auto& [lead_e, lead_c] = *den_.terms().begin();
  for (Var v : {Var::t, Var::q1, Var::q2}) {
    if (at(lead_e, v) != 0) throw DomainError("denominator has no unit-like lowest term");
  }

  Window work = Window::polynomial_ring();
  work.set(Var::q2, 0, w[Var::q2].hi);

  // den = c x^a (1 + r); every monomial of r must carry Q2.
  MultiSeries r(work);
  for (const auto& [e, c] : den_.terms()) {
    if (e == lead_e) continue;
    if (at(e, Var::q2) == 0) {
      throw DomainError("denominator is not invertible as a power series in Q2");
    }
    r.add_term(e - lead_e, c / lead_c);
  }

  MultiSeries inverse = MultiSeries::constant(work, 1);
  MultiSeries term = inverse;
  const MultiSeries minus_r = -r;
  for (int k = 1; k <= w[Var::q2].hi; ++k) {
    term = term * minus_r;
    if (term.is_zero()) break;
    inverse += term;
  }

  MultiSeries out(work);
  for (const auto& [e, c] : num_.terms()) out.add_scaled(inverse, e - lead_e, c / lead_c);
  return out.restricted(w);
}

std::string RationalFunction::to_string() const {
  return "(" + severi::to_string(num_) + ") / (" + severi::to_string(den_) + ")";
}

bool equivalent(const RationalFunction& a, const RationalFunction& b) {
  return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

}  // namespace severi
