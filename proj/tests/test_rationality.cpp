#include <doctest.h>

#include <numeric>

#include "severi/rationality.hpp"

using namespace severi;

namespace {

const Window kRing = Window::polynomial_ring();

MultiSeries mono(int u, int q2, long c = 1) {
  return MultiSeries::monomial(kRing, exponents({{Var::u, u}, {Var::q2, q2}}), c);
}

Window q2_window(int d2) {
  Window w = Window::polynomial_ring();
  return w.set(Var::t, 0, 0).set(Var::q1, 0, 0).set(Var::q2, 0, d2);
}

}  // namespace

TEST_CASE("closed forms of R_0 and R_1") {
  const RationalFunction r0 = solve_Ra(0);
  CHECK(equivalent(r0, RationalFunction(mono(1, 0), mono(1, 0) - mono(0, 1))));
  // u / ((u - Q2)^2 - u^2 Q2) = u^{-1} / ((1 - Q2/u)^2 - Q2)
  const MultiSeries d = mono(1, 0) - mono(0, 1);
  const RationalFunction r1 = solve_Ra(1);
  CHECK(equivalent(r1, RationalFunction(mono(1, 0), d * d - mono(2, 1))));
  CHECK(equivalent(r1, RationalFunction(mono(-1, 0), (mono(0, 0) - mono(-1, 1)) * (mono(0, 0) - mono(-1, 1)) - mono(0, 1))));
  CHECK(resolvent_dimension(1) == 2);
}

TEST_CASE("expansions of the resolvent") {
  const MultiSeries e1 = solve_Ra(1).expand(q2_window(1));
  MultiSeries expected = mono(-1, 0) + mono(-2, 1, 2) + mono(-1, 1);
  CHECK(e1 == expected.restricted(q2_window(1)));
  const MultiSeries e0 = solve_Ra(0).expand(q2_window(6));
  for (int d2 = 0; d2 <= 6; ++d2) CHECK(e0.coefficient(exponents({{Var::q2, d2}, {Var::u, -d2}})) == 1);
  CHECK(e0.size() == 7);
}

TEST_CASE("pivot order does not change the rational function") {
  for (int a = 1; a <= 3; ++a) {
    std::vector<std::size_t> order(resolvent_dimension(a));
    std::iota(order.rbegin(), order.rend(), std::size_t{0});
    CHECK(solve_Ra(a, order) == solve_Ra(a));
    std::rotate(order.begin(), order.begin() + order.size() / 2, order.end());
    CHECK(solve_Ra(a, order) == solve_Ra(a));
  }
}

TEST_CASE("resolvent expansion matches the p1xp1 trace for a <= 3, d2 <= 3") {
  for (int a = 0; a <= 3; ++a) {
    const ConsistencyVerdict v = series_consistency(a, 3);
    for (const auto& m : v.mismatches) MESSAGE(m);
    CHECK_MESSAGE(v.pass, "a = " << a);
    CHECK(v.compared > 0);
  }
  const auto j = rational_function_to_json(solve_Ra(1));
  CHECK(j.contains("num"));
  CHECK(j.contains("den"));
}
