#include <doctest.h>

#include <fstream>

#include "severi/errors.hpp"
#include "severi/genfun.hpp"
#include "severi/parallel.hpp"

using namespace severi;

namespace {

Rational coeff(const MultiSeries& s, std::initializer_list<std::pair<Var, int>> e) {
  return s.coefficient(exponents(e));
}

Rational row(const InvariantTable& t, int g, std::vector<int> degree) {
  return t.find(g, degree).value_or(Rational(0));
}

// p(0..20)
const std::vector<int> kPartitionCounts = {1,  1,  2,  3,   5,   7,   11,  15,  22,  30, 42,
                                           56, 77, 101, 135, 176, 231, 297, 385, 490, 627};

nlohmann::json load_fixtures() {
  std::ifstream in(std::string(SEVERI_FIXTURE_DIR) + "/oracle_fixtures.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("p1xp1 small coefficients") {
  const MultiSeries z = z_p1xp1(p1xp1_window(1, 1, 3));
  CHECK(coeff(z, {}) == 1);
  CHECK(coeff(z, {{Var::t, 1}, {Var::q1, 1}, {Var::u, -1}}) == 1);
  const InvariantTable t = extract_invariants(z, Surface::p1xp1);
  CHECK(row(t, 0, {1, 0}) == 1);
  CHECK(row(t, 0, {0, 1}) == 1);
  CHECK(row(t, -1, {1, 1}) == 2);
  CHECK(row(t, 0, {1, 1}) == 1);
  for (const auto& r : t.rows) CHECK(r.n == 2 * r.degree[0] + 2 * r.degree[1] + r.g - 1);
}

TEST_CASE("insufficient u-window is rejected") {
  Window w = p1xp1_window(2, 1, 4);
  w.set(Var::u, -3, 4);
  CHECK_THROWS_AS(z_p1xp1(w), ConfigurationError);
  Window h = hurwitz_window(2, 4);
  h.set(Var::u, 0, 2);
  CHECK_THROWS_AS(z_hurwitz_p1(h), ConfigurationError);
  CHECK_THROWS_AS(z_p1xp1(Window::polynomial_ring()), ConfigurationError);
}

TEST_CASE("purity for d1 + d2 <= 3, n <= 6") {
  const MultiSeries z = z_p1xp1(p1xp1_window(3, 3, 6));
  InvariantTable t;
  REQUIRE_NOTHROW(t = extract_invariants(z, Surface::p1xp1));
  int checked = 0;
  for (const auto& [e, c] : z.terms()) {
    const int d1 = at(e, Var::q1), d2 = at(e, Var::q2), n = at(e, Var::t);
    if (d1 + d2 > 3) continue;
    CHECK(at(e, Var::u) == n - 2 * d1 - 2 * d2);
    ++checked;
  }
  CHECK(checked >= 15);
}

TEST_CASE("impure series raise integrity errors") {
  const Window w = p1xp1_window(1, 0, 2);
  MultiSeries bad = MultiSeries::monomial(w, exponents({{Var::t, 1}, {Var::q1, 1}, {Var::u, -1}}));
  bad.add_term(exponents({{Var::t, 1}, {Var::q1, 1}, {Var::u, 0}}), 1);
  CHECK_THROWS_AS(extract_invariants(bad, Surface::p1xp1), IntegrityError);
  CHECK(extract_invariants(MultiSeries(w), Surface::p1xp1).rows.empty());
}

TEST_CASE("prefactor identity: e^{tQ2/u} exp(t M_S) against exp(t N_S)") {
  for (int t = 0; t <= 5; ++t) {
    const Window w = p1xp1_window(2, 2, t);
    CHECK(z_p1xp1(w) == z_p1xp1_via_ns(w));
  }
}

TEST_CASE("(v, v) caps reproduce p1xp1") {
  const Window w = p1xp1_window(2, 2, 5);
  CHECK(z_blowup(w, Cap::v, Cap::v) == z_p1xp1(w));
}

TEST_CASE("ruling symmetry of disconnected invariants") {
  const InvariantTable t = extract_invariants(z_p1xp1(p1xp1_window(3, 3, 8)), Surface::p1xp1);
  int compared = 0;
  for (const auto& r : t.rows) {
    if (r.degree[0] + r.degree[1] > 3) continue;
    const auto mirror = t.find(r.g, {r.degree[1], r.degree[0]});
    REQUIRE(mirror.has_value());
    CHECK(*mirror == r.value);
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("Hurwitz series on P1") {
  const MultiSeries z = z_hurwitz_p1(hurwitz_window(3, 4));
  CHECK(coeff(z, {{Var::q1, 1}, {Var::u, -1}}) == 1);
  // H = 1/2 is 2! times this
  CHECK(coeff(z, {{Var::q1, 2}, {Var::t, 2}, {Var::u, -1}}) == frac(1, 4));
  const InvariantTable t = extract_invariants(z, Surface::hurwitz);
  CHECK(row(t, 0, {1}) == 1);
  CHECK(row(t, 0, {2}) == frac(1, 2));
  for (const auto& r : t.rows) CHECK(r.n == 2 * r.degree[0] + 2 * r.g - 2);
}

TEST_CASE("elliptic trace: u^0 part counts partitions") {
  const MultiSeries z = z_hurwitz_elliptic(elliptic_window(4, 4));
  for (int t = 0; t <= 4; t += 2) {
    // only t^0 survives at u^0
    CHECK(coeff(z, {{Var::q1, 4}, {Var::t, t}}) == (t == 0 ? 5 : 0));
  }
  const MultiSeries g1 = elliptic_genus1_trace(20, 4);
  MultiSeries expected(g1.window());
  for (int s = 0; s <= 20; ++s) expected.add_term(exponents({{Var::q1, s}}), kPartitionCounts[s]);
  CHECK(g1 == expected);
}

TEST_CASE("E x P1 trace") {
  const Window w = exp1_window(3, 4, 4);
  const MultiSeries z = z_exp1(w);
  // the energy-0 block is the prefactor alone
  MultiSeries q10(w);
  for (const auto& [e, c] : z.terms())
    if (at(e, Var::q1) == 0) q10.add_term(e, c);
  const MultiSeries pref = series_exp(MultiSeries::monomial(w, exponents({{Var::t, 1}, {Var::q2, 1}, {Var::u, -1}})));
  CHECK(q10 == pref);

  const MultiSeries g1 = exp1_genus1_trace(4, 4);
  CHECK(coeff(g1, {{Var::q1, 2}, {Var::t, 2}, {Var::q2, 1}}) == 8);
  CHECK(coeff(g1, {{Var::q1, 2}, {Var::t, 2}}) == 0);
  for (int s = 0; s <= 4; ++s) {
    int pairs = 0;
    for (int k = 0; k <= s; ++k) pairs += kPartitionCounts[k] * kPartitionCounts[s - k];
    CHECK(coeff(g1, {{Var::q1, s}}) == pairs);
  }
  CHECK(extract_invariants(z, Surface::exp1).rows.size() > 0);
}

TEST_CASE("cap vectors") {
  Window w = blowup_window(3, 1, 2, {-4, 2}, {0, 0});
  const BoundaryVector bw = build_w(w, Var::e);
  CHECK(bw.kind == Cap::w);
  const auto raw = [&](const char* state) { return bw.raw.component(BasisState::parse(state)); };
  CHECK(raw("((1)|(2))") == MultiSeries::monomial(w, exponents({{Var::e, -2}}), frac(-1, 2)));
  CHECK(raw("(()|(1,1))") == MultiSeries::monomial(w, exponents({{Var::e, -2}})));
  CHECK(raw("(()|(3))") == MultiSeries::monomial(w, exponents({{Var::e, -3}}), frac(1, 3)));
  CHECK(raw("((1,1,1)|())") == MultiSeries::constant(w, 1));
  CHECK(bw.prefactor.constant_term() == 1);
  CHECK(coeff(bw.prefactor, {{Var::e, 1}, {Var::u, -1}}) == 1);
  CHECK(coeff(bw.prefactor, {{Var::q2, 1}, {Var::e, -1}, {Var::u, -1}}) == 1);
  CHECK(coeff(bw.prefactor, {{Var::q2, 1}, {Var::u, -2}}) == 1);

  Window narrow = w;
  narrow.set(Var::e, -2, 2);
  CHECK_THROWS_AS(build_w(narrow, Var::e), ConfigurationError);

  const BoundaryVector v = build_v(w);
  CHECK(v.raw.components().size() == 4);
  CHECK(v.expansion() == v.raw);
}

TEST_CASE("blow-up matrix elements") {
  const Window w = blowup_window(2, 2, 4, {-2, 2}, {-2, 2});
  const MultiSeries z = z_blowup(w, Cap::w, Cap::w_hat);
  CHECK(z.constant_term() == 1);
  CHECK_NOTHROW(extract_invariants(z, Surface::blowup));
  CHECK_THROWS_AS(z_blowup(w, Cap::w_hat, Cap::w_hat), ConfigurationError);
}

TEST_CASE("P2 anchors and connected invariants") {
  const MultiSeries z = z_bl1_for_p2(3, 9);
  // Bl2(P2) at F1 = F2 = 0
  const MultiSeries zbl2 = p2_slice(z);
  CHECK(coeff(zbl2, {{Var::u, -2}, {Var::q1, 2}, {Var::t, 4}}) == frac(5, 24));
  const MultiSeries y = connected_series(z);
  const MultiSeries zp2 = series_exp(p2_slice(y));
  CHECK(coeff(zp2, {{Var::u, -2}, {Var::q1, 2}, {Var::t, 4}}) == frac(3, 24));

  const InvariantTable t = p2_reduce(y, 3, 0, 1);
  CHECK(row(t, 0, {1}) == 1);
  CHECK(row(t, 0, {2}) == 1);
  CHECK(row(t, 0, {3}) == 12);
  CHECK(row(t, 1, {3}) == 1);
  for (const auto& r : t.rows) CHECK(r.n == 3 * r.degree[0] + r.g - 1);

  const nlohmann::json fixtures = load_fixtures();
  int matched = 0;
  for (const auto& r : fixtures.at("p2_connected")) {
    const int g = r.at("g"), d = r.at("d");
    if (d > 3 || g > 1) continue;
    CHECK(row(t, g, {d}) == parse_rational(r.at("value").get<std::string>()));
    ++matched;
  }
  CHECK(matched >= 4);
  CHECK_THROWS_AS(p2_reduce(y, 3, 0, 2), OutOfWindowError);
  CHECK_THROWS_AS(p2_reduce(y, 4, 0, 0), OutOfWindowError);
}

TEST_CASE("connected series") {
  const Window w = p1xp1_window(1, 1, 3);
  CHECK(connected_series(MultiSeries::constant(w, 1)).is_zero());
  const InvariantTable t = extract_invariants(connected_series(z_p1xp1(w)), Surface::p1xp1, true);
  CHECK(row(t, 0, {1, 1}) == 1);
  CHECK_FALSE(t.find(-1, {1, 1}).has_value());
}

TEST_CASE("thread count does not change results") {
  const Window w = p1xp1_window(3, 2, 6);
  set_thread_count(1);
  const MultiSeries a = z_p1xp1(w);
  set_thread_count(3);
  const MultiSeries b = z_p1xp1(w);
  set_thread_count(1);
  CHECK(a == b);
}

TEST_CASE("tables round-trip through JSON and CSV") {
  const InvariantTable t = extract_invariants(z_p1xp1(p1xp1_window(2, 1, 4)), Surface::p1xp1);
  CHECK(table_from_json(nlohmann::json::parse(table_to_json(t).dump())) == t);
  CHECK(table_from_csv(table_to_csv(t)) == t);
  CHECK_THROWS_AS(table_from_csv("g,degree,n,value\n1,2\n"), IntegrityError);
}
