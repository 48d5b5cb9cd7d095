#include "severi/rationality.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "severi/errors.hpp"
#include "severi/genfun.hpp"
#include "severi/operators.hpp"
#include "severi/serialize.hpp"

namespace severi {

namespace {

const Window kRing = Window::polynomial_ring();

std::size_t state_index(const std::vector<BasisState>& basis, const BasisState& s) {
  const auto it = std::find(basis.begin(), basis.end(), s);
  if (it == basis.end()) throw IntegrityError("state " + s.to_string() + " missing from its energy block");
  return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

std::size_t resolvent_dimension(int a) { return energy_basis(LabelSet::severi(), a).size(); }

RationalFunction solve_Ra(int a, const std::vector<std::size_t>& row_order) {
  if (a < 0) throw DomainError("negative a");
  const EnergyBlockMatrix& block = block_matrix(ns_operator(), a);
  const std::size_t n = block.basis.size();
  const MultiSeries u = MultiSeries::monomial(kRing, exponents({{Var::u, 1}}));

  SquareMatrix m(n, kRing);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiSeries entry = -(u * block.matrix(i, j));
      if (i == j) entry += u;
      for (const auto& [e, c] : entry.terms())
        if (at(e, Var::u) < 0) throw IntegrityError("u (1 - N_S) has a negative u-power");
      m(i, j) = entry;
    }

  const BasisState ket{Partition::ones(a), {}};
  const BasisState partner{{}, Partition::ones(a)};
  const std::size_t rhs = state_index(block.basis, ket);
  const std::size_t col = state_index(block.basis, partner);

  const MultiSeries den = determinant_bareiss(m, row_order);
  if (den.is_zero()) throw IntegrityError("1 - N_S is singular at energy " + std::to_string(a));
  SquareMatrix replaced = m;
  for (std::size_t i = 0; i < n; ++i) replaced(i, col) = i == rhs ? u : MultiSeries(kRing);
  const MultiSeries cofactor = determinant_bareiss(replaced, row_order);

  const auto pairing = basis_pairing(ket, partner, LabelSet::severi());
  MultiSeries num(kRing);
  num.add_scaled(cofactor, exponents({{Var::u, pairing->u_power}}), pairing->coefficient);
  return RationalFunction(num, den);
}

ConsistencyVerdict series_consistency(int a, int d2_max) {
  if (a < 0 || d2_max < 0) throw DomainError("negative degree");
  ConsistencyVerdict v{a, d2_max, true, 0, {}};

  Window expand_window = Window::polynomial_ring();
  expand_window.set(Var::t, 0, 0).set(Var::q1, 0, 0).set(Var::q2, 0, d2_max);
  const MultiSeries series = solve_Ra(a).expand(expand_window);

  // largest point count at d1 = a is 2a + 2 d2 + (a-1)(d2-1) - 1 = a (d2+1) + d2
  const int t_order = a * (d2_max + 1) + d2_max;
  const InvariantTable table = extract_invariants(z_p1xp1(p1xp1_window(a, d2_max, t_order)), Surface::p1xp1);

  std::map<std::pair<int, int>, std::pair<Rational, Rational>> both;  // (d2, g) -> (resolvent, pipeline)
  for (const auto& [e, c] : series.terms()) both[{at(e, Var::q2), at(e, Var::u) + 1}].first = c;
  for (const auto& r : table.rows)
    if (r.degree[0] == a) both[{r.degree[1], r.g}].second = r.value;
  if (a == 0) both[{0, 1}].second = 1;  // the empty curve: constant term of Z
  for (const auto& [key, values] : both) {
    ++v.compared;
    if (values.first == values.second) continue;
    v.pass = false;
    std::ostringstream msg;
    msg << "g=" << key.second << " (" << a << "," << key.first << "): resolvent " << to_string(values.first)
        << ", series " << to_string(values.second);
    v.mismatches.push_back(msg.str());
  }
  return v;
}

nlohmann::json rational_function_to_json(const RationalFunction& r) {
  return {{"num", series_to_json(r.numerator()).at("terms")},
          {"den", series_to_json(r.denominator()).at("terms")},
          {"variables", series_to_json(r.numerator()).at("variables")},
          {"text", r.to_string()}};
}

nlohmann::json verdict_to_json(const ConsistencyVerdict& v) {
  return {{"a", v.a}, {"d2_max", v.d2_max}, {"pass", v.pass}, {"compared", v.compared}, {"mismatches", v.mismatches}};
}

}  // namespace severi
