#include "severi/spectra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "severi/errors.hpp"
#include "severi/fock.hpp"
#include "severi/partitions.hpp"
#include "severi/serialize.hpp"

namespace severi {

namespace {

const Window kRing = Window::polynomial_ring();

MultiSeries constant(const Rational& c) { return MultiSeries::constant(kRing, c); }

MultiSeries q_power(int k, const Rational& c = 1) {
  return MultiSeries::monomial(kRing, exponents({{Var::q2, k}}), c);
}

CharPoly poly(std::vector<MultiSeries> c) { return CharPoly{std::move(c)}; }

// x^2 - k^2 Q
CharPoly quadratic(int k) { return poly({q_power(1, -k * k), MultiSeries(kRing), constant(1)}); }

CharPoly x_factor() { return poly({MultiSeries(kRing), constant(1)}); }

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix t(a.size(), a.window());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace

CharPoly operator*(const CharPoly& a, const CharPoly& b) {
  CharPoly out{std::vector<MultiSeries>(a.coefficients.size() + b.coefficients.size() - 1, MultiSeries(kRing))};
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coefficients.size(); ++j)
      if (!b.coefficients[j].is_zero()) out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
  }
  return out;
}

std::string to_string(const CharPoly& p) {
  std::ostringstream out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const MultiSeries& c = p.coefficients[k];
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << '(' << to_string(c) << ')';
    if (k > 0) out << "*x^" << k;
  }
  return first ? "0" : out.str();
}

nlohmann::json charpoly_to_json(const CharPoly& p) {
  nlohmann::json coefficients = nlohmann::json::array();
  for (int k = p.degree(); k >= 0; --k) {
    if (p.coefficients[k].is_zero()) continue;
    coefficients.push_back({{"power", k}, {"terms", series_to_json(p.coefficients[k]).at("terms")}});
  }
  return {{"variable", "x"}, {"text", to_string(p)}, {"coefficients", coefficients}};
}

// v holds the coefficients of the leading r x r block's polynomial, highest
// degree first. The next one is T v with T lower-triangular Toeplitz on
// (1, -a_rr, -R C, -R S C, ..., -R S^{r-1} C).
CharPoly charpoly_berkowitz(const SquareMatrix& a) {
  const std::size_t n = a.size();
  const Window& w = a.window();
  std::vector<MultiSeries> v = {MultiSeries::constant(w, 1)};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<MultiSeries> t(r + 2, MultiSeries(w));
    t[0] = MultiSeries::constant(w, 1);
    t[1] = -a(r, r);
    std::vector<MultiSeries> col(r, MultiSeries(w));
    for (std::size_t i = 0; i < r; ++i) col[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      MultiSeries rc(w);
      for (std::size_t i = 0; i < r; ++i)
        if (!a(r, i).is_zero() && !col[i].is_zero()) rc += a(r, i) * col[i];
      t[k + 2] = -rc;
      if (k + 1 == r) break;
      std::vector<MultiSeries> next(r, MultiSeries(w));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (!a(i, j).is_zero() && !col[j].is_zero()) next[i] += a(i, j) * col[j];
      col = std::move(next);
    }
    std::vector<MultiSeries> nv(r + 2, MultiSeries(w));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j)
        if (!t[i - j].is_zero() && !v[j].is_zero()) nv[i] += t[i - j] * v[j];
    v = std::move(nv);
  }
  std::reverse(v.begin(), v.end());
  return CharPoly{std::move(v)};
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const SquareMatrix& a) {
  const std::size_t n = a.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    index[i] = low[i] = counter++;
    stack.push_back(i);
    on_stack[i] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_zero()) continue;
      if (index[j] < 0) {
        visit(j);
        low[i] = std::min(low[i], low[j]);
      } else if (on_stack[j]) {
        low[i] = std::min(low[i], index[j]);
      }
    }
    if (low[i] != index[i]) return;
    std::vector<std::size_t> component;
    std::size_t j;
    do {
      j = stack.back();
      stack.pop_back();
      on_stack[j] = false;
      component.push_back(j);
    } while (j != i);
    std::sort(component.begin(), component.end());
    out.push_back(std::move(component));
  };
  for (std::size_t i = 0; i < n; ++i)
    if (index[i] < 0) visit(i);
  return out;
}

CharPoly charpoly(const SquareMatrix& a) {
  CharPoly out = poly({MultiSeries::constant(a.window(), 1)});
  for (const auto& component : strongly_connected_components(a))
    out = out * charpoly_berkowitz(a.principal_submatrix(component));
  return out;
}

SquareMatrix u_zero_part(const SquareMatrix& a) {
  SquareMatrix out(a.size(), kRing);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (const auto& [e, c] : a(i, j).terms())
        if (at(e, Var::u) == 0) out(i, j).add_term(e, c);
  return out;
}

TridiagonalAn build_An(int n) {
  if (n < 1) throw DomainError("A_n needs n >= 1");
  SquareMatrix m(n + 1, kRing);
  for (int i = 0; i < n; ++i) {
    m(i, i + 1) = constant(n - i);
    m(i + 1, i) = q_power(1, i + 1);
  }
  return {n, m};
}

CharPoly prop2_target(int n) {
  CharPoly out = poly({constant(1)});
  for (int k = n; k > 0; k -= 2) out = out * quadratic(k);
  if (n % 2 == 0) out = out * x_factor();
  return out;
}

CharPoly prop1_target(int s) {
  CharPoly out = poly({constant(1)});
  for (const auto& [mu, nu] : enumerate_pairs(s)) {
    const int k = mu.size() - nu.size();
    if (k == 0) out = out * x_factor();
    else if (k > 0) out = out * quadratic(k);  // (nu, mu) supplies -k
  }
  return out;
}

SpectrumCertificate verify_prop1(int s) {
  if (s < 0) throw DomainError("negative energy");
  const SquareMatrix m = u_zero_part(block_matrix(ms_operator(), s).matrix);
  SpectrumCertificate c{"prop1", s, prop1_target(s), charpoly(m), false};
  c.pass = c.claimed == c.computed;
  return c;
}

SpectrumCertificate verify_prop2(int n) {
  SpectrumCertificate c{"prop2", n, prop2_target(n), charpoly(build_An(n).matrix), false};
  c.pass = c.claimed == c.computed;
  return c;
}

nlohmann::json certificate_to_json(const SpectrumCertificate& c) {
  return {{"kind", c.kind},
          {"index", c.index},
          {"claimed", charpoly_to_json(c.claimed)},
          {"computed", charpoly_to_json(c.computed)},
          {"pass", c.pass}};
}

BlockCertificate nilpotency_certificate(int s) {
  const SquareMatrix m = u_zero_part(block_matrix(mh_operator(), s).matrix);
  SquareMatrix p = m;
  std::size_t k = 1;
  while (!p.is_zero() && k <= m.size()) {
    p = p * m;
    ++k;
  }
  const bool pass = p.is_zero();
  return {"nilpotency", s, pass, pass ? "M_H(0)^" + std::to_string(k) + " = 0" : "no vanishing power up to the block size"};
}

BlockCertificate commutator_certificate(int s, FourthSumSign sign) {
  const SquareMatrix& a = block_matrix(ms_operator(), s).matrix;
  const SquareMatrix& b = block_matrix(mf_operator(sign), s).matrix;
  const SquareMatrix c = a * b - b * a;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) nonzero += !c(i, j).is_zero();
  return {"commutator", s, nonzero == 0, std::to_string(nonzero) + " nonzero entries of [M_S, M_F]"};
}

BlockCertificate self_adjoint_certificate(const GradedOperator& op, int s) {
  const EnergyBlockMatrix& block = block_matrix(op, s);
  const std::size_t n = block.basis.size();
  SquareMatrix gram(n, kRing);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (const auto p = basis_pairing(block.basis[i], block.basis[j], op.labels()))
        gram(i, j) = MultiSeries::monomial(kRing, exponents({{Var::u, p->u_power}}), p->coefficient);
  const bool pass = gram * block.matrix == transpose(block.matrix) * gram;
  return {"self_adjoint", s, pass, op.name() + " on " + std::to_string(n) + " states"};
}

nlohmann::json certificate_to_json(const BlockCertificate& c) {
  return {{"kind", c.kind}, {"energy", c.energy}, {"pass", c.pass}, {"detail", c.detail}};
}

MultiSeries pure_genus1_closed_form(int s_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max).set(Var::q2, 0, t_order);
  MultiSeries out(w);
  for (int s = 0; s <= s_max; ++s) {
    const auto pairs = enumerate_pairs(s);
    for (int k = 0; k <= t_order; ++k) {
      Integer power_sum = 0;
      for (const auto& [mu, nu] : pairs) {
        Integer d = mu.size() - nu.size(), p = 1;
        for (int i = 0; i < k; ++i) p *= d;
        power_sum += p;
      }
      if (k % 2 == 1) {
        if (power_sum != 0)
          throw IntegrityError("odd power of sqrt(Q2) survives at Q1^" + std::to_string(s) + " t^" + std::to_string(k));
        continue;
      }
      out.add_term(exponents({{Var::t, k}, {Var::q1, s}, {Var::q2, k / 2}}), Rational(power_sum) / Rational(factorial(k)));
    }
  }
  return out;
}

MultiSeries elliptic_genus1_closed_form(int s_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max);
  MultiSeries out(w);
  for (int s = 0; s <= s_max; ++s)
    out.add_term(exponents({{Var::q1, s}}), static_cast<long>(enumerate_partitions(s).size()));
  return out;
}

}  // namespace severi
