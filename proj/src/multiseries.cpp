#include "severi/multiseries.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "severi/errors.hpp"

namespace severi {

namespace {

constexpr std::array<const char*, kNumVars> kVarNames = {"t", "Q1", "Q2", "E", "Ehat", "u"};

void require_same_window(const MultiSeries& a, const MultiSeries& b, const char* op) {
  if (!(a.window() == b.window())) {
    throw ConfigurationError(std::string(op) + ": window mismatch " + a.window().to_string() +
                             " vs " + b.window().to_string());
  }
}

bool nonnegative_var(Var v) { return v == Var::t || v == Var::q1 || v == Var::q2; }

}  // namespace

const char* var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

Var parse_var(const std::string& name) {
  for (Var v : kAllVars) {
    if (name == var_name(v)) return v;
  }
  throw DomainError("unknown variable '" + name + "'");
}

Exponents exponents(std::initializer_list<std::pair<Var, int>> entries) {
  Exponents e{};
  for (const auto& [v, k] : entries) at(e, v) += k;
  return e;
}

Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents out;
  for (std::size_t i = 0; i < kNumVars; ++i) out[i] = a[i] + b[i];
  return out;
}

Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents out;
  for (std::size_t i = 0; i < kNumVars; ++i) out[i] = a[i] - b[i];
  return out;
}

Window Window::polynomial_ring() {
  Window w;
  for (Var v : kAllVars) w.set(v, nonnegative_var(v) ? 0 : -kUnbounded, kUnbounded);
  return w;
}

Window& Window::set(Var v, int lo, int hi) {
  if (lo > hi) {
    throw ConfigurationError(std::string("empty window for ") + var_name(v));
  }
  if (nonnegative_var(v) && lo < 0) {
    throw ConfigurationError(std::string("negative lower bound for ") + var_name(v));
  }
  if (lo < -kUnbounded || hi > kUnbounded) {
    throw ConfigurationError(std::string("window too large for ") + var_name(v));
  }
  bounds_[static_cast<std::size_t>(v)] = {lo, hi};
  return *this;
}

bool Window::contains(const Exponents& e) const noexcept {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (!bounds_[i].contains(e[i])) return false;
  }
  return true;
}

bool Window::covers(const Window& other) const noexcept {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (other.bounds_[i].lo < bounds_[i].lo || other.bounds_[i].hi > bounds_[i].hi) return false;
  }
  return true;
}

std::string Window::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (i) os << ", ";
    os << kVarNames[i] << ":[";
    const Bounds& b = bounds_[i];
    if (b.lo == -kUnbounded) os << "-inf"; else os << b.lo;
    os << ',';
    if (b.hi == kUnbounded) os << "inf"; else os << b.hi;
    os << ']';
  }
  os << '}';
  return os.str();
}

MultiSeries MultiSeries::constant(const Window& w, const Rational& c) {
  return monomial(w, Exponents{}, c);
}

MultiSeries MultiSeries::monomial(const Window& w, const Exponents& e, const Rational& c) {
  MultiSeries out(w);
  out.add_term(e, c);
  return out;
}

Rational MultiSeries::coefficient(const Exponents& e) const {
  if (!window_.contains(e)) {
    throw OutOfWindowError("coefficient requested outside window " + window_.to_string());
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiSeries::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiSeries::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0 || !window_.contains(e)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiSeries& MultiSeries::add_scaled(const MultiSeries& other, const Exponents& shift,
                                     const Rational& c) {
  if (sgn(c) == 0) return *this;
  Rational scaled;
  for (const auto& [e, v] : other.terms_) {
    scaled = v * c;
    add_term(e + shift, scaled);
  }
  return *this;
}

MultiSeries MultiSeries::restricted(const Window& w) const {
  MultiSeries out(w);
  for (const auto& [e, c] : terms_) {
    if (w.contains(e)) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& other) {
  require_same_window(*this, other, "add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& other) {
  require_same_window(*this, other, "subtract");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiSeries& MultiSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
MultiSeries operator-(MultiSeries a) { return a *= Rational(-1); }
MultiSeries operator*(MultiSeries a, const Rational& c) { return a *= c; }
MultiSeries operator*(const Rational& c, MultiSeries a) { return a *= c; }

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  require_same_window(a, b, "multiply");
  const Window& w = a.window();
  const int t_hi = w[Var::t].hi;
  MultiSeries out(w);
  Rational prod;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      // Terms are sorted by t first, so the rest of b only pushes t higher.
      if (at(ea, Var::t) + at(eb, Var::t) > t_hi) break;
      prod = ca * cb;
      out.add_term(ea + eb, prod);
    }
  }
  return out;
}

MultiSeries power(const MultiSeries& a, int n) {
  if (n < 0) throw DomainError("negative power of a series");
  MultiSeries out = MultiSeries::constant(a.window(), 1);
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

int termination_bound(const MultiSeries& a) {
  if (a.is_zero()) return 0;
  // Single-variable gradings first, then the one weighing Q1, Q2 double.
  std::vector<Exponents> gradings;
  for (Var v : {Var::t, Var::q1, Var::q2, Var::e, Var::ehat}) gradings.push_back(exponents({{v, 1}}));
  gradings.push_back(exponents({{Var::t, 1}, {Var::q1, 2}, {Var::q2, 2}, {Var::e, 1}, {Var::ehat, 1}}));

  const Window& w = a.window();
  for (const Exponents& g : gradings) {
    long long max_degree = 0;
    bool bounded = true;
    for (Var v : kAllVars) {
      if (at(g, v) == 0) continue;
      if (w[v].hi >= kUnbounded) bounded = false;
      max_degree += static_cast<long long>(at(g, v)) * w[v].hi;
    }
    if (!bounded) continue;
    long long min_degree = std::numeric_limits<long long>::max();
    for (const auto& [e, c] : a.terms()) {
      long long d = 0;
      for (std::size_t i = 0; i < kNumVars; ++i) d += static_cast<long long>(g[i]) * e[i];
      min_degree = std::min(min_degree, d);
    }
    if (min_degree >= 1) return static_cast<int>(std::max(0LL, max_degree / min_degree));
  }
  throw DomainError("series has no positive grading bounded by its window; expansion would not terminate");
}

MultiSeries series_exp(const MultiSeries& a) {
  if (sgn(a.constant_term()) != 0) throw DomainError("exp needs a zero constant term");
  const int k_max = termination_bound(a);
  MultiSeries out = MultiSeries::constant(a.window(), 1);
  MultiSeries term = out;
  for (int k = 1; k <= k_max; ++k) {
    term = term * a;
    term *= frac(1, k);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

MultiSeries series_log(const MultiSeries& a) {
  if (a.constant_term() != 1) throw DomainError("log needs constant term 1");
  MultiSeries x = a - MultiSeries::constant(a.window(), 1);
  const int k_max = termination_bound(x);
  MultiSeries out(a.window());
  MultiSeries power_k = MultiSeries::constant(a.window(), 1);
  for (int k = 1; k <= k_max; ++k) {
    power_k = power_k * x;
    if (power_k.is_zero()) break;
    out.add_scaled(power_k, Exponents{}, frac(k % 2 ? 1 : -1, k));
  }
  return out;
}

Exponents substitute_exponents(const Exponents& e, const SubstitutionRules& rules) {
  Exponents out{};
  for (Var v : kAllVars) {
    const int k = at(e, v);
    if (k == 0) continue;
    auto it = rules.find(v);
    if (it == rules.end()) {
      at(out, v) += k;
    } else {
      for (std::size_t i = 0; i < kNumVars; ++i) out[i] += k * it->second[i];
    }
  }
  return out;
}

Window image_window(const Window& source, const SubstitutionRules& rules) {
  std::array<long long, kNumVars> lo{}, hi{};
  for (Var v : kAllVars) {
    Exponents image = exponents({{v, 1}});
    if (auto it = rules.find(v); it != rules.end()) image = it->second;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      const long long a = static_cast<long long>(image[i]) * source[v].lo;
      const long long b = static_cast<long long>(image[i]) * source[v].hi;
      lo[i] += std::min(a, b);
      hi[i] += std::max(a, b);
    }
  }
  Window out;
  for (Var v : kAllVars) {
    const std::size_t i = static_cast<std::size_t>(v);
    long long l = std::max<long long>(lo[i], -kUnbounded);
    long long h = std::min<long long>(hi[i], kUnbounded);
    if (nonnegative_var(v)) l = std::max<long long>(l, 0);
    out.set(v, static_cast<int>(l), static_cast<int>(std::max(l, h)));
  }
  return out;
}

MultiSeries monomial_substitute(const MultiSeries& a, const SubstitutionRules& rules,
                                const Window& target) {
  MultiSeries out(target);
  for (const auto& [e, c] : a.terms()) {
    const Exponents image = substitute_exponents(e, rules);
    if (!target.contains(image)) {
      throw OutOfWindowError("substituted monomial falls outside target window " + target.to_string());
    }
    out.add_term(image, c);
  }
  return out;
}

MultiSeries exact_divide(const MultiSeries& num, const MultiSeries& den) {
  if (den.is_zero()) throw DomainError("division by zero polynomial");
  auto nonnegative = [](const MultiSeries& s) {
    for (const auto& [e, c] : s.terms()) {
      for (int k : e) {
        if (k < 0) return false;
      }
    }
    return true;
  };
  if (!nonnegative(num) || !nonnegative(den)) {
    throw DomainError("exact_divide needs polynomials with nonnegative exponents");
  }
  const auto& [lead_e, lead_c] = *den.terms().rbegin();
  MultiSeries rem = num;
  MultiSeries quotient(num.window());
  // The leading term of the remainder strictly decreases in a well-order.
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    const Exponents shift = re - lead_e;
    for (int k : shift) {
      if (k < 0) throw IntegrityError("inexact polynomial division");
    }
    const Rational q = rc / lead_c;
    quotient.add_term(shift, q);
    rem.add_scaled(den, shift, -q);
  }
  return quotient;
}

std::string to_string(const MultiSeries& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      os << '*' << kVarNames[i];
      if (e[i] != 1) os << '^' << e[i];
    }
  }
  return os.str();
}

}  // namespace severi
