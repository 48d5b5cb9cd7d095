#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "severi/rational.hpp"

namespace severi {

// Array order doubles as the canonical term order (lexicographic on exponents).
enum class Var : std::size_t { t = 0, q1, q2, e, ehat, u };

inline constexpr std::size_t kNumVars = 6;
inline constexpr std::array<Var, kNumVars> kAllVars = {Var::t, Var::q1, Var::q2,
                                                       Var::e, Var::ehat, Var::u};

// Stand-in for an absent bound; small enough that sums of two never overflow.
inline constexpr int kUnbounded = 1 << 24;

using Exponents = std::array<int, kNumVars>;

const char* var_name(Var v);
Var parse_var(const std::string& name);

inline int& at(Exponents& e, Var v) { return e[static_cast<std::size_t>(v)]; }
inline int at(const Exponents& e, Var v) { return e[static_cast<std::size_t>(v)]; }

Exponents exponents(std::initializer_list<std::pair<Var, int>> entries);
Exponents operator+(const Exponents& a, const Exponents& b);
Exponents operator-(const Exponents& a, const Exponents& b);

struct Bounds {
  int lo = 0;
  int hi = 0;

  bool contains(int x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

// Per-variable inclusive exponent bounds. t, Q1, Q2 never go negative.
class Window {
 public:
  Window() = default;  // every variable pinned to exponent 0

  static Window polynomial_ring();

  Window& set(Var v, int lo, int hi);
  const Bounds& operator[](Var v) const { return bounds_[static_cast<std::size_t>(v)]; }

  bool contains(const Exponents& e) const noexcept;
  bool covers(const Window& other) const noexcept;
  std::string to_string() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::array<Bounds, kNumVars> bounds_{};
};

class MultiSeries {
 public:
  using Terms = std::map<Exponents, Rational>;

  MultiSeries() : MultiSeries(Window::polynomial_ring()) {}
  explicit MultiSeries(Window window) : window_(window) {}

  static MultiSeries constant(const Window& w, const Rational& c);
  static MultiSeries monomial(const Window& w, const Exponents& e, const Rational& c = 1);

  const Window& window() const noexcept { return window_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  // Throws OutOfWindowError for exponents the window cannot answer for.
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;

  // Accumulates a term; terms outside the window are truncated away.
  void add_term(const Exponents& e, const Rational& c);

  // this += c * x^shift * other, truncated to this window.
  MultiSeries& add_scaled(const MultiSeries& other, const Exponents& shift, const Rational& c);

  // Same terms re-expressed in another window, dropping those outside it.
  MultiSeries restricted(const Window& w) const;

  MultiSeries& operator+=(const MultiSeries& other);
  MultiSeries& operator-=(const MultiSeries& other);
  MultiSeries& operator*=(const Rational& c);

  friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
    return a.window_ == b.window_ && a.terms_ == b.terms_;
  }

 private:
  Window window_;
  Terms terms_;
};

MultiSeries operator+(MultiSeries a, const MultiSeries& b);
MultiSeries operator-(MultiSeries a, const MultiSeries& b);
MultiSeries operator-(MultiSeries a);
MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
MultiSeries operator*(MultiSeries a, const Rational& c);
MultiSeries operator*(const Rational& c, MultiSeries a);

MultiSeries power(const MultiSeries& a, int n);

// Largest k for which a^k can still have a term inside the window, found from
// a positive grading of the monomials of a. Throws DomainError if none exists.
int termination_bound(const MultiSeries& a);

MultiSeries series_exp(const MultiSeries& a);  // requires zero constant term
MultiSeries series_log(const MultiSeries& a);  // requires constant term 1

// Each variable v maps to the monomial x^{rules[v]}; absent variables map to themselves.
using SubstitutionRules = std::map<Var, Exponents>;

Exponents substitute_exponents(const Exponents& e, const SubstitutionRules& rules);
Window image_window(const Window& source, const SubstitutionRules& rules);
MultiSeries monomial_substitute(const MultiSeries& a, const SubstitutionRules& rules,
                                const Window& target);

// Exact quotient of polynomials with nonnegative exponents. A nonzero remainder
// throws IntegrityError.
MultiSeries exact_divide(const MultiSeries& num, const MultiSeries& den);

std::string to_string(const MultiSeries& a);

}  // namespace severi
