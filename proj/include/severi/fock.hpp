#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "severi/multiseries.hpp"
#include "severi/partitions.hpp"

namespace severi {

enum class Label { unit = 0, point = 1 };

const char* label_name(Label a);

// Labels with the pairing g of [alpha_k[a], alpha_l[b]] = k delta_{k+l,0} g_ab.
class LabelSet {
 public:
  static LabelSet hurwitz();  // one label, g = (1)
  static LabelSet severi();   // {unit, point}, g off-diagonal

  int label_count() const noexcept { return count_; }
  bool single_label() const noexcept { return count_ == 1; }
  int pairing(Label a, Label b) const;
  // The only label b with g(a, b) != 0; annihilators of label a remove parts of label b.
  Label partner(Label a) const;
  std::string name() const { return single_label() ? "hurwitz" : "severi"; }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  LabelSet(int count, std::array<std::array<int, 2>, 2> g) : count_(count), g_(g) {}
  int count_;
  std::array<std::array<int, 2>, 2> g_;
};

// |mu, nu>: mu holds unit-labelled parts, nu point-labelled parts. In the
// single-label space nu stays empty.
struct BasisState {
  Partition mu;
  Partition nu;

  int energy() const noexcept { return mu.size() + nu.size(); }
  const Partition& parts(Label a) const { return a == Label::unit ? mu : nu; }
  Partition& parts(Label a) { return a == Label::unit ? mu : nu; }

  std::string to_string() const;  // "((a,b)|(c))"
  static BasisState parse(std::string_view text);

  friend auto operator<=>(const BasisState&, const BasisState&) = default;
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

struct ScaledState {
  BasisState state;
  Rational factor;
};

// Raw monomials prod alpha_{-mu_i}[unit] prod alpha_{-nu_j}[point] |0>.
BasisState raw_create(int k, Label a, const BasisState& raw);
std::optional<ScaledState> raw_annihilate(int k, Label a, const BasisState& raw, const LabelSet& labels);

// z(mu) z(nu): |mu,nu> = raw(mu,nu) / normalization.
Rational normalization(const BasisState& s);

// The same actions on normalized basis vectors.
ScaledState create(int k, Label a, const BasisState& s);
std::optional<ScaledState> annihilate(int k, Label a, const BasisState& s, const LabelSet& labels);

// alpha_mode[label]; negative modes create.
struct Ladder {
  int mode;
  Label label;
};
using LadderWord = std::vector<Ladder>;  // the rightmost letter acts first

std::optional<ScaledState> apply_word_raw(const LadderWord& word, const BasisState& raw, const LabelSet& labels);

class FockVector {
 public:
  using Components = std::map<BasisState, MultiSeries>;

  explicit FockVector(const Window& w = Window::polynomial_ring()) : window_(w) {}

  static FockVector basis(const Window& w, const BasisState& s, const Rational& c = 1);

  const Window& window() const noexcept { return window_; }
  const Components& components() const noexcept { return components_; }
  bool is_zero() const noexcept { return components_.empty(); }

  MultiSeries component(const BasisState& s) const;

  void add(const BasisState& s, const MultiSeries& c);
  // components[s] += coefficient * x^shift * series
  void add_scaled(const BasisState& s, const MultiSeries& series, const Exponents& shift, const Rational& coefficient);

  FockVector restricted(const Window& w) const;
  FockVector energy_part(int s) const;

  friend bool operator==(const FockVector&, const FockVector&) = default;

 private:
  Window window_;
  Components components_;
};

// <mu,nu|mu',nu'> = u^{-l(mu)-l(nu)} / (z(mu) z(nu)) delta_{mu nu'} delta_{nu mu'},
// and <mu|nu> = u^{-l(mu)} / z(mu) delta_{mu nu} for a single label.
struct PairingValue {
  Rational coefficient;
  int u_power;
};
std::optional<PairingValue> basis_pairing(const BasisState& bra, const BasisState& ket, const LabelSet& labels);

MultiSeries inner_product(const FockVector& bra, const FockVector& ket, const LabelSet& labels);

// Q^{|.|}: multiplies each component by q^{energy}.
FockVector apply_energy_scaling(Var q, const FockVector& v);

}  // namespace severi
