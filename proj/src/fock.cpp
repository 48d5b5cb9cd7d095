#include "severi/fock.hpp"

#include "severi/errors.hpp"

namespace severi {

namespace {

void require_positive(int k) {
  if (k <= 0) throw DomainError("ladder index must be positive, got " + std::to_string(k));
}

}  // namespace

const char* label_name(Label a) { return a == Label::unit ? "1" : "p"; }

LabelSet LabelSet::hurwitz() { return LabelSet(1, {{{1, 0}, {0, 0}}}); }
LabelSet LabelSet::severi() { return LabelSet(2, {{{0, 1}, {1, 0}}}); }

int LabelSet::pairing(Label a, Label b) const {
  if (static_cast<int>(a) >= count_ || static_cast<int>(b) >= count_) {
    throw DomainError("label not in this label set");
  }
  return g_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

Label LabelSet::partner(Label a) const {
  for (Label b : {Label::unit, Label::point}) {
    if (static_cast<int>(b) < count_ && pairing(a, b) != 0) return b;
  }
  throw DomainError("label pairs with nothing");
}

std::string BasisState::to_string() const { return "(" + mu.to_string() + "|" + nu.to_string() + ")"; }

BasisState BasisState::parse(std::string_view text) {
  const std::size_t bar = text.find('|');
  if (text.size() < 2 || text.front() != '(' || text.back() != ')' || bar == std::string_view::npos) {
    throw DomainError("malformed basis state: '" + std::string(text) + "'");
  }
  return {Partition::parse(text.substr(1, bar - 1)), Partition::parse(text.substr(bar + 1, text.size() - bar - 2))};
}

BasisState raw_create(int k, Label a, const BasisState& raw) {
  require_positive(k);
  BasisState out = raw;
  out.parts(a) = raw.parts(a).with_part(k);
  return out;
}

std::optional<ScaledState> raw_annihilate(int k, Label a, const BasisState& raw, const LabelSet& labels) {
  require_positive(k);
  const Label b = labels.partner(a);
  const int m = raw.parts(b).multiplicity(k);
  if (m == 0) return std::nullopt;
  BasisState out = raw;
  out.parts(b) = *raw.parts(b).without(Partition({k}));
  return ScaledState{std::move(out), Rational(k * m * labels.pairing(a, b))};
}

Rational normalization(const BasisState& s) { return z_factor(s.mu) * z_factor(s.nu); }

ScaledState create(int k, Label a, const BasisState& s) {
  BasisState out = raw_create(k, a, s);
  Rational factor = normalization(out) / normalization(s);
  return {std::move(out), std::move(factor)};
}

std::optional<ScaledState> annihilate(int k, Label a, const BasisState& s, const LabelSet& labels) {
  auto raw = raw_annihilate(k, a, s, labels);
  if (!raw) return std::nullopt;
  raw->factor *= normalization(raw->state) / normalization(s);
  return raw;
}

std::optional<ScaledState> apply_word_raw(const LadderWord& word, const BasisState& raw, const LabelSet& labels) {
  ScaledState current{raw, 1};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->mode == 0) throw DomainError("zero mode in ladder word");
    if (it->mode < 0) {
      current.state = raw_create(-it->mode, it->label, current.state);
    } else {
      auto next = raw_annihilate(it->mode, it->label, current.state, labels);
      if (!next) return std::nullopt;
      current.state = std::move(next->state);
      current.factor *= next->factor;
    }
  }
  return current;
}

FockVector FockVector::basis(const Window& w, const BasisState& s, const Rational& c) {
  FockVector v(w);
  v.add(s, MultiSeries::constant(w, c));
  return v;
}

MultiSeries FockVector::component(const BasisState& s) const {
  auto it = components_.find(s);
  return it == components_.end() ? MultiSeries(window_) : it->second;
}

void FockVector::add(const BasisState& s, const MultiSeries& c) {
  if (!(c.window() == window_)) throw ConfigurationError("Fock vector component window mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) components_.erase(it);
  }
}

void FockVector::add_scaled(const BasisState& s, const MultiSeries& series, const Exponents& shift,
                            const Rational& coefficient) {
  auto [it, inserted] = components_.try_emplace(s, window_);
  it->second.add_scaled(series, shift, coefficient);
  if (it->second.is_zero()) components_.erase(it);
}

FockVector FockVector::restricted(const Window& w) const {
  FockVector out(w);
  for (const auto& [s, c] : components_) out.add(s, c.restricted(w));
  return out;
}

FockVector FockVector::energy_part(int s) const {
  FockVector out(window_);
  for (const auto& [state, c] : components_) {
    if (state.energy() == s) out.components_.emplace_hint(out.components_.end(), state, c);
  }
  return out;
}

std::optional<PairingValue> basis_pairing(const BasisState& bra, const BasisState& ket, const LabelSet& labels) {
  if (labels.single_label()) {
    if (!bra.nu.empty() || !ket.nu.empty()) throw DomainError("point-labelled parts in the single-label space");
    if (bra.mu != ket.mu) return std::nullopt;
    return PairingValue{1 / z_factor(bra.mu), -bra.mu.length()};
  }
  if (bra.mu != ket.nu || bra.nu != ket.mu) return std::nullopt;
  return PairingValue{1 / (z_factor(bra.mu) * z_factor(bra.nu)), -bra.mu.length() - bra.nu.length()};
}

MultiSeries inner_product(const FockVector& bra, const FockVector& ket, const LabelSet& labels) {
  if (!(bra.window() == ket.window())) throw ConfigurationError("inner product window mismatch");
  MultiSeries out(bra.window());
  for (const auto& [b, cb] : bra.components()) {
    const BasisState partner = labels.single_label() ? b : BasisState{b.nu, b.mu};
    auto it = ket.components().find(partner);
    if (it == ket.components().end()) continue;
    const auto value = basis_pairing(b, partner, labels);
    out.add_scaled(cb * it->second, exponents({{Var::u, value->u_power}}), value->coefficient);
  }
  return out;
}

FockVector apply_energy_scaling(Var q, const FockVector& v) {
  FockVector out(v.window());
  for (const auto& [s, c] : v.components()) out.add_scaled(s, c, exponents({{q, s.energy()}}), 1);
  return out;
}

}  // namespace severi
