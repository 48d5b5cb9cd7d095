#include "severi/genfun.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "severi/errors.hpp"
#include "severi/parallel.hpp"
#include "severi/serialize.hpp"

namespace severi {

namespace {

constexpr std::array<std::pair<Surface, const char*>, 6> kSurfaceNames = {{
    {Surface::p1xp1, "p1xp1"},
    {Surface::hurwitz, "hurwitz"},
    {Surface::elliptic, "elliptic"},
    {Surface::exp1, "exp1"},
    {Surface::blowup, "blowup"},
    {Surface::p2, "p2"},
}};

int bounded_hi(const Window& w, Var v) {
  const int hi = w[v].hi;
  if (hi >= kUnbounded) throw ConfigurationError(std::string("window needs a finite bound on ") + var_name(v));
  return hi;
}

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

Window widened_u(Window w, int lo, int hi) {
  return w.set(Var::u, std::min(w[Var::u].lo, lo), std::max(w[Var::u].hi, hi));
}

MultiSeries shifted(const MultiSeries& s, Var v, int k) {
  MultiSeries out(s.window());
  out.add_scaled(s, exponents({{v, k}}), 1);
  return out;
}

// e^{t Q2 / u} on w.
MultiSeries ruling_prefactor(const Window& w) {
  return series_exp(MultiSeries::monomial(w, exponents({{Var::t, 1}, {Var::q2, 1}, {Var::u, -1}})));
}

MultiSeries sum_in_order(const Window& w, const std::vector<MultiSeries>& parts) {
  MultiSeries out(w);
  for (const auto& p : parts) out += p;
  return out;
}

// sum_d Q1^d <bra_d | exp(t op) | ket_d>, one task per energy.
MultiSeries matrix_element(const GradedOperator& op, const FockVector& bra, const FockVector& ket, int d_max,
                           int t_order) {
  const Window& w = ket.window();
  auto parts = parallel_map(static_cast<std::size_t>(d_max + 1), [&](std::size_t i) {
    const int d = static_cast<int>(i);
    const FockVector b = bra.energy_part(d);
    const FockVector k = ket.energy_part(d);
    if (b.is_zero() || k.is_zero()) return MultiSeries(w);
    return shifted(inner_product(b, exp_apply(op, k, t_order), op.labels()), Var::q1, d);
  });
  return sum_in_order(w, parts);
}

// sum_s Q1^s tr(exp(t op) on energy s), one task per basis state.
MultiSeries block_trace(const GradedOperator& op, const Window& w, int s_max, int t_order) {
  std::vector<BasisState> states;
  for (int s = 0; s <= s_max; ++s) {
    auto b = energy_basis(op.labels(), s);
    states.insert(states.end(), b.begin(), b.end());
  }
  auto parts = parallel_map(states.size(), [&](std::size_t i) {
    const BasisState& b = states[i];
    return shifted(exp_apply(op, FockVector::basis(w, b), t_order).component(b), Var::q1, b.energy());
  });
  return sum_in_order(w, parts);
}

Var cap_var(Cap c) { return c == Cap::w ? Var::e : Var::ehat; }

BoundaryVector build_cap(const Window& w, Cap c) {
  return c == Cap::v ? build_v(w) : build_w(w, cap_var(c));
}

std::vector<int> degree_of(Surface s, const Exponents& e) {
  switch (s) {
    case Surface::p1xp1:
    case Surface::exp1:
      return {at(e, Var::q1), at(e, Var::q2)};
    case Surface::blowup:
      return {at(e, Var::q1), at(e, Var::q2), at(e, Var::e), at(e, Var::ehat)};
    default:
      return {at(e, Var::q1)};
  }
}

// u-exponent the grading predicts for the non-u exponents of e, if any.
std::optional<int> pure_u(Surface s, const Exponents& e) {
  const int n = at(e, Var::t), q1 = at(e, Var::q1), q2 = at(e, Var::q2);
  const int x = at(e, Var::e), xh = at(e, Var::ehat);
  const bool plain = q2 == 0 && x == 0 && xh == 0;
  switch (s) {
    case Surface::p1xp1:
      if (x != 0 || xh != 0) return std::nullopt;
      return n - 2 * q1 - 2 * q2;
    case Surface::exp1:
      if (x != 0 || xh != 0) return std::nullopt;
      return n - 2 * q2;
    case Surface::blowup:
      return n - 2 * q1 - 2 * q2 - x - xh;
    case Surface::hurwitz:
      if (!plain || (n - 2 * q1) % 2 != 0) return std::nullopt;
      return (n - 2 * q1) / 2;
    case Surface::elliptic:
      if (!plain || n % 2 != 0) return std::nullopt;
      return n / 2;
    case Surface::p2:
      if (!plain) return std::nullopt;
      return n - 3 * q1;
  }
  return std::nullopt;
}

}  // namespace

const char* surface_name(Surface s) {
  for (const auto& [k, name] : kSurfaceNames)
    if (k == s) return name;
  return "?";
}

Surface parse_surface(const std::string& name) {
  for (const auto& [k, n] : kSurfaceNames)
    if (name == n) return k;
  throw DomainError("unknown surface: " + name);
}

const char* cap_name(Cap c) {
  switch (c) {
    case Cap::v:
      return "v";
    case Cap::w:
      return "w";
    case Cap::w_hat:
      return "w_hat";
  }
  return "?";
}

Bounds required_u_range(Surface s, const Window& w) {
  const int t = bounded_hi(w, Var::t);
  const int q1 = bounded_hi(w, Var::q1);
  switch (s) {
    case Surface::p1xp1:
      return {-2 * q1 - 2 * bounded_hi(w, Var::q2), t};
    case Surface::exp1:
      return {-2 * bounded_hi(w, Var::q2), t};
    case Surface::blowup: {
      const int ehi = std::max(0, bounded_hi(w, Var::e));
      const int hhi = std::max(0, bounded_hi(w, Var::ehat));
      const int elo = std::min(0, w[Var::e].lo), hlo = std::min(0, w[Var::ehat].lo);
      return {-2 * q1 - 2 * bounded_hi(w, Var::q2) - ehi - hhi, t - elo - hlo};
    }
    case Surface::hurwitz:
      return {-q1, floor_half(t)};
    case Surface::elliptic:
      return {0, floor_half(t)};
    case Surface::p2:
      return {-3 * q1, t};
  }
  return {0, 0};
}

void require_sufficient(Surface s, const Window& w) {
  const Bounds need = required_u_range(s, w);
  const Bounds have = w[Var::u];
  if (have.lo > need.lo || have.hi < need.hi) {
    std::ostringstream msg;
    msg << surface_name(s) << ": u-window [" << have.lo << "," << have.hi << "] must cover [" << need.lo << ","
        << need.hi << "] for " << w.to_string();
    throw ConfigurationError(msg.str());
  }
}

namespace {
Window with_required_u(Surface s, Window w) {
  const Bounds b = required_u_range(s, w);
  return w.set(Var::u, b.lo, b.hi);
}
}  // namespace

Window p1xp1_window(int d1_max, int d2_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, d1_max).set(Var::q2, 0, d2_max);
  return with_required_u(Surface::p1xp1, w);
}

Window hurwitz_window(int d_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, d_max);
  return with_required_u(Surface::hurwitz, w);
}

Window elliptic_window(int s_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max);
  return with_required_u(Surface::elliptic, w);
}

Window exp1_window(int s_max, int d2_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max).set(Var::q2, 0, d2_max);
  return with_required_u(Surface::exp1, w);
}

Window blowup_window(int d1_max, int d2_max, int t_order, Bounds e, Bounds ehat) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, d1_max).set(Var::q2, 0, d2_max);
  w.set(Var::e, e.lo, e.hi).set(Var::ehat, ehat.lo, ehat.hi);
  return with_required_u(Surface::blowup, w);
}

Window p2_window(int d_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, d_max);
  return with_required_u(Surface::p2, w);
}

// The ket |(1^d), 0> keeps u - t + 2 e_Q2 - l(mu) fixed under M_S and N_S, so
// every intermediate u lies in [-d1 - 2 d2, t] and the matrix element in
// [-2 d1 - 2 d2, t]. With that u-window nothing is ever truncated in u.
namespace {
MultiSeries p1xp1_matrix_element(const GradedOperator& op, const Window& out) {
  require_sufficient(Surface::p1xp1, out);
  const int d1 = bounded_hi(out, Var::q1), d2 = bounded_hi(out, Var::q2), t = bounded_hi(out, Var::t);
  Window work = widened_u(out, -2 * (d1 + d2), t);
  work.set(Var::e, 0, 0).set(Var::ehat, 0, 0);
  const FockVector v = build_v(work).raw;
  return matrix_element(op, v, v, d1, t);
}
}  // namespace

MultiSeries z_p1xp1(const Window& w) {
  MultiSeries m = p1xp1_matrix_element(ms_operator(), w);
  return (ruling_prefactor(m.window()) * m).restricted(w);
}

MultiSeries z_p1xp1_via_ns(const Window& w) { return p1xp1_matrix_element(ns_operator(), w).restricted(w); }

// M_H keeps 2u - t - l(mu) fixed, so from |(1^d)> the u-exponent stays in
// [0, t/2] and the pairing lands in [-d, t/2].
MultiSeries z_hurwitz_p1(const Window& out) {
  require_sufficient(Surface::hurwitz, out);
  const int d_max = bounded_hi(out, Var::q1), t = bounded_hi(out, Var::t);
  Window work = widened_u(out, -d_max, t);
  work.set(Var::q2, 0, 0).set(Var::e, 0, 0).set(Var::ehat, 0, 0);
  FockVector v(work);
  for (int d = 0; d <= d_max; ++d) v.add(BasisState{Partition::ones(d), {}}, MultiSeries::constant(work, 1));
  return matrix_element(mh_operator(), v, v, d_max, t).restricted(out);
}

// Traces: every u-exponent in M_H and M_S is nonnegative, so a coefficient
// that leaves the window upward never returns and dropping it is exact.
MultiSeries z_hurwitz_elliptic(const Window& out) {
  require_sufficient(Surface::elliptic, out);
  Window work = out;
  work.set(Var::q2, 0, 0).set(Var::e, 0, 0).set(Var::ehat, 0, 0);
  return block_trace(mh_operator(), work, bounded_hi(out, Var::q1), bounded_hi(out, Var::t)).restricted(out);
}

MultiSeries z_exp1(const Window& out) {
  require_sufficient(Surface::exp1, out);
  const int d2 = bounded_hi(out, Var::q2), t = bounded_hi(out, Var::t);
  Window work = widened_u(out, -2 * d2, t);
  work.set(Var::e, 0, 0).set(Var::ehat, 0, 0);
  const MultiSeries tr = block_trace(ms_operator(), work, bounded_hi(out, Var::q1), t);
  return (ruling_prefactor(work) * tr).restricted(out);
}

MultiSeries exp1_genus1_trace(int s_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max).set(Var::q2, 0, t_order);
  return block_trace(ms_operator(), w, s_max, t_order);
}

MultiSeries elliptic_genus1_trace(int s_max, int t_order) {
  Window w;
  w.set(Var::t, 0, t_order).set(Var::q1, 0, s_max);
  return block_trace(mh_operator(), w, s_max, t_order);
}

FockVector BoundaryVector::expansion() const {
  FockVector out(raw.window());
  for (const auto& [s, c] : raw.components()) out.add(s, prefactor * c);
  return out;
}

BoundaryVector build_v(const Window& w) {
  FockVector raw(w);
  for (int d = 0; d <= bounded_hi(w, Var::q1); ++d)
    raw.add(BasisState{Partition::ones(d), {}}, MultiSeries::constant(w, 1));
  return {Cap::v, MultiSeries::constant(w, 1), raw};
}

BoundaryVector build_w(const Window& w, Var x) {
  if (x != Var::e && x != Var::ehat) throw DomainError("w caps live in E or Ehat");
  const int d_max = bounded_hi(w, Var::q1);
  if (w[x].lo > -d_max)
    throw ConfigurationError(std::string("cap vector needs ") + var_name(x) + "^" + std::to_string(-d_max) +
                             " in " + w.to_string());
  FockVector raw(w);
  for (int d = 0; d <= d_max; ++d) {
    for (int k = 0; k <= d; ++k) {
      for (const Partition& nu : enumerate_partitions(k)) {
        Rational c = 1;
        for (int part : nu.parts()) c *= frac(part % 2 == 1 ? 1 : -1, part);
        raw.add(BasisState{Partition::ones(d - k), nu}, MultiSeries::monomial(w, exponents({{x, -k}}), c));
      }
    }
  }
  MultiSeries arg = MultiSeries::monomial(w, exponents({{Var::q2, 1}, {Var::u, -1}, {x, -1}}));
  arg += MultiSeries::monomial(w, exponents({{x, 1}, {Var::u, -1}}));
  return {x == Var::e ? Cap::w : Cap::w_hat, series_exp(arg), raw};
}

// Working window for caps with exceptional variables. For a target exponent
// range [lo, hi] of X the raw caps need X^{-|nu|} >= X^{-d1} and each
// Q2/(uX) factor lowers X by one more, so nothing below -(d1 + d2) occurs;
// above, the spec bound hi + d2 + 2 d1 on the order of e^{X/u} keeps every
// target coefficient exact. The u-range is the sum of the extreme u-exponents
// of the factors, so no product ever leaves it.
MultiSeries z_blowup(const Window& out, Cap bra, Cap ket) {
  if (bra != Cap::v && ket != Cap::v && cap_var(bra) == cap_var(ket))
    throw ConfigurationError("both caps use the same exceptional variable");
  require_sufficient(Surface::blowup, out);
  const int d1 = bounded_hi(out, Var::q1), d2 = bounded_hi(out, Var::q2), t = bounded_hi(out, Var::t);

  Window work = out;
  int u_lo = -(2 * d1 + 2 * d2) - d2;
  for (Var x : {Var::e, Var::ehat}) {
    const bool used = (bra != Cap::v && cap_var(bra) == x) || (ket != Cap::v && cap_var(ket) == x);
    if (!used) {
      work.set(x, 0, 0);
      continue;
    }
    const int hi = bounded_hi(out, x) + d2 + 2 * d1;
    work.set(x, -(d1 + d2), hi);
    u_lo -= 2 * d2 + hi;
  }
  work = widened_u(work, u_lo, t + d1);

  const BoundaryVector b = build_cap(work, bra);
  const BoundaryVector k = build_cap(work, ket);
  MultiSeries m = matrix_element(ms_operator(), b.raw, k.raw, d1, t);
  m = ruling_prefactor(work) * m;
  if (bra != Cap::v) m = b.prefactor * m;
  if (ket != Cap::v) m = k.prefactor * m;
  return m.restricted(out);
}

MultiSeries connected_series(const MultiSeries& z) { return series_log(z); }

MultiSeries p2_slice(const MultiSeries& bl1) {
  const Window& w = bl1.window();
  const int d = std::min({bounded_hi(w, Var::q1), bounded_hi(w, Var::q2), -w[Var::ehat].lo});
  if (d < 0 || !w[Var::e].contains(0)) throw ConfigurationError("window holds no P2 slice: " + w.to_string());
  MultiSeries out(p2_window(d, bounded_hi(w, Var::t)));
  for (const auto& [e, c] : bl1.terms()) {
    const int q = at(e, Var::q1);
    if (at(e, Var::q2) != q || at(e, Var::ehat) != -q || at(e, Var::e) != 0 || q > d) continue;
    out.add_term(exponents({{Var::t, at(e, Var::t)}, {Var::q1, q}, {Var::u, at(e, Var::u)}}), c);
  }
  return out;
}

// A slice coefficient of log Z factors into pieces whose Q1 + Q2 degrees sum
// to 2d and whose Ehat-exponents are each >= -(their Q1 + Q2 degree); so every
// piece and partial product has Ehat-exponent in [-2d, d].
MultiSeries z_bl1_for_p2(int d_max, int t_order) {
  const Window w = blowup_window(d_max, d_max, t_order, {0, 0}, {-2 * d_max, d_max});
  return z_blowup(w, Cap::v, Cap::w_hat);
}

std::optional<Rational> InvariantTable::find(int g, const std::vector<int>& degree) const {
  for (const auto& r : rows)
    if (r.g == g && r.degree == degree) return r.value;
  return std::nullopt;
}

InvariantTable extract_invariants(const MultiSeries& z, Surface s, bool connected) {
  std::map<Exponents, std::vector<std::pair<int, Rational>>> groups;
  for (const auto& [e, c] : z.terms()) {
    Exponents key = e;
    at(key, Var::u) = 0;
    groups[key].emplace_back(at(e, Var::u), c);
  }
  InvariantTable table{s, connected, z.window(), {}};
  for (const auto& [key, terms] : groups) {
    const std::vector<int> degree = degree_of(s, key);
    if (std::all_of(degree.begin(), degree.end(), [](int x) { return x == 0; }) && at(key, Var::t) == 0) continue;
    const auto u = pure_u(s, key);
    if (!u || terms.size() != 1 || terms.front().first != *u) {
      std::ostringstream msg;
      msg << surface_name(s) << ": impure coefficient at";
      for (Var v : kAllVars)
        if (v != Var::u) msg << ' ' << var_name(v) << '^' << at(key, v);
      msg << ':';
      for (const auto& [p, c] : terms) msg << ' ' << to_string(c) << "*u^" << p;
      throw IntegrityError(msg.str());
    }
    const int n = at(key, Var::t);
    table.rows.push_back({*u + 1, degree, n, terms.front().second * Rational(factorial(n))});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const InvariantRow& a, const InvariantRow& b) { return std::tie(a.degree, a.g) < std::tie(b.degree, b.g); });
  return table;
}

InvariantTable p2_reduce(const MultiSeries& y_bl1, int d_max, int g_min, int g_max) {
  if (d_max < 0 || g_min > g_max) throw DomainError("empty P2 request");
  const Window& w = y_bl1.window();
  const int t_need = std::max(0, 3 * d_max + g_max - 1);
  if (w[Var::q1].hi < d_max || w[Var::q2].hi < d_max || w[Var::t].hi < t_need || w[Var::ehat].lo > -2 * d_max ||
      w[Var::ehat].hi < d_max)
    throw OutOfWindowError("P2 degree " + std::to_string(d_max) + ", genus " + std::to_string(g_max) +
                           " is not exact in " + w.to_string());
  require_sufficient(Surface::blowup, w);
  const InvariantTable slice = extract_invariants(p2_slice(y_bl1), Surface::p2, true);
  InvariantTable out{Surface::p2, true, p2_window(d_max, t_need), {}};
  for (const auto& r : slice.rows)
    if (r.degree[0] <= d_max && r.g >= g_min && r.g <= g_max && r.n <= t_need) out.rows.push_back(r);
  return out;
}

InvariantTable p2_invariants(int d_max, int g_min, int g_max) {
  const int t = std::max(0, 3 * d_max + g_max - 1);
  return p2_reduce(connected_series(z_bl1_for_p2(d_max, t)), d_max, g_min, g_max);
}

nlohmann::json table_to_json(const InvariantTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"g", r.g}, {"degree", r.degree}, {"n", r.n}, {"value", to_string(r.value)}});
  return {{"schema_version", kTableSchemaVersion},
          {"surface", surface_name(t.surface)},
          {"connected", t.connected},
          {"normalization", "value = n! [u^(g-1) t^n Q^degree] Z"},
          {"convention_version", kOperatorConventionVersion},
          {"window", window_to_json(t.window)},
          {"rows", rows}};
}

InvariantTable table_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kTableSchemaVersion) throw IntegrityError("table schema version mismatch");
    InvariantTable t;
    t.surface = parse_surface(j.at("surface").get<std::string>());
    t.connected = j.at("connected").get<bool>();
    t.window = window_from_json(j.at("window"));
    for (const auto& r : j.at("rows"))
      t.rows.push_back({r.at("g").get<int>(), r.at("degree").get<std::vector<int>>(), r.at("n").get<int>(),
                        parse_rational(r.at("value").get<std::string>())});
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed table: ") + e.what());
  }
}

std::string table_to_csv(const InvariantTable& t) {
  std::ostringstream out;
  out << "# schema_version=" << kTableSchemaVersion << '\n';
  out << "# surface=" << surface_name(t.surface) << '\n';
  out << "# connected=" << (t.connected ? "true" : "false") << '\n';
  out << "# normalization=value = n! [u^(g-1) t^n Q^degree] Z\n";
  out << "# convention_version=" << kOperatorConventionVersion << '\n';
  out << "# window=" << window_to_json(t.window).dump() << '\n';
  out << "g,degree,n,value\n";
  for (const auto& r : t.rows) {
    out << r.g << ',';
    for (std::size_t i = 0; i < r.degree.size(); ++i) out << (i ? ";" : "") << r.degree[i];
    out << ',' << r.n << ',' << to_string(r.value) << '\n';
  }
  return out.str();
}

InvariantTable table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> meta;
  InvariantTable t;
  bool header = false;
  auto fail = [](const std::string& why) { return IntegrityError("malformed table csv: " + why); };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw fail(line);
      meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!header) {
      if (line != "g,degree,n,value") throw fail("header " + line);
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 4) throw fail(line);
    InvariantRow r;
    try {
      r.g = std::stoi(cells[0]);
      std::istringstream ds(cells[1]);
      for (std::string x; std::getline(ds, x, ';');) r.degree.push_back(std::stoi(x));
      r.n = std::stoi(cells[2]);
    } catch (const std::exception&) {
      throw fail(line);
    }
    r.value = parse_rational(cells[3]);
    t.rows.push_back(std::move(r));
  }
  for (const char* key : {"schema_version", "surface", "connected", "window"})
    if (!meta.contains(key)) throw fail(std::string("missing ") + key);
  if (meta["schema_version"] != std::to_string(kTableSchemaVersion)) throw fail("schema version");
  t.surface = parse_surface(meta["surface"]);
  t.connected = meta["connected"] == "true";
  try {
    t.window = window_from_json(nlohmann::json::parse(meta["window"]));
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  return t;
}

}  // namespace severi
