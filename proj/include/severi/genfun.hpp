#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "severi/fock.hpp"
#include "severi/multiseries.hpp"
#include "severi/operators.hpp"

namespace severi {

// Partition functions are ordinary power series in t; an invariant is n! times
// its t^n coefficient, applied only in extract_invariants. Surfaces and variable slots:
//   p1xp1      t, Q1, Q2, u
//   hurwitz    t, Q (Q1 slot), u
//   elliptic   t, Q (Q1 slot), u
//   exp1       t, Q1, Q2, u         (E x P1)
//   blowup     t, Q1, Q2, E, Ehat, u
//   p2         t, Q (Q1 slot), u
enum class Surface { p1xp1, hurwitz, elliptic, exp1, blowup, p2 };

const char* surface_name(Surface s);
Surface parse_surface(const std::string& name);

// Every coefficient of these series has its u-exponent fixed by the other
// exponents (genus is determined by degree and point count). The u range a
// window must cover so that none of its other multidegrees loses a term:
//   p1xp1/blowup       u = n - 2 d1 - 2 d2 - e - ehat
//   exp1               u = n - 2 d2 (the elliptic class has c1 = 0)
//   hurwitz            u = n/2 - d
//   elliptic           u = n/2 (the trace is pure in u >= 0)
//   p2                 u = n - 3 d
Bounds required_u_range(Surface s, const Window& w);

// Smallest windows answering every coefficient up to the given degrees.
Window p1xp1_window(int d1_max, int d2_max, int t_order);
Window hurwitz_window(int d_max, int t_order);
Window elliptic_window(int s_max, int t_order);
Window exp1_window(int s_max, int d2_max, int t_order);
Window blowup_window(int d1_max, int d2_max, int t_order, Bounds e, Bounds ehat);
Window p2_window(int d_max, int t_order);

// Throws ConfigurationError when w.u misses part of required_u_range.
void require_sufficient(Surface s, const Window& w);

MultiSeries z_p1xp1(const Window& w);
// The same matrix element with N_S in place of the prefactor and M_S.
MultiSeries z_p1xp1_via_ns(const Window& w);
MultiSeries z_hurwitz_p1(const Window& w);
MultiSeries z_hurwitz_elliptic(const Window& w);
MultiSeries z_exp1(const Window& w);

// u^0 parts of the traces, computed with the u-window pinned to 0. For E x P1
// the e^{tQ2/u} prefactor is left out: its u^{-k} terms (disconnected rational
// fibre curves) pair with u^k trace terms and would leak into u^0.
MultiSeries exp1_genus1_trace(int s_max, int t_order);
MultiSeries elliptic_genus1_trace(int s_max, int t_order);

enum class Cap { v, w, w_hat };
const char* cap_name(Cap c);

// The cap vector as prefactor * raw. raw holds the partition sum with the
// E^{-|nu|} prod (-1)^{nu_j - 1}/nu_j coefficients; prefactor is 1 for v and
// exp(Q2/(uX) + X/u) for w (X = E) and w_hat (X = Ehat).
struct BoundaryVector {
  Cap kind;
  MultiSeries prefactor;
  FockVector raw;

  FockVector expansion() const;
};

BoundaryVector build_v(const Window& w);
BoundaryVector build_w(const Window& w, Var which);  // which is Var::e or Var::ehat

// e^{tQ2/u} <bra | Q1^{|.|} exp(t M_S) | ket>.
MultiSeries z_blowup(const Window& w, Cap bra, Cap ket);

MultiSeries connected_series(const MultiSeries& z);

// F1 = F2 = 0 slice of a Bl1(P1 x P1) series after Q = Q1 Q2 / Ehat,
// F1 = Q1 / Ehat, F2 = Q2 / Ehat: the terms Q1^d Q2^d Ehat^{-d}, returned as a
// series in Q (Q1 slot) on p2_window.
MultiSeries p2_slice(const MultiSeries& bl1);

// Z^{Bl1(P1 x P1)} on a window that makes its log exact through P2 degree d_max.
MultiSeries z_bl1_for_p2(int d_max, int t_order);

struct InvariantRow {
  int g = 0;
  std::vector<int> degree;
  int n = 0;
  Rational value;

  friend bool operator==(const InvariantRow&, const InvariantRow&) = default;
};

struct InvariantTable {
  Surface surface = Surface::p1xp1;
  bool connected = false;
  Window window;
  std::vector<InvariantRow> rows;  // sorted by (degree, g)

  std::optional<Rational> find(int g, const std::vector<int>& degree) const;
  friend bool operator==(const InvariantTable&, const InvariantTable&) = default;
};

// Groups coefficients by every exponent except u, multiplies by n!, and checks
// each group is the single u-monomial the surface's grading predicts. The
// empty class is skipped. Purity failures throw IntegrityError.
InvariantTable extract_invariants(const MultiSeries& z, Surface s, bool connected = false);

// Connected P2 invariants N_{g,d} for d <= d_max, g_min <= g <= g_max, read
// from Y = log Z^{Bl1} on its F1 = F2 = 0 slice. Requested entries the window
// of y cannot answer throw OutOfWindowError.
InvariantTable p2_reduce(const MultiSeries& y_bl1, int d_max, int g_min, int g_max);

// Full pipeline: z_bl1_for_p2 -> connected_series -> p2_reduce.
InvariantTable p2_invariants(int d_max, int g_min, int g_max);

inline constexpr int kTableSchemaVersion = 1;

nlohmann::json table_to_json(const InvariantTable& t);
InvariantTable table_from_json(const nlohmann::json& j);
std::string table_to_csv(const InvariantTable& t);
InvariantTable table_from_csv(const std::string& text);

}  // namespace severi
