#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "severi/rational_function.hpp"

namespace severi {

// Q1^{-a} R_a = <(1^a), 0 | (1 - N_S)^{-1} | (1^a), 0> on the energy-a block,
// solved by Cramer's rule with fraction-free (Bareiss) determinants of
// u (1 - N_S), which has polynomial entries. The pairing contributes
// u^{-a}/a!. row_order permutes the elimination pivots; the result does not
// depend on it.
RationalFunction solve_Ra(int a, const std::vector<std::size_t>& row_order = {});

// Number of basis states in the energy-a block.
std::size_t resolvent_dimension(int a);

struct ConsistencyVerdict {
  int a = 0;
  int d2_max = 0;
  bool pass = false;
  int compared = 0;  // (d2, g) entries nonzero on either side
  std::vector<std::string> mismatches;
};

// Expands solve_Ra(a) in Q2 through d2_max (exactly in u) and compares every
// coefficient with the n! t^n coefficients of z_p1xp1 at d1 = a.
ConsistencyVerdict series_consistency(int a, int d2_max);

nlohmann::json rational_function_to_json(const RationalFunction& r);
nlohmann::json verdict_to_json(const ConsistencyVerdict& v);

}  // namespace severi
