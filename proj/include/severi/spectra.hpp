#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "severi/matrix.hpp"
#include "severi/operators.hpp"

namespace severi {

// Polynomial in x with coefficients in the series ring; coefficients[k] is the
// coefficient of x^k. Spectral parameters Q live in the Q2 slot throughout.
struct CharPoly {
  std::vector<MultiSeries> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

CharPoly operator*(const CharPoly& a, const CharPoly& b);
std::string to_string(const CharPoly& p);
nlohmann::json charpoly_to_json(const CharPoly& p);

// det(x I - A) by Berkowitz's division-free recursion.
CharPoly charpoly_berkowitz(const SquareMatrix& a);

// Strongly connected components of the graph i -> j for a(i, j) != 0.
std::vector<std::vector<std::size_t>> strongly_connected_components(const SquareMatrix& a);

// Product of Berkowitz polynomials of the diagonal blocks of the
// block-triangular form given by the strongly connected components.
CharPoly charpoly(const SquareMatrix& a);

// Terms of every entry with u-exponent 0, i.e. the specialization u = 0.
SquareMatrix u_zero_part(const SquareMatrix& a);

struct TridiagonalAn {
  int n = 0;
  SquareMatrix matrix;  // super-diagonal n, ..., 1; sub-diagonal Q, 2Q, ..., nQ
};

TridiagonalAn build_An(int n);

// x^{[n even]} prod_{0 < n - 2j} (x^2 - (n - 2j)^2 Q)
CharPoly prop2_target(int n);
// prod over pairs (mu, nu) of energy s of (x - (|mu| - |nu|) sqrt Q), with
// each pair matched to its swap so no radical appears.
CharPoly prop1_target(int s);

struct SpectrumCertificate {
  std::string kind;  // "prop1" or "prop2"
  int index = 0;
  CharPoly claimed;
  CharPoly computed;
  bool pass = false;
};

SpectrumCertificate verify_prop1(int s);
SpectrumCertificate verify_prop2(int n);
nlohmann::json certificate_to_json(const SpectrumCertificate& c);

// Yes/no checks on one energy block.
struct BlockCertificate {
  std::string kind;
  int energy = 0;
  bool pass = false;
  std::string detail;
};

// M_H(0) is nilpotent; detail records the nilpotency index.
BlockCertificate nilpotency_certificate(int s);
BlockCertificate commutator_certificate(int s, FourthSumSign sign = FourthSumSign::commuting);
// G M = M^T G for the Gram matrix G of the pairing on the block.
BlockCertificate self_adjoint_certificate(const GradedOperator& op, int s);
nlohmann::json certificate_to_json(const BlockCertificate& c);

// sum_{|mu|+|nu| <= s_max} Q1^{|mu|+|nu|} e^{(|mu|-|nu|) t sqrt Q2} through t^t_order.
// Odd powers of sqrt Q2 must cancel between (mu, nu) and (nu, mu); a survivor
// throws IntegrityError. Same window as exp1_genus1_trace.
MultiSeries pure_genus1_closed_form(int s_max, int t_order);
// sum_{|mu| <= s_max} Q^{|mu|}; same window as elliptic_genus1_trace.
MultiSeries elliptic_genus1_closed_form(int s_max, int t_order);

}  // namespace severi
