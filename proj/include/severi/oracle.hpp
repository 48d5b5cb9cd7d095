#pragma once

#include <map>
#include <utility>
#include <vector>

#include "severi/fock.hpp"
#include "severi/matrix.hpp"
#include "severi/operators.hpp"

namespace severi::oracle {

// Reference path, deliberately structured differently from the main engine:
// words are reduced by adjacent transpositions using only the commutators and
// alpha_k |0> = 0.

using FreeWord = LadderWord;

// Normal-ordered expansion of word |0> in the normalized basis.
FockVector normal_order(const FreeWord& word, const LabelSet& labels);

// Raw expansion: raw monomials with their coefficients.
std::map<BasisState, Rational> normal_order_raw(const FreeWord& word, const LabelSet& labels);

enum class OperatorKind { ms, ns, mh, mf, mf_printed };

// The energy-s block rebuilt from the operator formulas written as sums of
// words, each applied to the creation word of a basis state and normal ordered.
SquareMatrix block_from_words(OperatorKind kind, int s);

// Caporaso-Harris: degree-d plane curves with delta nodes, contact profile
// alpha at fixed points of a line and beta at unfixed points (alpha[k-1] is
// the number of contacts of order k).
using Profile = std::vector<int>;
Integer severi_degree(int d, int delta, const Profile& alpha, const Profile& beta);

// N^{d,delta} with all contacts transverse and unfixed; as a function of genus
// g = (d-1)(d-2)/2 - delta this is the disconnected invariant.
Integer disconnected_p2(int g, int d);

// Connected N_{g,d} for d <= d_max, by taking the log of the disconnected
// generating function. Keys are (g, d).
std::map<std::pair<int, int>, Rational> connected_p2(int d_max);

}  // namespace severi::oracle
