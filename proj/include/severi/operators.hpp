#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "severi/fock.hpp"
#include "severi/matrix.hpp"

namespace severi {

// Bumped whenever an operator's action changes; part of every block cache key.
inline constexpr int kOperatorConventionVersion = 1;

// Largest energy a block may be materialized at unless a caller asks otherwise.
inline constexpr int kDefaultEnergyCutoff = 24;

// One term of an operator image: coefficient * x^shift * |state>.
struct ImageTerm {
  BasisState state;
  Exponents shift;
  Rational coefficient;
};
using Image = std::vector<ImageTerm>;

// Energy-preserving linear map given by its action on basis states. Images are
// memoized per state; the memo is a write-once map guarded by a mutex.
class GradedOperator {
 public:
  using Action = std::function<Image(const BasisState&)>;

  GradedOperator(std::string name, LabelSet labels, Action action);

  const std::string& name() const noexcept { return name_; }
  const LabelSet& labels() const noexcept { return labels_; }

  const Image& image(const BasisState& s) const;

  FockVector apply(const BasisState& s, const Window& w = Window::polynomial_ring()) const;
  // scale * x^shift * op(v)
  FockVector apply(const FockVector& v, const Exponents& shift = {}, const Rational& scale = 1) const;

 private:
  struct Memo {
    std::mutex mutex;
    std::map<BasisState, Image> images;
  };
  std::string name_;
  LabelSet labels_;
  Action action_;
  std::shared_ptr<Memo> memo_;
};

// Sign in front of the (k^2-1)/12 sum of M_F. The printed formula has +1; the
// value forced by [M_S, M_F] = 0 is -1.
enum class FourthSumSign { commuting = -1, printed = 1 };

const GradedOperator& ms_operator();
const GradedOperator& mh_operator();
const GradedOperator& ns_operator();
const GradedOperator& mf_operator(FourthSumSign sign = FourthSumSign::commuting);
GradedOperator energy_operator(const LabelSet& labels, Var q);

// M_F built from arbitrary fourth-sum coefficients c_k (k > 1), used to solve
// for them from the commutation relation.
GradedOperator mf_with_fourth_sum(const std::function<Rational(int)>& coefficient, const std::string& name);

FockVector apply_ms(const BasisState& s, const Window& w = Window::polynomial_ring());
FockVector apply_mh(const BasisState& s, const Window& w = Window::polynomial_ring());
FockVector apply_ns(const BasisState& s, const Window& w = Window::polynomial_ring());
FockVector apply_mf(const BasisState& s, const Window& w = Window::polynomial_ring());

// enumerate_pairs(s), or the partitions of s (nu empty) for a single label.
std::vector<BasisState> energy_basis(const LabelSet& labels, int s);

struct EnergyBlockMatrix {
  std::string op_name;
  int energy = 0;
  std::vector<BasisState> basis;
  SquareMatrix matrix;  // (i, j): coefficient of basis[i] in op(basis[j])
};

// Cached per (operator name, s, convention version).
const EnergyBlockMatrix& block_matrix(const GradedOperator& op, int s, int cutoff = kDefaultEnergyCutoff);

// sum_{n <= t_order} t^n op^n(v) / n!, in the window of v.
FockVector exp_apply(const GradedOperator& op, const FockVector& v, int t_order);

}  // namespace severi
