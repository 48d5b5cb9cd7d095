#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "severi/rational.hpp"

namespace severi {

// Weakly decreasing list of positive parts. Ordering is lexicographic on the
// parts list, so (2) > (1,1).
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);  // any order; throws DomainError on parts <= 0

  static Partition ones(int n);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  int multiplicity(int k) const;
  std::map<int, int> frequencies() const;

  Partition with_part(int k) const;
  // Multiset difference, or nullopt when `sub` is not contained in this partition.
  std::optional<Partition> without(const Partition& sub) const;

  std::string to_string() const;  // "(a,b,...)", "()" for the empty partition
  static Partition parse(std::string_view text);

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

// |Aut(mu)| = prod_k e_k!
Rational aut_count(const Partition& mu);
// z(mu) = |Aut(mu)| * prod mu_i
Rational z_factor(const Partition& mu);

Partition concat(const Partition& a, const Partition& b);

// Lexicographically decreasing: (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
std::vector<Partition> enumerate_partitions(int n);

// All (mu, nu) with |mu| + |nu| = s, by decreasing |mu|, then mu, then nu in
// the order of enumerate_partitions.
std::vector<std::pair<Partition, Partition>> enumerate_pairs(int s);

// Every sub-multiset of mu, each listed once, the empty one included.
std::vector<Partition> sub_multisets(const Partition& mu);

// rho[1] + lambda[p]: parts weighted by the unit and the point class.
struct WeightedPartition {
  Partition unit_parts;
  Partition point_parts;

  int degree() const noexcept { return unit_parts.size() + point_parts.size(); }
  friend bool operator==(const WeightedPartition&, const WeightedPartition&) = default;
};

WeightedPartition dual(const WeightedPartition& eta);
Rational weight_m(const WeightedPartition& eta);
Rational aut_count(const WeightedPartition& eta);

}  // namespace severi
