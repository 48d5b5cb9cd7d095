#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "severi/errors.hpp"
#include "severi/partitions.hpp"

using namespace severi;

namespace {

// Euler's pentagonal-number recurrence.
std::vector<long long> partition_counts(int n_max) {
  std::vector<long long> p(static_cast<std::size_t>(n_max) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const long long sign = (k % 2) ? 1 : -1;
      p[n] += sign * p[n - g1];
      if (g2 <= n) p[n] += sign * p[n - g2];
    }
  }
  return p;
}

std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len) out.push_back(len);
  }
  return out;
}

}  // namespace

TEST_CASE("z factor examples") {
  CHECK(z_factor(Partition({1, 1, 1})) == 6);
  CHECK(z_factor(Partition({2, 1})) == 2);
  CHECK(z_factor(Partition()) == 1);
}

TEST_CASE("z factor in frequency form and via the class equation") {
  for (int n = 0; n <= 12; ++n) {
    Rational total = 0;
    for (const Partition& mu : enumerate_partitions(n)) {
      Rational freq = 1;
      for (const auto& [k, e] : mu.frequencies()) {
        for (int i = 0; i < e; ++i) freq *= k;
        freq *= Rational(factorial(e));
      }
      CHECK(freq == z_factor(mu));
      total += 1 / z_factor(mu);
    }
    // Conjugacy classes of S_n have sizes n!/z(mu).
    CHECK(total == 1);
  }
}

TEST_CASE("z factor counts permutations by cycle type") {
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<Partition, long> counts;
    do {
      ++counts[Partition(cycle_type(perm))];
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& [mu, count] : counts) CHECK(Rational(factorial(n)) / z_factor(mu) == count);
  }
}

TEST_CASE("weighted partitions") {
  const WeightedPartition eta{Partition({2}), Partition({1, 1})};
  CHECK(dual(eta) == WeightedPartition{Partition({1, 1}), Partition({2})});
  CHECK(dual(WeightedPartition{}) == WeightedPartition{});
  CHECK(dual(WeightedPartition{Partition({3, 1}), Partition()}) == WeightedPartition{Partition(), Partition({3, 1})});
  CHECK(weight_m(eta) == 2);
  CHECK(aut_count(eta) == 2);
  CHECK(weight_m(WeightedPartition{}) == 1);
  CHECK(aut_count(WeightedPartition{}) == 1);
  const WeightedPartition big{Partition({2, 2}), Partition({3})};
  CHECK(weight_m(big) == 12);
  CHECK(aut_count(big) == 2);
  CHECK(eta.degree() == 4);

  for (int n = 0; n <= 6; ++n) {
    for (const auto& [rho, lambda] : enumerate_pairs(n)) {
      const WeightedPartition w{rho, lambda};
      CHECK(dual(dual(w)) == w);
      CHECK(weight_m(dual(w)) == weight_m(w));
      CHECK(aut_count(dual(w)) == aut_count(w));
    }
  }
}

TEST_CASE("enumeration") {
  const auto four = enumerate_partitions(4);
  REQUIRE(four.size() == 5);
  CHECK(four.front() == Partition({4}));
  CHECK(four[1] == Partition({3, 1}));
  CHECK(four.back() == Partition({1, 1, 1, 1}));
  CHECK(std::is_sorted(four.rbegin(), four.rend()));

  const auto pairs = enumerate_pairs(2);
  REQUIRE(pairs.size() == 5);
  CHECK(pairs[0] == std::pair{Partition({2}), Partition()});
  CHECK(pairs[1] == std::pair{Partition({1, 1}), Partition()});
  CHECK(pairs[2] == std::pair{Partition({1}), Partition({1})});
  CHECK(pairs[3] == std::pair{Partition(), Partition({2})});
  CHECK(pairs[4] == std::pair{Partition(), Partition({1, 1})});
  CHECK(enumerate_pairs(0) == std::vector{std::pair{Partition(), Partition()}});

  const auto p = partition_counts(40);
  for (int n = 0; n <= 40; ++n) {
    const auto parts = enumerate_partitions(n);
    CHECK(static_cast<long long>(parts.size()) == p[n]);
    if (n <= 15) CHECK(std::set<Partition>(parts.begin(), parts.end()).size() == parts.size());
  }
}

TEST_CASE("concatenation, differences and text form") {
  CHECK(concat(Partition({2, 1}), Partition({2})) == Partition({2, 2, 1}));
  CHECK(concat(Partition({3, 1}), Partition()) == Partition({3, 1}));
  CHECK(concat(Partition({1}), Partition({1})) == Partition({1, 1}));
  CHECK(Partition({3, 2, 2, 1}).without(Partition({2, 1})) == Partition({3, 2}));
  CHECK_FALSE(Partition({3, 1}).without(Partition({2})).has_value());
  CHECK(Partition({1, 3, 2}).to_string() == "(3,2,1)");
  CHECK(Partition().to_string() == "()");
  CHECK(Partition::parse("(3,2,1)") == Partition({3, 2, 1}));
  CHECK(Partition::parse("()") == Partition());
  CHECK_THROWS_AS(Partition::parse("(1,3)"), DomainError);
  CHECK_THROWS_AS(Partition::parse("(1,)"), DomainError);
  CHECK_THROWS_AS(Partition({0}), DomainError);

  const auto subs = sub_multisets(Partition({2, 1, 1}));
  CHECK(subs.size() == 6);
  CHECK(std::set<Partition>(subs.begin(), subs.end()).size() == 6);
}
