#include "severi/partitions.hpp"

#include <algorithm>
#include <functional>

#include "severi/errors.hpp"

namespace severi {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw DomainError("partition parts must be positive");
    size_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::ones(int n) {
  if (n < 0) throw DomainError("negative partition size");
  return Partition(std::vector<int>(static_cast<std::size_t>(n), 1));
}

int Partition::multiplicity(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

std::map<int, int> Partition::frequencies() const {
  std::map<int, int> out;
  for (int p : parts_) ++out[p];
  return out;
}

Partition Partition::with_part(int k) const {
  if (k <= 0) throw DomainError("partition parts must be positive");
  Partition out = *this;
  out.parts_.insert(std::upper_bound(out.parts_.begin(), out.parts_.end(), k, std::greater<>()), k);
  out.size_ += k;
  return out;
}

std::optional<Partition> Partition::without(const Partition& sub) const {
  // Both lists are sorted decreasingly; walk them together.
  Partition out;
  std::size_t j = 0;
  for (int p : parts_) {
    if (j < sub.parts_.size() && sub.parts_[j] == p) {
      ++j;
    } else {
      if (j < sub.parts_.size() && sub.parts_[j] > p) return std::nullopt;
      out.parts_.push_back(p);
      out.size_ += p;
    }
  }
  if (j != sub.parts_.size()) return std::nullopt;
  return out;
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

Partition Partition::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw DomainError("malformed partition: '" + std::string(text) + "'");
  }
  std::vector<int> parts;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string_view::npos || item.size() > 9) {
      throw DomainError("malformed partition: '" + std::string(text) + "'");
    }
    parts.push_back(std::stoi(std::string(item)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) throw DomainError("malformed partition: '" + std::string(text) + "'");
  }
  Partition out(std::move(parts));
  if (out.to_string() != text) throw DomainError("partition not in canonical order: '" + std::string(text) + "'");
  return out;
}

Rational aut_count(const Partition& mu) {
  Integer out = 1;
  for (const auto& [k, e] : mu.frequencies()) out *= factorial(e);
  return Rational(out);
}

Rational z_factor(const Partition& mu) {
  Rational out = aut_count(mu);
  for (int p : mu.parts()) out *= p;
  return out;
}

Partition concat(const Partition& a, const Partition& b) {
  std::vector<int> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return Partition(std::move(parts));
}

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw DomainError("negative partition size");
  std::vector<Partition> out;
  std::vector<int> current;
  // Depth-first with parts chosen largest first yields lexicographically decreasing order.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<std::pair<Partition, Partition>> enumerate_pairs(int s) {
  if (s < 0) throw DomainError("negative energy");
  std::vector<std::pair<Partition, Partition>> out;
  for (int a = s; a >= 0; --a) {
    const auto mus = enumerate_partitions(a);
    const auto nus = enumerate_partitions(s - a);
    for (const auto& mu : mus) {
      for (const auto& nu : nus) out.emplace_back(mu, nu);
    }
  }
  return out;
}

std::vector<Partition> sub_multisets(const Partition& mu) {
  const auto freq = mu.frequencies();
  std::vector<std::pair<int, int>> items(freq.rbegin(), freq.rend());
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == items.size()) {
      out.emplace_back(current);
      return;
    }
    const auto [part, count] = items[i];
    for (int c = 0; c <= count; ++c) {
      rec(i + 1);
      current.push_back(part);
    }
    current.resize(current.size() - static_cast<std::size_t>(count) - 1);
  };
  rec(0);
  return out;
}

WeightedPartition dual(const WeightedPartition& eta) { return {eta.point_parts, eta.unit_parts}; }

Rational weight_m(const WeightedPartition& eta) {
  Rational out = 1;
  for (int p : eta.unit_parts.parts()) out *= p;
  for (int p : eta.point_parts.parts()) out *= p;
  return out;
}

Rational aut_count(const WeightedPartition& eta) {
  return aut_count(eta.unit_parts) * aut_count(eta.point_parts);
}

}  // namespace severi
