#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "severi/operators.hpp"

namespace severi {

inline constexpr int kCacheFormatVersion = 1;

// 64-bit FNV-1a, hex encoded. Stable across platforms, unlike std::hash.
std::string fnv1a_hex(const std::string& bytes);

// Content-addressed store: an entry lives at <root>/<fnv1a(key)>.entry with a
// header recording format version, key, payload size and checksum. Writes go
// through a temporary file and an atomic rename; a valid entry is never
// overwritten. Entries that fail validation are reported and treated as
// misses.
class Cache {
 public:
  explicit Cache(std::filesystem::path root);

  // SEVERI_CACHE_DIR, if set.
  static std::optional<Cache> from_environment();

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_for(const std::string& key) const;

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& payload) const;

  // Keys of all entries that parse, in sorted order.
  std::vector<std::string> keys() const;

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  struct Entry {
    std::string key;
    std::string payload;
  };
  std::optional<Entry> read(const std::filesystem::path& p) const;

  std::filesystem::path root_;
  mutable std::vector<std::string> warnings_;
};

// Returns the cached payload for key, computing and storing it on a miss.
std::string cached(const Cache* cache, const std::string& key, const std::function<std::string()>& compute);

// Canonical byte form of an energy block and its cache key.
std::string block_payload(const EnergyBlockMatrix& block);
std::string block_key(const GradedOperator& op, int s);

// Operators addressable by name from the command line and in cache keys.
const GradedOperator& operator_by_name(const std::string& name);

struct AuditResult {
  std::string key;
  bool match = false;
  std::string detail;
};

// Recomputes every block entry under root and compares bytes. Entries of other
// kinds are recomputed through `recompute` when given, else skipped.
std::vector<AuditResult> audit_cache(const Cache& cache,
                                     const std::function<std::optional<std::string>(const std::string&)>& recompute = {});

}  // namespace severi
