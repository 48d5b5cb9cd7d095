#include "severi/cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "severi/errors.hpp"
#include "severi/serialize.hpp"

namespace fs = std::filesystem;

namespace severi {

namespace {

constexpr const char* kMagic = "severi-cache";

std::atomic<unsigned> g_temp_counter{0};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

Cache::Cache(fs::path root) : root_(std::move(root)) {}

std::optional<Cache> Cache::from_environment() {
  const char* dir = std::getenv("SEVERI_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return Cache(dir);
}

fs::path Cache::path_for(const std::string& key) const { return root_ / (fnv1a_hex(key) + ".entry"); }

// Layout: four header lines then the payload bytes.
//   severi-cache <version>
//   key <key>
//   size <bytes>
//   checksum <fnv1a of payload>
std::optional<Cache::Entry> Cache::read(const fs::path& p) const {
  const std::string bytes = read_file(p);
  std::istringstream in(bytes);
  std::string magic, key_line, size_word, sum_word, checksum;
  int version = 0;
  std::size_t size = 0;
  auto reject = [&](const std::string& why) -> std::optional<Entry> {
    warnings_.push_back("ignoring cache entry " + p.filename().string() + ": " + why);
    return std::nullopt;
  };
  if (!(in >> magic >> version) || magic != kMagic) return reject("bad header");
  if (version != kCacheFormatVersion) return reject("format version " + std::to_string(version));
  in.ignore(1);
  if (!std::getline(in, key_line) || key_line.rfind("key ", 0) != 0) return reject("missing key");
  if (!(in >> size_word >> size >> sum_word >> checksum) || size_word != "size" || sum_word != "checksum")
    return reject("bad header");
  in.ignore(1);
  const auto offset = static_cast<std::size_t>(in.tellg());
  if (offset > bytes.size() || bytes.size() - offset != size) return reject("truncated payload");
  Entry e{key_line.substr(4), bytes.substr(offset)};
  if (fnv1a_hex(e.payload) != checksum) return reject("checksum mismatch");
  return e;
}

std::optional<std::string> Cache::get(const std::string& key) const {
  const fs::path p = path_for(key);
  if (!fs::exists(p)) return std::nullopt;
  auto e = read(p);
  if (!e) return std::nullopt;
  if (e->key != key) {
    warnings_.push_back("ignoring cache entry " + p.filename().string() + ": key collision");
    return std::nullopt;
  }
  return e->payload;
}

void Cache::put(const std::string& key, const std::string& payload) const {
  const fs::path p = path_for(key);
  if (fs::exists(p)) {
    const auto e = read(p);
    if (e && e->key == key) return;  // write-once
  }
  fs::create_directories(root_);
  std::ostringstream name;
  name << p.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
       << g_temp_counter++;
  const fs::path tmp = root_ / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigurationError("cannot write cache directory " + root_.string());
    out << kMagic << ' ' << kCacheFormatVersion << '\n'
        << "key " << key << '\n'
        << "size " << payload.size() << '\n'
        << "checksum " << fnv1a_hex(payload) << '\n'
        << payload;
  }
  fs::rename(tmp, p);
}

std::vector<std::string> Cache::keys() const {
  std::vector<std::string> out;
  if (!fs::exists(root_)) return out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (entry.path().extension() != ".entry") continue;
    if (auto e = read(entry.path())) out.push_back(e->key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string cached(const Cache* cache, const std::string& key, const std::function<std::string()>& compute) {
  if (cache != nullptr)
    if (auto hit = cache->get(key)) return *hit;
  std::string payload = compute();
  if (cache != nullptr) cache->put(key, payload);
  return payload;
}

std::string block_key(const GradedOperator& op, int s) {
  return "block|" + op.name() + "|" + std::to_string(s) + "|v" + std::to_string(kOperatorConventionVersion);
}

std::string block_payload(const EnergyBlockMatrix& block) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : block.basis) basis.push_back(b.to_string());
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < block.basis.size(); ++i)
    for (std::size_t j = 0; j < block.basis.size(); ++j)
      if (!block.matrix(i, j).is_zero()) entries.push_back({i, j, series_to_json(block.matrix(i, j)).at("terms")});
  nlohmann::json doc = {{"operator", block.op_name},
                        {"energy", block.energy},
                        {"convention_version", kOperatorConventionVersion},
                        {"basis", basis},
                        {"entries", entries}};
  return doc.dump();
}

const GradedOperator& operator_by_name(const std::string& name) {
  if (name == "M_S") return ms_operator();
  if (name == "M_H") return mh_operator();
  if (name == "N_S") return ns_operator();
  if (name == "M_F") return mf_operator();
  if (name == "M_F[printed]") return mf_operator(FourthSumSign::printed);
  throw DomainError("unknown operator: " + name);
}

std::vector<AuditResult> audit_cache(const Cache& cache,
                                     const std::function<std::optional<std::string>(const std::string&)>& recompute) {
  std::vector<AuditResult> out;
  for (const std::string& key : cache.keys()) {
    const std::string stored = cache.get(key).value_or("");
    std::optional<std::string> fresh;
    if (key.rfind("block|", 0) == 0) {
      std::istringstream in(key);
      std::string kind, op, energy, version;
      std::getline(in, kind, '|');
      std::getline(in, op, '|');
      std::getline(in, energy, '|');
      std::getline(in, version, '|');
      if (version != "v" + std::to_string(kOperatorConventionVersion)) {
        out.push_back({key, false, "stale convention version"});
        continue;
      }
      fresh = block_payload(block_matrix(operator_by_name(op), std::stoi(energy)));
    } else if (recompute) {
      fresh = recompute(key);
    }
    if (!fresh) {
      out.push_back({key, true, "skipped"});
      continue;
    }
    const bool match = *fresh == stored;
    out.push_back({key, match, match ? "identical" : "recomputation differs"});
  }
  return out;
}

}  // namespace severi
