#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "severi/cache.hpp"

using namespace severi;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("severi_cache_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("put then get returns identical bytes") {
  const Cache c(fresh_dir("roundtrip"));
  const std::string payload = std::string("line\n\0binary\xff", 13) + "tail";
  CHECK_FALSE(c.get("k").has_value());
  c.put("k", payload);
  CHECK(c.get("k") == payload);
  c.put("k", "something else");  // write-once
  CHECK(c.get("k") == payload);
  CHECK(c.keys() == std::vector<std::string>{"k"});
  CHECK(c.warnings().empty());
}

TEST_CASE("damaged or foreign entries are misses with a warning") {
  const Cache c(fresh_dir("damaged"));
  c.put("k", "payload");
  const fs::path p = c.path_for("k");
  const std::string good = slurp(p);

  std::string bumped = good;
  bumped.replace(bumped.find(" 1\n"), 3, " 2\n");
  spit(p, bumped);
  CHECK_FALSE(c.get("k").has_value());

  std::string flipped = good;
  flipped.back() = 'X';
  spit(p, flipped);
  CHECK_FALSE(c.get("k").has_value());

  spit(p, good.substr(0, good.size() - 2));
  CHECK_FALSE(c.get("k").has_value());
  CHECK(c.warnings().size() == 3);

  c.put("k", "payload");  // a damaged entry is replaced
  CHECK(c.get("k") == "payload");
}

TEST_CASE("cached computes once") {
  const Cache c(fresh_dir("cached"));
  int calls = 0;
  auto f = [&] { ++calls; return std::string("v"); };
  CHECK(cached(&c, "x", f) == "v");
  CHECK(cached(&c, "x", f) == "v");
  CHECK(calls == 1);
  CHECK(cached(nullptr, "x", f) == "v");
  CHECK(calls == 2);
}

TEST_CASE("concurrent writers leave one valid entry") {
  const Cache c(fresh_dir("concurrent"));
  std::vector<std::jthread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back([&] { c.put("same", "payload"); });
  pool.clear();
  CHECK(Cache(c.root()).get("same") == "payload");
  int files = 0;
  for (const auto& e : fs::directory_iterator(c.root())) files += e.is_regular_file();
  CHECK(files == 1);
}

TEST_CASE("audit recomputes block entries") {
  const Cache c(fresh_dir("audit"));
  const std::string key = block_key(ms_operator(), 3);
  CHECK(key == "block|M_S|3|v1");
  c.put(key, block_payload(block_matrix(ms_operator(), 3)));
  auto results = audit_cache(c);
  REQUIRE(results.size() == 1);
  CHECK(results[0].match);

  const Cache bad(fresh_dir("audit_bad"));
  bad.put(key, block_payload(block_matrix(ms_operator(), 2)));
  results = audit_cache(bad);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].match);

  const Cache other(fresh_dir("audit_other"));
  other.put("table|x", "1");
  results = audit_cache(other, [](const std::string&) { return std::optional<std::string>("1"); });
  CHECK(results.at(0).match);
}
