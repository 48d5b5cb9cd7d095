#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "severi/genfun.hpp"

using namespace severi;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SEVERI_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

InvariantTable table_of(const Run& r) { return table_from_json(json::parse(r.out).at("table")); }

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("severi_cli_test_" + name); }

}  // namespace

TEST_CASE("cli: p1xp1 example") {
  const Run r = run("p1xp1 --d1 1 --d2 1 --gmin -1 --gmax 1");
  REQUIRE(r.exit_code == 0);
  const InvariantTable t = table_of(r);
  CHECK(t.find(0, {1, 0}) == Rational(1));
  CHECK(t.find(-1, {1, 1}) == Rational(2));
  CHECK(t.find(0, {1, 1}) == Rational(1));
  CHECK(json::parse(r.out).at("schema_version") == 1);
}

TEST_CASE("cli: hurwitz and p2 examples") {
  const Run h = run("hurwitz --d 2 --gmax 1");
  REQUIRE(h.exit_code == 0);
  CHECK(table_of(h).find(0, {2}) == frac(1, 2));
  const Run p = run("p2 --d 2");
  REQUIRE(p.exit_code == 0);
  CHECK(table_of(p).find(0, {2}) == Rational(1));
}

TEST_CASE("cli: verification commands") {
  CHECK(run("verify --prop2 --nmax 12").exit_code == 0);
  CHECK(run("verify --commutator --smax 6").exit_code == 0);
  CHECK(run("verify --rationality --amax 3").exit_code == 0);
  const Run s = run("spectra --prop1 --smax 4");
  CHECK(s.exit_code == 0);
  CHECK(json::parse(s.out).at("certificates").size() == 5);
  const Run r = run("rational --a 1 --d2 2");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("resolvent").contains("den"));
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run("p1xp1 --d1 -1").exit_code == 2);
  CHECK(run("p1xp1 --gmin 3 --gmax 1").exit_code == 2);
  CHECK(run("p1xp1 --no-such-flag").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("--format xml p1xp1").exit_code == 2);
  CHECK(run("verify --format csv").exit_code == 2);
  CHECK(run("cache-audit").exit_code == 2);
  CHECK(run("p1xp1 --config /nonexistent/file").exit_code == 2);
}

TEST_CASE("cli: config file with flags taking precedence") {
  const fs::path cfg = temp("config.cfg");
  std::ofstream(cfg) << "# comment\nd1 = 2\nd2=2\ngmax=0\nformat=csv\n";
  const Run a = run("p1xp1 --config " + cfg.string() + " --d2 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find("\"d1\":2,\"d2\":1") != std::string::npos);
  CHECK(a.out.rfind("# command=p1xp1", 0) == 0);
  std::ofstream(cfg) << "d1\n";
  CHECK(run("p1xp1 --config " + cfg.string()).exit_code == 2);
}

TEST_CASE("cli: JSON and CSV carry the same table") {
  const Run j = run("p1xp1 --d1 2 --d2 2 --gmin -3 --gmax 1");
  const Run c = run("p1xp1 --d1 2 --d2 2 --gmin -3 --gmax 1 --format csv");
  REQUIRE(j.exit_code == 0);
  REQUIRE(c.exit_code == 0);
  CHECK(table_from_csv(c.out) == table_of(j));
}

TEST_CASE("cli: identical output across thread counts and raised windows") {
  const Run a = run("--threads 1 p1xp1 --d1 3 --d2 2 --gmin -4 --gmax 2");
  const Run b = run("--threads 4 p1xp1 --d1 3 --d2 2 --gmin -4 --gmax 2");
  CHECK(a.out == b.out);
  CHECK(run("--threads 1 verify --prop1 --smax 5").out == run("--threads 3 verify --prop1 --smax 5").out);
  // too small a t-order is raised, not honoured
  CHECK(run("p1xp1 --d1 1 --d2 1 --gmax 0 --t-order 1").out == run("p1xp1 --d1 1 --d2 1 --gmax 0").out);
}

TEST_CASE("cli: output file and cache round trip") {
  const fs::path dir = temp("cache");
  fs::remove_all(dir);
  const fs::path out = temp("out.json");
  const std::string args = "--cache-dir " + dir.string() + " --output " + out.string() + " hurwitz --d 3 --gmax 1";
  REQUIRE(run(args).exit_code == 0);
  std::ifstream in1(out);
  std::stringstream first;
  first << in1.rdbuf();
  REQUIRE(run(args).exit_code == 0);
  std::ifstream in2(out);
  std::stringstream second;
  second << in2.rdbuf();
  CHECK(first.str() == second.str());
  CHECK(table_from_json(json::parse(first.str()).at("table")).find(0, {2}) == frac(1, 2));

  const Run audit = run("--cache-dir " + dir.string() + " cache-audit --block M_S --s 3");
  CHECK(audit.exit_code == 0);
  const json report = json::parse(audit.out);
  CHECK(report.at("entries").size() == 2);
  CHECK(report.at("pass") == true);
}
