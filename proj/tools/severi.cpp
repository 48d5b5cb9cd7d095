#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "severi/cache.hpp"
#include "severi/errors.hpp"
#include "severi/genfun.hpp"
#include "severi/parallel.hpp"
#include "severi/rationality.hpp"
#include "severi/spectra.hpp"
#include "severi/verify.hpp"

using namespace severi;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kIntegrity = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCommands = {"p1xp1", "blowup", "hurwitz", "elliptic", "exp1",
                                            "p2",    "rational", "spectra", "verify", "cache-audit"};

// Flat key=value lines become --key=value tokens placed right after the
// subcommand, ahead of anything typed on the command line. Options keep their
// last value, so flags given explicitly win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!path) return args;
  auto sub = std::find_first_of(args.begin(), args.end(), kCommands.begin(), kCommands.end());
  if (sub == args.end()) throw UsageError("--config needs a subcommand");
  const auto tokens = config_tokens(*path);
  args.insert(sub + 1, tokens.begin(), tokens.end());
  return args;
}

struct Notices {
  std::vector<std::string> lines;
  void add(const std::string& s) {
    lines.push_back(s);
    std::cerr << "notice: " << s << '\n';
  }
};

int raise_t_order(std::optional<int> requested, int needed, Notices& notices) {
  if (needed < 0) needed = 0;
  if (!requested) return needed;
  if (*requested < 0) throw UsageError("--t-order must be nonnegative");
  if (*requested < needed) {
    notices.add("t-order raised from " + std::to_string(*requested) + " to " + std::to_string(needed) +
                " to cover the requested genus range");
    return needed;
  }
  return *requested;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

InvariantTable filter_genus(InvariantTable t, int gmin, int gmax) {
  std::erase_if(t.rows, [&](const InvariantRow& r) { return r.g < gmin || r.g > gmax; });
  return t;
}

// Every table command is a pure function of its canonical parameter object;
// the cache key is that object, and cache-audit replays it.
InvariantTable compute_table(const std::string& command, const json& p) {
  if (command == "p1xp1") {
    MultiSeries z = z_p1xp1(p1xp1_window(p["d1"], p["d2"], p["t_order"]));
    const bool connected = p["connected"];
    if (connected) z = connected_series(z);
    return filter_genus(extract_invariants(z, Surface::p1xp1, connected), p["gmin"], p["gmax"]);
  }
  if (command == "hurwitz") {
    MultiSeries z = z_hurwitz_p1(hurwitz_window(p["d"], p["t_order"]));
    const bool connected = p["connected"];
    if (connected) z = connected_series(z);
    return filter_genus(extract_invariants(z, Surface::hurwitz, connected), p["gmin"], p["gmax"]);
  }
  if (command == "elliptic") return extract_invariants(z_hurwitz_elliptic(elliptic_window(p["s"], p["t_order"])), Surface::elliptic);
  if (command == "exp1") return extract_invariants(z_exp1(exp1_window(p["s"], p["d2"], p["t_order"])), Surface::exp1);
  if (command == "blowup") {
    const Bounds e{p["e"][0], p["e"][1]}, eh{p["ehat"][0], p["ehat"][1]};
    const Cap bra = p["bra"] == "w" ? Cap::w : Cap::v;
    const Cap ket = p["ket"] == "w_hat" ? Cap::w_hat : Cap::v;
    MultiSeries z = z_blowup(blowup_window(p["d1"], p["d2"], p["t_order"], e, eh), bra, ket);
    const bool connected = p["connected"];
    if (connected) z = connected_series(z);
    return extract_invariants(z, Surface::blowup, connected);
  }
  if (command == "p2") return p2_invariants(p["d"], p["gmin"], p["gmax"]);
  throw UsageError("not a table command: " + command);
}

// Notices go to stderr only, so a document depends on nothing but its key.
std::string render_table(const std::string& command, const json& params, const std::string& format) {
  const InvariantTable t = compute_table(command, params);
  if (format == "csv") {
    std::string csv = table_to_csv(t);
    return "# command=" + command + "\n# parameters=" + params.dump() + "\n" + csv;
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"command", command},
              {"parameters", params},
              {"table", table_to_json(t)}};
  return doc.dump(2) + "\n";
}

std::string output_key(const std::string& command, const json& params, const std::string& format) {
  return "output|" + command + "|" + format + "|" + params.dump();
}

std::optional<std::string> replay(const std::string& key) {
  std::istringstream in(key);
  std::string kind, command, format, params;
  std::getline(in, kind, '|');
  std::getline(in, command, '|');
  std::getline(in, format, '|');
  std::getline(in, params);
  if (kind != "output") return std::nullopt;
  return render_table(command, json::parse(params), format);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fock-space generating functions for Severi degrees and Hurwitz numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  unsigned threads = 1;
  std::string format = "json";
  std::string output;
  std::string cache_dir;
  std::string config_path;
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--format", format, "json or csv (tables only)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", output, "output file (default stdout)");
  app.add_option("--cache-dir", cache_dir, "cache root (default $SEVERI_CACHE_DIR)");
  app.add_option("--config", config_path, "flat key=value file; command-line flags take precedence");

  struct {
    int d1 = 1, d2 = 1, d = 1, s = 4, gmin = 0, a = 1, smax = 8, nmax = 12, amax = 3;
    std::optional<int> gmax, t_order, vsmax, s_block;
    bool connected = false;
    std::string bra = "v", ket = "w_hat", block;
    std::vector<int> e = {0, 0}, ehat = {0, 0};
    bool prop1 = false, prop2 = false, commutator = false, nilpotency = false, self_adjoint = false, purity = false,
         rationality = false, traces = false, all = false;
  } o;

  auto degree_opts = [&](CLI::App* c, bool with_genus) {
    c->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    c->add_option("--t-order", o.t_order, "t-order (raised to what the request needs)");
    if (with_genus) {
      c->add_option("--gmin", o.gmin, "smallest genus reported");
      c->add_option("--gmax", o.gmax, "largest genus reported");
    }
  };

  auto* p1 = app.add_subcommand("p1xp1", "Severi degrees of P1 x P1");
  degree_opts(p1, true);
  p1->add_option("--d1", o.d1, "largest Q1 degree");
  p1->add_option("--d2", o.d2, "largest Q2 degree");
  p1->add_flag("--connected", o.connected, "connected invariants via log");

  auto* hu = app.add_subcommand("hurwitz", "Hurwitz numbers of P1");
  degree_opts(hu, true);
  hu->add_option("--d", o.d, "largest degree");
  hu->add_flag("--connected", o.connected, "connected invariants via log");

  auto* el = app.add_subcommand("elliptic", "trace over the Hurwitz Fock space (elliptic target)");
  degree_opts(el, false);
  el->add_option("--s", o.s, "largest energy");

  auto* ex = app.add_subcommand("exp1", "trace for E x P1");
  degree_opts(ex, false);
  ex->add_option("--s", o.s, "largest Q1 degree");
  ex->add_option("--d2", o.d2, "largest Q2 degree");

  auto* bl = app.add_subcommand("blowup", "blow-up matrix elements");
  degree_opts(bl, false);
  bl->add_option("--d1", o.d1, "largest Q1 degree");
  bl->add_option("--d2", o.d2, "largest Q2 degree");
  bl->add_option("--bra", o.bra, "v or w")->check(CLI::IsMember({"v", "w"}));
  bl->add_option("--ket", o.ket, "v or w_hat")->check(CLI::IsMember({"v", "w_hat"}));
  bl->add_option("--e", o.e, "E exponent range lo hi")->expected(2);
  bl->add_option("--ehat", o.ehat, "Ehat exponent range lo hi")->expected(2);
  bl->add_flag("--connected", o.connected, "connected series via log");

  auto* p2 = app.add_subcommand("p2", "connected Severi degrees of P2 via the blow-up");
  degree_opts(p2, true);
  p2->add_option("--d", o.d, "largest degree");

  auto* ra = app.add_subcommand("rational", "resolvent R_a as a rational function in u, Q2");
  ra->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  ra->add_option("--a", o.a, "Q1 degree");
  ra->add_option("--d2", o.d2, "Q2 degree for the series cross-check");

  auto* sp = app.add_subcommand("spectra", "characteristic-polynomial certificates");
  sp->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sp->add_flag("--prop1", o.prop1, "energy blocks of M_S(0, Q)");
  sp->add_flag("--prop2", o.prop2, "matrices A_n");
  sp->add_option("--smax", o.smax, "largest energy");
  sp->add_option("--nmax", o.nmax, "largest n");

  auto* ve = app.add_subcommand("verify", "certificate suites; exit 1 if any fails");
  ve->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  ve->add_flag("--all", o.all, "every suite");
  ve->add_flag("--prop1", o.prop1, "");
  ve->add_flag("--prop2", o.prop2, "");
  ve->add_flag("--commutator", o.commutator, "");
  ve->add_flag("--nilpotency", o.nilpotency, "");
  ve->add_flag("--self-adjoint", o.self_adjoint, "");
  ve->add_flag("--purity", o.purity, "");
  ve->add_flag("--rationality", o.rationality, "");
  ve->add_flag("--traces", o.traces, "");
  ve->add_option("--smax", o.vsmax, "energy bound for the block suites");
  ve->add_option("--nmax", o.nmax, "largest n for A_n");
  ve->add_option("--amax", o.amax, "largest a for the resolvent");

  auto* au = app.add_subcommand("cache-audit", "recompute cache entries and compare bytes");
  au->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  au->add_option("--block", o.block, "store this operator's block first (M_S, M_H, N_S, M_F)");
  au->add_option("--s", o.s_block, "energy of --block");

  try {
    std::vector<std::string> args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    set_thread_count(threads);
    std::optional<Cache> cache = cache_dir.empty() ? Cache::from_environment() : std::optional<Cache>(Cache(cache_dir));
    const Cache* cache_ptr = cache ? &*cache : nullptr;
    auto flush_warnings = [&] {
      if (cache)
        for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << '\n';
    };
    Notices notices;
    const std::string command = app.get_subcommands().front()->get_name();

    auto table_command = [&](const json& params) {
      const std::string key = output_key(command, params, format);
      const std::string text = cached(cache_ptr, key, [&] { return render_table(command, params, format); });
      flush_warnings();
      write_output(text, output);
      return kOk;
    };
    auto require_json = [&] { require(format == "json", command + " emits JSON only"); };

    if (command == "p1xp1") {
      const int gmax = o.gmax.value_or(std::max(0, (o.d1 - 1) * (o.d2 - 1)));
      require(o.d1 >= 0 && o.d2 >= 0, "degrees must be nonnegative");
      require(o.gmin <= gmax, "--gmin exceeds --gmax");
      const int t = raise_t_order(o.t_order, 2 * o.d1 + 2 * o.d2 + gmax - 1, notices);
      return table_command({{"d1", o.d1}, {"d2", o.d2}, {"gmin", o.gmin}, {"gmax", gmax}, {"t_order", t}, {"connected", o.connected}});
    }
    if (command == "hurwitz") {
      const int gmax = o.gmax.value_or(1);
      require(o.d >= 0, "degree must be nonnegative");
      require(o.gmin <= gmax, "--gmin exceeds --gmax");
      const int t = raise_t_order(o.t_order, 2 * o.d + 2 * gmax - 2, notices);
      return table_command({{"d", o.d}, {"gmin", o.gmin}, {"gmax", gmax}, {"t_order", t}, {"connected", o.connected}});
    }
    if (command == "elliptic") {
      require(o.s >= 0, "--s must be nonnegative");
      return table_command({{"s", o.s}, {"t_order", raise_t_order(o.t_order, 0, notices)}});
    }
    if (command == "exp1") {
      require(o.s >= 0 && o.d2 >= 0, "degrees must be nonnegative");
      return table_command({{"s", o.s}, {"d2", o.d2}, {"t_order", raise_t_order(o.t_order, 0, notices)}});
    }
    if (command == "blowup") {
      require(o.d1 >= 0 && o.d2 >= 0, "degrees must be nonnegative");
      require(o.e[0] <= o.e[1] && o.ehat[0] <= o.ehat[1], "empty exceptional range");
      if (o.bra == "v" && (o.e[0] != 0 || o.e[1] != 0)) {
        notices.add("bra v carries no E; E range set to [0,0]");
        o.e = {0, 0};
      }
      if (o.ket == "v" && (o.ehat[0] != 0 || o.ehat[1] != 0)) {
        notices.add("ket v carries no Ehat; Ehat range set to [0,0]");
        o.ehat = {0, 0};
      }
      const int t = raise_t_order(o.t_order, 0, notices);
      return table_command({{"d1", o.d1}, {"d2", o.d2}, {"t_order", t}, {"bra", o.bra}, {"ket", o.ket}, {"e", o.e},
                            {"ehat", o.ehat}, {"connected", o.connected}});
    }
    if (command == "p2") {
      const int gmax = o.gmax.value_or(0);
      require(o.d >= 1, "--d must be at least 1");
      require(o.gmin <= gmax, "--gmin exceeds --gmax");
      require(!o.t_order, "p2 derives its t-order from --d and --gmax");
      return table_command({{"d", o.d}, {"gmin", o.gmin}, {"gmax", gmax}});
    }

    if (command == "rational") {
      require_json();
      require(o.a >= 0 && o.d2 >= 0, "degrees must be nonnegative");
      const ConsistencyVerdict v = series_consistency(o.a, o.d2);
      const json doc = {{"schema_version", kSchemaVersion},
                        {"command", command},
                        {"parameters", {{"a", o.a}, {"d2", o.d2}}},
                        {"resolvent", rational_function_to_json(solve_Ra(o.a))},
                        {"consistency", verdict_to_json(v)}};
      write_output(doc.dump(2) + "\n", output);
      return v.pass ? kOk : kVerificationFailed;
    }

    if (command == "spectra") {
      require_json();
      if (!o.prop1 && !o.prop2) o.prop1 = o.prop2 = true;
      require(o.smax >= 0 && o.smax <= kDefaultEnergyCutoff, "--smax out of range");
      require(o.nmax >= 1, "--nmax must be at least 1");
      json certs = json::array();
      bool pass = true;
      if (o.prop1) {
        for (int s = 0; s <= o.smax; ++s) {
          cached(cache_ptr, block_key(ms_operator(), s), [&] { return block_payload(block_matrix(ms_operator(), s)); });
          const auto c = verify_prop1(s);
          pass = pass && c.pass;
          certs.push_back(certificate_to_json(c));
        }
      }
      if (o.prop2) {
        for (int n = 1; n <= o.nmax; ++n) {
          const auto c = verify_prop2(n);
          pass = pass && c.pass;
          certs.push_back(certificate_to_json(c));
        }
      }
      flush_warnings();
      const json doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"pass", pass}, {"certificates", certs}};
      write_output(doc.dump(2) + "\n", output);
      return pass ? kOk : kVerificationFailed;
    }

    if (command == "verify") {
      require_json();
      VerifyOptions v = o.all ? VerifyOptions::all() : VerifyOptions{};
      v.prop1 |= o.prop1;
      v.prop2 |= o.prop2;
      v.commutator |= o.commutator;
      v.nilpotency |= o.nilpotency;
      v.self_adjoint |= o.self_adjoint;
      v.purity |= o.purity;
      v.rationality |= o.rationality;
      v.traces |= o.traces;
      if (!v.any()) v = VerifyOptions::all();
      if (o.vsmax) require(*o.vsmax >= 0 && *o.vsmax <= kDefaultEnergyCutoff, "--smax out of range");
      require(o.nmax >= 1 && o.amax >= 0, "--nmax/--amax out of range");
      v.s_max = o.vsmax;
      v.n_max = o.nmax;
      v.a_max = o.amax;
      const VerifyReport r = run_verification(v);
      write_output(r.text(), output);
      return r.pass ? kOk : kVerificationFailed;
    }

    if (command == "cache-audit") {
      require_json();
      require(cache.has_value(), "cache-audit needs --cache-dir or SEVERI_CACHE_DIR");
      if (!o.block.empty()) {
        require(o.s_block.has_value(), "--block needs --s");
        const GradedOperator& op = operator_by_name(o.block);
        cached(cache_ptr, block_key(op, *o.s_block), [&] { return block_payload(block_matrix(op, *o.s_block)); });
      }
      const auto results = audit_cache(*cache, replay);
      json entries = json::array();
      bool pass = true;
      for (const auto& r : results) {
        pass = pass && r.match;
        entries.push_back({{"key", r.key}, {"match", r.match}, {"detail", r.detail}});
      }
      flush_warnings();
      const json doc = {{"schema_version", kSchemaVersion},
                        {"command", command},
                        {"pass", pass},
                        {"entries", entries},
                        {"warnings", cache->warnings()}};
      write_output(doc.dump(2) + "\n", output);
      return pass ? kOk : kVerificationFailed;
    }
    throw UsageError("unknown command " + command);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const OutOfWindowError& e) {
    std::cerr << "window error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kIntegrity;
  }
}
