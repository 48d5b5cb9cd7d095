#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace severi {

// Certificate suites behind `severi verify` and the acceptance run. Defaults
// are the desk-scale ranges; s_max, when set, replaces every energy bound.
struct VerifyOptions {
  bool prop1 = false;
  bool prop2 = false;
  bool commutator = false;
  bool nilpotency = false;
  bool self_adjoint = false;
  bool purity = false;
  bool rationality = false;
  bool traces = false;

  std::optional<int> s_max;
  int n_max = 12;
  int a_max = 3;
  int d2_max = 3;

  static VerifyOptions all();
  bool any() const;
};

struct VerifyReport {
  nlohmann::json document;
  bool pass = true;

  // Indented JSON with a trailing newline; identical for identical options
  // whatever the thread count.
  std::string text() const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace severi
