#include "severi/verify.hpp"

#include <functional>
#include <vector>

#include "severi/errors.hpp"
#include "severi/genfun.hpp"
#include "severi/parallel.hpp"
#include "severi/rationality.hpp"
#include "severi/spectra.hpp"

namespace severi {

namespace {

constexpr int kSchemaVersion = 1;

struct Section {
  nlohmann::json items = nlohmann::json::array();
  bool pass = true;

  void add(nlohmann::json item) {
    pass = pass && item.at("pass").get<bool>();
    items.push_back(std::move(item));
  }
  nlohmann::json json() const { return {{"pass", pass}, {"items", items}}; }
};

// One item per index in [lo, hi], computed in parallel and kept in order.
Section indexed(int lo, int hi, const std::function<nlohmann::json(int)>& item) {
  Section s;
  if (hi < lo) return s;
  auto items = parallel_map(static_cast<std::size_t>(hi - lo + 1), [&](std::size_t i) { return item(lo + static_cast<int>(i)); });
  for (auto& j : items) s.add(std::move(j));
  return s;
}

nlohmann::json purity_item() {
  const int d_total = 3, n_max = 6;
  nlohmann::json item = {{"kind", "purity"}, {"degree_bound", d_total}, {"n_max", n_max}};
  try {
    const MultiSeries z = z_p1xp1(p1xp1_window(d_total, d_total, n_max));
    extract_invariants(z, Surface::p1xp1);
    int checked = 0, bad = 0;
    for (const auto& [e, c] : z.terms()) {
      const int d1 = at(e, Var::q1), d2 = at(e, Var::q2), n = at(e, Var::t);
      if (d1 + d2 > d_total) continue;
      ++checked;
      bad += at(e, Var::u) != n - 2 * d1 - 2 * d2;
    }
    item["coefficients"] = checked;
    item["pass"] = bad == 0;
  } catch (const IntegrityError& e) {
    item["error"] = e.what();
    item["pass"] = false;
  }
  return item;
}

nlohmann::json traces_item(bool elliptic) {
  if (elliptic) {
    const bool pass = elliptic_genus1_trace(20, 4) == elliptic_genus1_closed_form(20, 4);
    return {{"kind", "elliptic_genus1"}, {"s_max", 20}, {"t_order", 4}, {"pass", pass}};
  }
  nlohmann::json item = {{"kind", "exp1_genus1"}, {"s_max", 6}, {"t_order", 4}};
  try {
    item["pass"] = exp1_genus1_trace(6, 4) == pure_genus1_closed_form(6, 4);
  } catch (const IntegrityError& e) {
    item["error"] = e.what();
    item["pass"] = false;
  }
  return item;
}

}  // namespace

VerifyOptions VerifyOptions::all() {
  VerifyOptions o;
  o.prop1 = o.prop2 = o.commutator = o.nilpotency = o.self_adjoint = o.purity = o.rationality = o.traces = true;
  return o;
}

bool VerifyOptions::any() const {
  return prop1 || prop2 || commutator || nilpotency || self_adjoint || purity || rationality || traces;
}

std::string VerifyReport::text() const { return document.dump(2) + "\n"; }

VerifyReport run_verification(const VerifyOptions& o) {
  VerifyReport report;
  nlohmann::json suites = nlohmann::json::object();
  auto record = [&](const char* name, const Section& s) {
    suites[name] = s.json();
    report.pass = report.pass && s.pass;
  };
  const auto bound = [&](int fallback) { return o.s_max.value_or(fallback); };

  if (o.prop1)
    record("prop1", indexed(0, bound(8), [](int s) { return certificate_to_json(verify_prop1(s)); }));
  if (o.prop2)
    record("prop2", indexed(1, o.n_max, [](int n) { return certificate_to_json(verify_prop2(n)); }));
  if (o.commutator)
    record("commutator", indexed(0, bound(6), [](int s) { return certificate_to_json(commutator_certificate(s)); }));
  if (o.nilpotency)
    record("nilpotency", indexed(0, bound(10), [](int s) { return certificate_to_json(nilpotency_certificate(s)); }));
  if (o.self_adjoint)
    record("self_adjoint", indexed(0, 2 * bound(6) + 1, [](int i) {
             return certificate_to_json(self_adjoint_certificate(i % 2 == 0 ? ms_operator() : mh_operator(), i / 2));
           }));
  if (o.purity) {
    Section s;
    s.add(purity_item());
    record("purity", s);
  }
  if (o.rationality)
    record("rationality", indexed(0, o.a_max, [&](int a) {
             nlohmann::json item = verdict_to_json(series_consistency(a, o.d2_max));
             item["resolvent"] = rational_function_to_json(solve_Ra(a));
             return item;
           }));
  if (o.traces) record("traces", indexed(0, 1, [](int i) { return traces_item(i == 0); }));

  report.document = {{"schema_version", kSchemaVersion}, {"pass", report.pass}, {"suites", suites}};
  return report;
}

}  // namespace severi
