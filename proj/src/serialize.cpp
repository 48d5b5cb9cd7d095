#include "severi/serialize.hpp"

#include "severi/errors.hpp"

namespace severi {

namespace {

nlohmann::json bound_to_json(int x) {
  if (x <= -kUnbounded || x >= kUnbounded) return nullptr;
  return x;
}

int bound_from_json(const nlohmann::json& j, int unbounded) {
  return j.is_null() ? unbounded : j.get<int>();
}

}  // namespace

nlohmann::json window_to_json(const Window& w) {
  nlohmann::json out = nlohmann::json::object();
  for (Var v : kAllVars) out[var_name(v)] = {bound_to_json(w[v].lo), bound_to_json(w[v].hi)};
  return out;
}

Window window_from_json(const nlohmann::json& j) {
  Window w;
  try {
    for (Var v : kAllVars) {
      const auto& b = j.at(var_name(v));
      w.set(v, bound_from_json(b.at(0), -kUnbounded), bound_from_json(b.at(1), kUnbounded));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed window: ") + e.what());
  }
  return w;
}

nlohmann::json series_to_json(const MultiSeries& s) {
  nlohmann::json vars = nlohmann::json::array();
  for (Var v : kAllVars) vars.push_back(var_name(v));
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({e, to_string(c)});
  return {{"variables", vars}, {"window", window_to_json(s.window())}, {"terms", terms}};
}

MultiSeries series_from_json(const nlohmann::json& j) {
  try {
    MultiSeries out(window_from_json(j.at("window")));
    for (const auto& term : j.at("terms")) {
      const Exponents e = term.at(0).get<Exponents>();
      if (!out.window().contains(e)) throw IntegrityError("serialized term outside its window");
      out.add_term(e, parse_rational(term.at(1).get<std::string>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed series: ") + e.what());
  } catch (const DomainError& e) {
    throw IntegrityError(std::string("malformed series coefficient: ") + e.what());
  }
}

}  // namespace severi
