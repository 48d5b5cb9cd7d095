#pragma once

#include <json.hpp>

#include "severi/multiseries.hpp"

namespace severi {

// Stable JSON forms. Terms are emitted in canonical order and coefficients as
// exact "p/q" strings, so equal values serialize to identical bytes.
nlohmann::json window_to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const MultiSeries& s);
MultiSeries series_from_json(const nlohmann::json& j);

}  // namespace severi
