#pragma once

// Internal nlohmann-based converters shared by io.cpp and verify.cpp. Not
// installed; public interfaces exchange JSON as text.

#include <json.hpp>

#include "tslv/io.hpp"

namespace tslv::detail {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

ojson timescale_to_jobj(const TimeScale& ts);
TimeScale timescale_from_jobj(const json& j);
ojson params_to_jobj(const ModelParams& p);
ModelParams params_from_jobj(const json& j);
ojson budget_to_jobj(const SimBudget& b);
SimBudget budget_from_jobj(const json& j);

// Wraps json access so malformed input surfaces as ConfigInvalid.
json parse_or_throw(const std::string& text, const char* what);

}  // namespace tslv::detail
