#pragma once

#include "petrosim/oil/types.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace petrosim::scenario {

// Params file: a JSON object whose keys are the OilParams field names, plus
// "trends" (object keyed by component name) and optional "p_ref". Missing
// keys keep their defaults; unknown keys are rejected.

oil::OilParams params_from_json(const nlohmann::json &j, const std::string &where = "$");
nlohmann::json params_to_json(const oil::OilParams &params);

oil::OilParams load_params(const std::filesystem::path &path);
void save_params(const std::filesystem::path &path, const oil::OilParams &params);

} // namespace petrosim::scenario
