#pragma once

#include "framesched/model.hpp"

#include <json.hpp>

#include <string>

namespace framesched {

/// Parses a model config document:
///   {
///     "num_apps": N, "num_workers": M,
///     "gen_prob": [[...], ...],                 // N x M, row-major
///     "completion": {"constant": [[...], ...]}  // or {"workload": {...}}
///   }
/// Validation failures throw ConfigError naming the offending key or matrix
/// cell; file parse failures are anchored to a line.
NetworkModel load_model_json(const nlohmann::json& doc, const std::string& where = "config");
NetworkModel load_model_file(const std::string& path);

nlohmann::ordered_json model_to_json(const NetworkModel& model);

} // namespace framesched
