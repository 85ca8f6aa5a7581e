#pragma once

#include "framesched/engine.hpp"
#include "framesched/region.hpp"
#include "framesched/verify.hpp"

#include <json.hpp>

#include <string>

namespace framesched {

/// Shortest round-trip decimal form of a double; the one float formatting
/// used in CSV output so files are byte-stable across runs.
std::string double_repr(double x);

nlohmann::ordered_json metrics_to_json(const SimMetrics& metrics);

/// Queue trace CSV: header "frame,q_0,...,q_{N-1}".
std::string trace_to_csv(const SimMetrics& metrics);

/// Region CSV: header "r_0,...,r_{N-1},fulfilled,min_margin".
std::string region_to_csv(const RegionEstimate& estimate);

nlohmann::ordered_json ratio_report_to_json(const RatioReport& report);

} // namespace framesched
