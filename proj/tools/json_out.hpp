#pragma once

#include <string>

#include <json.hpp>

namespace toric::cli {

/// Indented JSON with every number written as %.17g (integers as integers,
/// non-finite values as null). Key order is insertion order.
std::string to_json_text(const nlohmann::ordered_json& value);

/// One number as %.17g, the format shared by the JSON and CSV writers.
std::string format_number(double value);

}  // namespace toric::cli
