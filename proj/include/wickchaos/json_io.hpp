#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

namespace wickchaos {

// Deterministic JSON serialization: object keys in sorted order (nlohmann's
// default map), floats printed with %.17g so values round-trip exactly and
// identical inputs yield byte-identical files.
void write_json(std::ostream& os, const nlohmann::json& value, int indent = 2);

std::string json_to_string(const nlohmann::json& value, int indent = 2);

// %.17g rendering of one double (also used for CSV cells).
std::string format_double(double v);

}  // namespace wickchaos
