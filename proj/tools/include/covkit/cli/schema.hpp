#pragma once

#include "covkit/cli/json_io.hpp"

#include <string>
#include <vector>

namespace covkit::cli {

inline constexpr const char* kSchemaVersion = "1";

const Json& scenario_schema();
const Json& report_schema();

/// Validates against the subset of JSON Schema used by the published
/// schemas: type, enum, const, properties, required, additionalProperties,
/// items, minItems, maxItems, minimum, maximum, exclusiveMinimum and local
/// $ref into $defs. Returns one "pointer: message" entry per violation.
std::vector<std::string> validate(const Json& document, const Json& schema);

}  // namespace covkit::cli
