#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace shearbd {

// A draft-07 subset: type, enum, const, properties, required,
// additionalProperties, items, minItems, maxItems, minimum, maximum,
// exclusiveMinimum, exclusiveMaximum, minLength, oneOf, anyOf and local
// "#/definitions/..." references.
struct SchemaViolation {
  std::string pointer;  // JSON pointer to the offending value
  std::string message;
};

std::vector<SchemaViolation> validate_schema(const nlohmann::json& schema, const nlohmann::json& document);

// Schemas compiled into the library: "domain", "cartoon" and "run".
const nlohmann::json& bundled_schema(const std::string& name);

// Throws ConfigInvalid naming the first violation.
void require_valid(const std::string& schema_name, const nlohmann::json& document, const std::string& source);

}  // namespace shearbd
