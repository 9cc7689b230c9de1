#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace maieutic {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Digest of the compact dump of `value`; object keys are sorted, so equal
// values digest equally.
std::string json_digest(const nlohmann::json& value);

}  // namespace maieutic
