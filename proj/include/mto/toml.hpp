#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mto/errors.hpp"

namespace mto {

// Parses the TOML subset used by experiment configs: tables, arrays of
// tables, dotted and quoted keys, inline tables, arrays, strings, numbers,
// booleans, and comments. Dates and multiline strings raise ParseError.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json parse_toml_file(const std::string& path);

} // namespace mto
