#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace walkforge {

// Reads and parses a JSON document; ConfigError when the file cannot be
// opened, ParseError (with the byte offset) when it is not JSON.
nlohmann::json load_json(const std::string& path);

// Canonical text form: two-space indent, sorted keys, trailing newline.
// Every tool output goes through here so reruns are byte-identical.
std::string dump_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);

// A JSON value holding a natural number.  JSON itself has no signedness, and
// values built through the C++ API arrive tagged signed, so loaders must not
// test is_number_unsigned() alone.
bool is_natural(const nlohmann::json& v);

}  // namespace walkforge
