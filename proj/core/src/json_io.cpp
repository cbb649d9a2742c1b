#include "walkforge/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "walkforge/errors.hpp"

namespace walkforge {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump_json(j);
  if (!out) throw Error("cannot write " + path);
}

bool is_natural(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

}  // namespace walkforge
