#pragma once

// Small accessors that turn nlohmann::json type errors into SpecError with a
// JSON path.

#include <string>

#include <nlohmann/json.hpp>

#include "leaguecast/errors.hpp"

namespace leaguecast::json_util {

inline void require_object(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
}

inline const nlohmann::json& member(const nlohmann::json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw SpecError(path + "." + key, "missing");
    return j.at(key);
}

inline double number(const nlohmann::json& j, const char* key, const std::string& path) {
    const auto& v = member(j, key, path);
    if (!v.is_number()) throw SpecError(path + "." + key, "expected a number");
    return v.get<double>();
}

inline std::string string(const nlohmann::json& j, const char* key, const std::string& path) {
    const auto& v = member(j, key, path);
    if (!v.is_string()) throw SpecError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

}  // namespace leaguecast::json_util
