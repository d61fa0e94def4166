#pragma once

// JSON forms of the library reports. Every top-level report carries
// "schema_version": "1". Non-finite numbers serialize as null.

#include "hvl/criterion.hpp"
#include "hvl/geometry.hpp"
#include "hvl/valence.hpp"
#include "json.hpp"

namespace hvl::cli {

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const CuspSet& c);
nlohmann::json to_json(const ValenceReport& r);
nlohmann::json to_json(const CrossCheckResult& r);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& doc);

}  // namespace hvl::cli
