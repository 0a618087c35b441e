#pragma once

#include "fcm/model.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fcm {

/// Parses a model document. Structural only: no semantic validation.
/// Throws ParseError (with a JSON-pointer location) or MissingSection.
CaseModel parse_case_model(std::string_view text);
CaseModel case_model_from_json(const nlohmann::json& document);
CaseModel load_case_model(const std::filesystem::path& path);

nlohmann::json to_json(const CaseModel& model);
std::string serialize_case_model(const CaseModel& model, int indent = 2);

/// Stable 64-bit FNV-1a digest of the canonical serialization, as 16 hex digits.
std::string model_hash(const CaseModel& model);

} // namespace fcm
