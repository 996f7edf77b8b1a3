#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hgr/augmentation.hpp"
#include "hgr/dynamic.hpp"
#include "hgr/static_model.hpp"

namespace hgr {

/// Highest model file version this build reads and the one it writes.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const StaticModel& model);
StaticModel static_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DynamicModel& model);
DynamicModel dynamic_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AugmentationSetting& setting);
/// Accepts either [[db, dr], ...] or {"stages": [[db, dr], ...]}.
AugmentationSetting setting_from_json(const nlohmann::json& j);

/// "1".."4" selects a built-in setting; anything else is read as a JSON file.
AugmentationSetting resolve_setting(const std::string& spec);

void save_model(const nlohmann::json& j, const std::filesystem::path& path);
/// Reads a model file and checks its format_version. Throws FormatError or
/// UnsupportedVersion.
nlohmann::json load_model_json(const std::filesystem::path& path);

}  // namespace hgr
