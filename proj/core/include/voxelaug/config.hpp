#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "voxelaug/pipeline.hpp"

namespace voxelaug::config {

// JSON schema:
//   { "global_seed": uint, "order_mode": "fixed" | "shuffle_non_geometric",
//     "geometric": [spec...], "novel": [spec...], "baseline_intensity": [spec...] }
//   spec = { "name": str, "probability": real, "params": { ... } }
// Unknown keys anywhere are a ConfigError. Missing parameter keys take the
// transform's defaults; the top-level keys and spec name/probability are
// required.

PipelineConfig from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PipelineConfig& cfg);

/// Parameter block of one transform (also used by the `augment` command).
TransformParams params_from_json(std::string_view transform, const nlohmann::json& params);
nlohmann::json params_to_json(const TransformParams& params);

PipelineConfig load(const std::filesystem::path& path);
/// Pretty-printed with two-space indentation and a trailing newline.
void save(const PipelineConfig& cfg, const std::filesystem::path& path);

}  // namespace voxelaug::config
