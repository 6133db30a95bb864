#pragma once

// Named experiment presets, flat key = value configuration, and run manifests.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zetalab/error.hpp"

namespace zetalab {

std::string_view library_version() noexcept;

/// Keys accepted in configs and --set overrides.
const std::vector<std::string>& config_keys();

struct ExperimentConfig {
  std::string preset;
  std::map<std::string, std::string> overrides;

  /// Throws UnknownConfigKey for keys outside config_keys().
  void set(const std::string& key, const std::string& value);
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
/// A `preset = name` line selects the preset.
ExperimentConfig parse_config(std::string_view text);
std::string format_config(const ExperimentConfig& config);

struct PresetInfo {
  std::string name;
  std::string figure;
  std::vector<std::pair<std::string, std::string>> defaults;
};

const std::vector<PresetInfo>& presets();
/// Throws InvalidArgument for unknown names.
const PresetInfo& find_preset(const std::string& name);
/// One commented config stub per preset, separated by blank lines.
std::string list_presets();

/// Preset defaults overlaid with the config's overrides, in key order.
std::vector<std::pair<std::string, std::string>> resolve_parameters(const ExperimentConfig& config);

struct OutputFile {
  std::string file;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string preset;
  std::string figure;
  std::string version;
  std::string output_dir;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<OutputFile> outputs;
  std::vector<std::pair<std::string, std::string>> results;  // headline numbers
  double wall_time_s = 0.0;
  bool ok = true;
  std::optional<ErrorCode> error_code;
  std::string error;

  std::string to_json() const;
};

/// Runs the preset pipeline and writes CSV, SVG and manifest.json into
/// output_dir. A module error stops the pipeline and is recorded in the
/// manifest; configuration errors throw before anything runs.
RunManifest run_preset(const ExperimentConfig& config);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Shortest round-trip decimal form of a double (CSV cells).
std::string format_number(double value);

/// Comma-separated numbers, e.g. "100,200,500".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace zetalab
