#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "svpqa/experiments.hpp"

namespace svpqa {

inline constexpr const char* kToolVersion = "0.1.0";

/// Ordered key → raw value pairs from a config file or from flags.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values_file(const std::string& path);

/// Accepts radians ("0.5236") or multiples of pi ("pi/18", "17pi/18", "2*pi/3").
Real parse_angle(std::string_view text);

/// Merges `flags` over `file` and validates; errors name the offending field.
ExperimentConfig parse_config(const KeyValues& file, const KeyValues& flags = {});

/// Canonical lossless `key = value` text; parse_config(parse_key_values(...))
/// of the result reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& config);

struct RunManifest {
  ExperimentConfig config;
  std::string tool_version = kToolVersion;
  std::string timestamp;    // ISO 8601 UTC
  std::string config_hash;  // FNV-1a 64 of serialize_config, hex

  static RunManifest create(const ExperimentConfig& config);
  /// serialize_config preceded by provenance comment lines.
  std::string text() const;
};

std::string config_hash(const ExperimentConfig& config);

/// Runs one subcommand (solve, anneal, sweep-t, sweep-theta, spectrum,
/// symmetry). Writes outputs and the manifest under config.out and prints a
/// summary to `out`. Throws svpqa::Error on failure.
void dispatch(const std::string& command, const ExperimentConfig& config, std::ostream& out);

/// Full command-line entry: parses argv, dispatches, maps errors to exit
/// codes (0 ok, 2 usage/config, 3 numerical, 4 I/O).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace svpqa
