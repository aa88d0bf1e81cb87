#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glogit {

/// Replay record written next to every command's outputs.
struct RunManifest {
  std::string command;
  std::string version;
  std::map<std::string, std::string> flags;  // resolved values, defaults included
  std::uint64_t seed = 0;
  std::optional<std::string> input_path;
  std::optional<std::uint64_t> input_digest;
  std::string started;   // ISO-8601 UTC
  std::string finished;  // empty until finish() is called
  std::vector<std::string> outputs;
  std::vector<std::string> failures;

  /// Sets command, version and the start timestamp.
  static RunManifest begin(std::string command);
  void finish();

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
  void write(const std::filesystem::path& path) const;
};

/// Current time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

std::string hex_digest(std::uint64_t digest);

}  // namespace glogit
