#include "glogit/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "glogit/errors.hpp"
#include "glogit/io.hpp"

namespace glogit {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex_digest(std::uint64_t digest) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

RunManifest RunManifest::begin(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.version = GLOGIT_VERSION;
  m.started = utc_timestamp();
  return m;
}

void RunManifest::finish() { finished = utc_timestamp(); }

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  j["flags"] = nlohmann::ordered_json(flags);
  if (input_path) {
    j["input"] = {{"path", *input_path},
                  {"fnv1a64", input_digest ? hex_digest(*input_digest) : ""}};
  }
  j["started"] = started;
  j["finished"] = finished;
  j["outputs"] = outputs;
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.flags = j.at("flags").get<std::map<std::string, std::string>>();
    if (j.contains("input")) {
      m.input_path = j["input"].at("path").get<std::string>();
      const auto hex = j["input"].at("fnv1a64").get<std::string>();
      if (!hex.empty()) m.input_digest = std::stoull(hex, nullptr, 16);
    }
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.failures = j.at("failures").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
}

void RunManifest::write(const std::filesystem::path& path) const {
  write_text_file(path, to_json());
}

}  // namespace glogit
