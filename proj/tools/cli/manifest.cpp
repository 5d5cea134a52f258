#include "cli/manifest.hpp"

#include <chrono>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "cli/csv.hpp"

namespace omni::cli {

using nlohmann::json;

std::string config_hash(const KeyValues& kv) {
  std::string canonical;
  for (const auto& [k, v] : kv) {
    canonical += k;
    canonical += '=';
    canonical += v;
    canonical += '\n';
  }
  return hex64(fnv1a(canonical));
}

std::string utc_timestamp() {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
}

OutputRecord describe_output(const std::filesystem::path& dir, const std::string& file) {
  const std::string bytes = read_file(dir / file);
  return {file, hex64(fnv1a(bytes)), bytes.size()};
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["command"] = m.command;
  j["config"] = m.config;
  j["config_hash"] = m.config_hash;
  // Strings keep 64-bit seeds exact for JSON readers that use doubles.
  j["seed"] = std::to_string(m.seed);
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["outputs"] = json::array();
  for (const OutputRecord& o : m.outputs) {
    j["outputs"].push_back({{"file", o.file}, {"fnv1a", o.fnv1a}, {"bytes", o.bytes}});
  }
  write_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config").get<KeyValues>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = std::stoull(j.at("seed").get<std::string>());
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    for (const json& o : j.at("outputs")) {
      m.outputs.push_back({o.at("file").get<std::string>(), o.at("fnv1a").get<std::string>(),
                           o.at("bytes").get<std::uintmax_t>()});
    }
    if (config_hash(m.config) != m.config_hash) {
      throw ConfigError(fmt::format("{}: config hash does not match its config", path.string()));
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: malformed manifest: {}", path.string(), e.what()));
  } catch (const std::logic_error& e) {
    throw ConfigError(fmt::format("{}: malformed manifest: {}", path.string(), e.what()));
  }
}

}  // namespace omni::cli
