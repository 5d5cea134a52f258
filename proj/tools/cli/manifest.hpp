#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace omni::cli {

struct OutputRecord {
  std::string file;  ///< name relative to the output directory
  std::string fnv1a;
  std::uintmax_t bytes = 0;
};

/// What was run, with what, and what it wrote.
struct RunManifest {
  std::string tool = "omnichannel";
  std::string version;
  std::string command;
  KeyValues config;  ///< fully resolved, so a re-run needs nothing else
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<OutputRecord> outputs;
};

/// FNV-1a over "key=value\n" lines in key order.
[[nodiscard]] std::string config_hash(const KeyValues& kv);

/// Current UTC time as ISO-8601 with seconds.
[[nodiscard]] std::string utc_timestamp();

[[nodiscard]] OutputRecord describe_output(const std::filesystem::path& dir, const std::string& file);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
/// Throws ConfigError on unreadable or malformed manifests.
[[nodiscard]] RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace omni::cli
