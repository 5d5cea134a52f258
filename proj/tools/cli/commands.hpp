#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/manifest.hpp"

namespace omni::cli {

/// Each command returns its CSV tables keyed by file name; nothing touches
/// the filesystem until run_command writes them.
struct NamedTable {
  std::string file;
  CsvTable table;
};

[[nodiscard]] std::vector<NamedTable> cmd_analyze(const RunConfig& cfg, std::ostream& log);
[[nodiscard]] std::vector<NamedTable> cmd_regions(const RunConfig& cfg, std::ostream& log);
[[nodiscard]] std::vector<NamedTable> cmd_simulate(const RunConfig& cfg, std::ostream& log);
[[nodiscard]] std::vector<NamedTable> cmd_montecarlo(const RunConfig& cfg, std::ostream& log);

[[nodiscard]] bool is_command(std::string_view name) noexcept;

/// Runs `command`, writes its tables and manifest.json into `out_dir`, and
/// returns the manifest.
RunManifest run_command(std::string_view command, const RunConfig& cfg,
                        const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace omni::cli
