// omnichannel: pricing regions, strategy selection and season simulation.
//
//   omnichannel analyze    --case 1 --out out/
//   omnichannel simulate   --config season.ini --seed 7
//   omnichannel --from-manifest out/manifest.json --out rerun/
//
// Exit codes: 0 success, 2 configuration error, 3 cost assumption violated,
// 1 anything else (including a manifest re-run whose outputs differ).

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <iostream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/manifest.hpp"
#include "omni/model.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kAssumptionError = 3;

int rerun_manifest(const std::string& path, const std::string& out_dir) {
  using namespace omni::cli;
  const RunManifest old = read_manifest(path);
  if (!is_command(old.command)) throw ConfigError("manifest names unknown command " + old.command);
  RunConfig cfg;
  apply(cfg, old.config);
  const RunManifest fresh = run_command(old.command, cfg, out_dir, std::cout);

  int mismatches = 0;
  for (const OutputRecord& before : old.outputs) {
    const auto it = std::find_if(fresh.outputs.begin(), fresh.outputs.end(),
                                 [&](const OutputRecord& o) { return o.file == before.file; });
    if (it == fresh.outputs.end() || it->fnv1a != before.fnv1a) {
      fmt::print(std::cerr, "output {} differs from the manifest\n", before.file);
      ++mismatches;
    }
  }
  if (mismatches > 0) return 1;
  fmt::print("reproduced {} output(s); hashes match\n", old.outputs.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Omnichannel pricing and BOPS strategy toolkit"};
  app.set_version_flag("--version", OMNI_VERSION);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> case_number;

  auto* opt_config = app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* opt_seed = app.add_option("--seed", seed, "master seed (overrides the config)");
  auto* opt_case = app.add_option("--case", case_number, "reference cost case")->check(CLI::Range(1, 3));
  app.add_option("--from-manifest", manifest_path, "re-run the command recorded in a manifest")
      ->check(CLI::ExistingFile)
      ->excludes(opt_config)
      ->excludes(opt_seed)
      ->excludes(opt_case);

  for (const char* name : {"analyze", "regions", "simulate", "montecarlo"}) {
    app.add_subcommand(name, fmt::format("run {}", name));
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (!manifest_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw omni::cli::ConfigError("--from-manifest takes no subcommand");
      }
      return rerun_manifest(manifest_path, out_dir);
    }
    if (app.get_subcommands().empty()) {
      fmt::print(std::cerr, "{}", app.help());
      return kConfigError;
    }

    omni::cli::RunConfig cfg;
    if (!config_path.empty()) omni::cli::apply(cfg, omni::cli::read_ini(config_path));
    if (case_number) omni::cli::apply_case(cfg, *case_number);
    if (seed) cfg.seed = *seed;

    const std::string command = app.get_subcommands().front()->get_name();
    const auto manifest = omni::cli::run_command(command, cfg, out_dir, std::cout);
    for (const auto& o : manifest.outputs) fmt::print("wrote {}/{}\n", out_dir, o.file);
    return 0;
  } catch (const omni::AssumptionViolation& e) {
    fmt::print(std::cerr, "assumption violated: {}\n", e.what());
    return kAssumptionError;
  } catch (const omni::cli::ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const omni::DomainError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 1;
  }
}
