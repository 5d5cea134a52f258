#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "omni/model.hpp"
#include "omni/season.hpp"

namespace omni::cli {

/// Malformed file, unknown key, unparsable or out-of-range value. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> value view of a config; ordered so it serializes
/// and hashes canonically.
using KeyValues = std::map<std::string, std::string>;

/// Everything a run needs. Defaults are reference case 1 and a 12-period season.
struct RunConfig {
  // [params]
  double shipping = 1.0;
  double delivery_cost = 0.5;
  double bops_cost = 0.4;
  double store_cost = 0.1;

  // [theta] grid for analyze
  double theta_min = 0.0;
  double theta_max = 1.0;
  double theta_step = 0.01;

  // [season]
  int periods = 12;
  double alpha = 0.05;
  double store_inventory0 = 10.0;
  Scenario scenario = Scenario::OptimalSwitch;
  std::optional<double> theta_noise = 0.95;
  BopsMenu always_bops_menu = BopsMenu::AllRegions;
  std::uint64_t seed = 0;

  // [montecarlo]
  std::size_t replications = 1000;
  unsigned threads = 0;

  // [regions]
  std::string plane = "segments";  ///< segments | prices | costs
  double region_theta = 0.8;
  bool region_bops = true;
  int samples = 201;
  int cost_cells = 50;

  /// Throws AssumptionViolation for bad costs.
  [[nodiscard]] ModelParams params() const;
  [[nodiscard]] SeasonConfig season() const;
  /// Range checks that do not involve the cost assumptions.
  void validate() const;
  [[nodiscard]] KeyValues to_map() const;
};

/// Reads an INI file ([section] headers, key = value, ';' or '#' comments).
[[nodiscard]] KeyValues read_ini(const std::filesystem::path& path);

/// Applies `kv` on top of `cfg`. Unknown keys and bad values throw ConfigError.
void apply(RunConfig& cfg, const KeyValues& kv);

/// Overwrites the cost parameters with reference case 1, 2 or 3.
void apply_case(RunConfig& cfg, int number);

}  // namespace omni::cli
