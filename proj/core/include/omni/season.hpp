#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omni/demand.hpp"
#include "omni/model.hpp"
#include "omni/strategy.hpp"

namespace omni {

/// Which strategies the retailer may pick each period.
enum class Scenario {
  AlwaysBops,    ///< BOPS always offered: {BEL, BEU, SEL, SEU, S}
  NeverBops,     ///< BOPS never offered: {E, SEL, SEU, S}
  OptimalSwitch  ///< full decision procedure
};

inline constexpr Scenario kAllScenarios[] = {Scenario::AlwaysBops, Scenario::NeverBops,
                                             Scenario::OptimalSwitch};

/// What "always offer BOPS" may choose from.
enum class BopsMenu {
  AllRegions,  ///< every BOPS-offered region: {BEL, BEU, SEL, SEU, S}
  BeOnly       ///< only strategies that sell through BOPS: {BEL, BEU}
};

inline constexpr MenuEntry kBeOnlyMenu[] = {{Region::BEL, true}, {Region::BEU, true}};

[[nodiscard]] std::string_view to_string(Scenario s) noexcept;
[[nodiscard]] std::optional<Scenario> parse_scenario(std::string_view text) noexcept;
[[nodiscard]] std::string_view to_string(BopsMenu m) noexcept;
[[nodiscard]] std::optional<BopsMenu> parse_bops_menu(std::string_view text) noexcept;
[[nodiscard]] std::span<const MenuEntry> menu_for(Scenario s,
                                                  BopsMenu bops_menu = BopsMenu::AllRegions) noexcept;

struct SeasonConfig {
  int periods = 12;
  double alpha = 0.05;  ///< theta_t = 1 / (1 + alpha t)
  double store_inventory0 = 10.0;
  ModelParams params = reference_case(1);
  Scenario scenario = Scenario::OptimalSwitch;
  std::uint64_t seed = 0;
  /// Probability that theta advances along its path in a period; nullopt
  /// makes the path deterministic.
  std::optional<double> theta_noise = 0.95;
  BopsMenu always_bops_menu = BopsMenu::AllRegions;

  void validate() const;
};

/// splitmix64-based stream splitting: independent seeds for (base, stream).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

/// theta_1 .. theta_periods. Without noise theta_t = 1/(1 + alpha t); with
/// noise the path index advances with probability `advance_probability`
/// each period and otherwise repeats the previous value.
[[nodiscard]] std::vector<Theta> theta_path(double alpha, int periods,
                                            std::optional<double> advance_probability,
                                            std::mt19937_64& rng);

struct SeasonState {
  int period = 0;  ///< last completed period
  double inventory = 0.0;
};

struct SeasonRow {
  int period = 0;
  double theta = 0.0;
  Region strategy = Region::E;
  bool forced_online = false;  ///< store was empty, so only delivery is sold
  PricePair prices;
  DemandVector demand;        ///< analytical demands of the strategy
  double store_rate = 0.0;    ///< Poisson mean of store-channel demand
  long store_demand = 0;      ///< realized draw
  double store_sales = 0.0;
  double inventory_end = 0.0;
  double profit = 0.0;
};

struct PeriodResult {
  SeasonState state;
  SeasonRow row;
};

[[nodiscard]] PeriodResult simulate_period(const ModelParams& params, const SeasonState& state,
                                           Theta theta, std::span<const MenuEntry> menu,
                                           std::mt19937_64& rng);

struct SeasonRecord {
  std::vector<SeasonRow> rows;
  double total_profit = 0.0;
  std::vector<int> switching_periods;  ///< every period whose strategy differs from the last
  std::optional<int> first_switch;     ///< first change to a strategy that was not forced
  std::optional<int> stockout_period;  ///< first period forced online

  /// Strategy sequence with repeats collapsed, e.g. "SEL>BEL>E".
  [[nodiscard]] std::string path() const;
};

[[nodiscard]] SeasonRecord simulate_season(const SeasonConfig& cfg);

struct ScenarioSummary {
  Scenario scenario = Scenario::OptimalSwitch;
  std::vector<double> totals;  ///< per replication, in replication order
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::map<int, std::size_t> switch_periods;  ///< first_switch histogram
  std::size_t no_switch = 0;                  ///< the NONE bucket
  std::map<int, std::size_t> none_moves_online;  ///< stockout period among NONE paths
  std::map<int, std::size_t> stockouts;          ///< stockout period, all paths
  std::map<std::string, std::size_t> path_types;
};

struct PairedDifference {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct MonteCarloResult {
  std::array<ScenarioSummary, 3> scenarios;
  double gain_vs_always_pct = 0.0;
  double gain_vs_never_pct = 0.0;

  [[nodiscard]] const ScenarioSummary& of(Scenario s) const;
  /// Replication-wise difference a - b on common random numbers.
  [[nodiscard]] PairedDifference paired(Scenario a, Scenario b) const;
};

/// Runs every scenario on the same per-replication seeds. `cfg.scenario` is
/// ignored. Output does not depend on `threads`.
[[nodiscard]] MonteCarloResult monte_carlo(const SeasonConfig& cfg, std::size_t replications,
                                           unsigned threads = 0);

}  // namespace omni
