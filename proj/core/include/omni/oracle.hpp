#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "omni/demand.hpp"
#include "omni/model.hpp"

namespace omni::oracle {

// Brute-force checks for the closed forms. Nothing here uses the region
// demand formulas: every consumer compares raw utilities and buys if the
// best one is non-negative.

struct OracleConfig {
  std::size_t d_resolution = 4001;  ///< consumer midpoints over [0, 2c]
  std::size_t p_resolution = 2001;  ///< price grid points per axis over [0, 2c]
  double tolerance = 1e-6;
  unsigned threads = 0;  ///< 0 = hardware concurrency

  /// Throws std::invalid_argument unless both resolutions are >= 101 and tolerance > 0.
  void validate() const;
};

/// Midpoint-rule measure of the buyers of each option. Loops over every consumer.
[[nodiscard]] DemandVector integrate_demand(const ModelParams& params, Theta theta,
                                            const PricePair& prices, bool bops_offered,
                                            const OracleConfig& cfg = {});

/// Same midpoint measure as integrate_demand, but locates the (monotone)
/// switch points in the consumer index instead of visiting every consumer.
/// Bitwise identical to the loop; used by the grid searches.
[[nodiscard]] DemandVector count_demand(const ModelParams& params, Theta theta,
                                        const PricePair& prices, bool bops_offered,
                                        const OracleConfig& cfg = {});

[[nodiscard]] double integrate_profit(const ModelParams& params, Theta theta,
                                      const PricePair& prices, bool bops_offered,
                                      const OracleConfig& cfg = {});

struct GridPoint {
  PricePair prices;
  double profit = 0.0;
};

/// Maxima of the integrated profit over the full price grid and within each
/// region. Ties resolve to the lexicographically smallest (online, store).
struct GridSweep {
  std::optional<GridPoint> overall;
  std::array<std::optional<GridPoint>, 6> by_region;
  std::size_t points = 0;

  [[nodiscard]] const std::optional<GridPoint>& in(Region r) const {
    return by_region[index_of(r)];
  }
};

[[nodiscard]] GridSweep grid_sweep(const ModelParams& params, Theta theta, bool bops_offered,
                                   const OracleConfig& cfg = {});

/// Best grid point, optionally restricted to one region. Throws EmptyRegion
/// when no grid point classifies into `region_filter`.
[[nodiscard]] GridPoint grid_best(const ModelParams& params, Theta theta, bool bops_offered,
                                  std::optional<Region> region_filter,
                                  const OracleConfig& cfg = {});

/// Spacing of the price grid.
[[nodiscard]] double price_step(const ModelParams& params, const OracleConfig& cfg) noexcept;

/// |d profit / d price| bound on the admissible box: 4c + max fulfillment cost.
[[nodiscard]] double lipschitz_bound(const ModelParams& params) noexcept;

}  // namespace omni::oracle
