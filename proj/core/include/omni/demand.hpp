#pragma once

#include <optional>

#include "omni/model.hpp"

namespace omni {

/// Mass of consumers buying through each option. Consumers are spread with
/// unit density over [0, 2c], so the total never exceeds 2c.
struct DemandVector {
  double delivery = 0.0;
  double bops = 0.0;
  double store = 0.0;

  [[nodiscard]] double total() const noexcept { return delivery + bops + store; }
  /// Units drawn from the physical store's shelf (BOPS pickups and walk-ins).
  [[nodiscard]] double store_channel() const noexcept { return bops + store; }

  friend bool operator==(const DemandVector&, const DemandVector&) = default;
};

/// Closed-form demand for prices lying in (the closure of) `region`.
///
/// Throws InconsistentRegion if the prices fall outside that region, and
/// DomainError if they break the price cap.
[[nodiscard]] DemandVector demand(const ModelParams& params, Theta theta, const PricePair& prices,
                                  Region region, bool bops_offered);

/// Per-unit margins weighted by demand. BOPS units are sold at the online price.
[[nodiscard]] double profit_of(const ModelParams& params, const PricePair& prices,
                               const DemandVector& demand) noexcept;

/// Profit at arbitrary admissible prices. The region is classified from the
/// prices; when `region_hint` is given it is used instead, provided the prices
/// lie in its closure (otherwise InconsistentRegion).
[[nodiscard]] double profit(const ModelParams& params, Theta theta, const PricePair& prices,
                            bool bops_offered, std::optional<Region> region_hint = std::nullopt);

}  // namespace omni
