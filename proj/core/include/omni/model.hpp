#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace omni {

// ---------------------------------------------------------------------------
// Error types
// ---------------------------------------------------------------------------

/// Cost parameters violate the model's standing assumptions (c > 0, costs in [0, c)).
class AssumptionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside its mathematical domain (distance, probability, price cap).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A region label is inadmissible for the stage/menu, or a search found no point in it.
class EmptyRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prices do not lie in (the closure of) the region the caller claimed.
class InconsistentRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Absolute slack, in units of the shipping cost, applied to every boundary test.
inline constexpr double kBoundaryEps = 1e-12;

// ---------------------------------------------------------------------------
// Primitive types
// ---------------------------------------------------------------------------

/// Shipping cost and the three per-unit fulfillment costs.
///
/// Construction enforces c > 0 and 0 <= c_e, c_b, c_s < c. The product value
/// is tied to the shipping cost (v = 2c) and is derived, never stored.
class ModelParams {
 public:
  ModelParams(double shipping, double delivery_cost, double bops_cost, double store_cost);

  [[nodiscard]] double shipping() const noexcept { return shipping_; }
  [[nodiscard]] double delivery_cost() const noexcept { return delivery_cost_; }
  [[nodiscard]] double bops_cost() const noexcept { return bops_cost_; }
  [[nodiscard]] double store_cost() const noexcept { return store_cost_; }
  [[nodiscard]] double product_value() const noexcept { return 2.0 * shipping_; }

  /// Boundary slack scaled to the money unit of this parameter set.
  [[nodiscard]] double tolerance() const noexcept { return kBoundaryEps * shipping_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double shipping_;
  double delivery_cost_;
  double bops_cost_;
  double store_cost_;
};

/// Built-in cost presets: case 1 (c_e > c_b > c_s), case 2 (c_b > c_e > c_s),
/// case 3 (all fulfillment costs close to c). All use c = 1.
[[nodiscard]] ModelParams reference_case(int number);

enum class Stage { I, II, III };

/// Consumers' subjective probability that the store has stock.
class Theta {
 public:
  explicit Theta(double value);

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] Stage stage() const noexcept;

  friend bool operator==(const Theta&, const Theta&) = default;

 private:
  double value_;
};

/// Online price (delivery and BOPS) and in-store price.
struct PricePair {
  double online = 0.0;
  double store = 0.0;

  /// Price gap online - theta * store; every segment boundary is a line in it.
  [[nodiscard]] double gap(Theta theta) const noexcept { return online - theta.value() * store; }

  friend bool operator==(const PricePair&, const PricePair&) = default;
};

/// Throws DomainError unless both prices lie in [0, 2c].
void require_admissible(const ModelParams& params, const PricePair& prices);
[[nodiscard]] bool is_admissible(const ModelParams& params, const PricePair& prices) noexcept;

enum class Segment { Delivery, Bops, Store, None };

enum class Region { BEL, BEU, SEL, SEU, S, E };

inline constexpr Region kAllRegions[] = {Region::BEL, Region::BEU, Region::SEL,
                                         Region::SEU, Region::S,   Region::E};

[[nodiscard]] std::string_view to_string(Stage stage) noexcept;
[[nodiscard]] std::string_view to_string(Segment segment) noexcept;
[[nodiscard]] std::string_view to_string(Region region) noexcept;
[[nodiscard]] std::optional<Region> parse_region(std::string_view text) noexcept;

[[nodiscard]] constexpr std::size_t index_of(Region region) noexcept {
  return static_cast<std::size_t>(region);
}

/// Regions where delivery and BOPS split the market.
[[nodiscard]] constexpr bool is_bops_region(Region r) noexcept {
  return r == Region::BEL || r == Region::BEU;
}

/// Whether `region` can be induced at this stage under the given menu.
///
/// With BOPS: BEL/BEU always, SEU in stages I-II, SEL and S in stage I.
/// Without BOPS the store/delivery split starts lower, so SEL also exists in
/// stage II; E and SEU exist throughout (SEU is empty of demand at theta = 0).
[[nodiscard]] bool region_admissible(Region region, Stage stage, bool bops_offered) noexcept;

// ---------------------------------------------------------------------------
// Boundaries in the (distance, price-gap) plane
// ---------------------------------------------------------------------------

/// gap above which local consumers prefer the store to BOPS: (2 - 2theta)c.
[[nodiscard]] double bops_store_gap(const ModelParams& p, Theta t) noexcept;
/// gap above which a consumer at `distance` prefers the store to delivery: (1 - 2theta)c + d.
[[nodiscard]] double delivery_store_gap(const ModelParams& p, Theta t, double distance) noexcept;
/// gap above which every consumer prefers the store: (3 - 2theta)c.
[[nodiscard]] double store_only_gap(const ModelParams& p, Theta t) noexcept;

// ---------------------------------------------------------------------------
// Consumer behaviour
// ---------------------------------------------------------------------------

struct Utilities {
  double delivery = 0.0;
  std::optional<double> bops;  // absent when BOPS is not offered
  double store = 0.0;
};

/// Expected utilities of a consumer at travel cost `distance` in [0, 2c].
[[nodiscard]] Utilities utilities(const ModelParams& params, Theta theta, const PricePair& prices,
                                  double distance, bool bops_offered);

/// Segment the consumer belongs to (ignores the purchase filter, never None).
[[nodiscard]] Segment classify_consumer(const ModelParams& params, Theta theta,
                                        const PricePair& prices, double distance,
                                        bool bops_offered);

/// Segment after applying the reservation-utility filter; None when the
/// preferred option has negative utility.
[[nodiscard]] Segment purchase_decision(const ModelParams& params, Theta theta,
                                        const PricePair& prices, double distance,
                                        bool bops_offered);

/// Price region induced by `prices`. Throws EmptyRegion if the resulting
/// label is not admissible for the stage.
[[nodiscard]] Region classify_region(const ModelParams& params, Theta theta,
                                     const PricePair& prices, bool bops_offered);

/// Closure test used to accept corner optima that sit on an open boundary.
[[nodiscard]] bool in_region_closure(const ModelParams& params, Theta theta,
                                     const PricePair& prices, Region region, bool bops_offered);

}  // namespace omni
