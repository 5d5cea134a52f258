#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "omni/demand.hpp"
#include "omni/model.hpp"

namespace omni {

/// Optimal prices and profit for inducing one region at one theta.
///
/// When `feasible` is false the profit still carries the closed-form value
/// (possibly -inf at theta = 0) but the outcome is never selected.
struct StrategyOutcome {
  Region strategy = Region::E;
  bool bops_offered = false;
  PricePair prices;
  DemandVector demands;
  double profit = 0.0;
  bool feasible = false;
  std::string binding_condition;
};

/// Critical subjective probabilities at which pairs of strategy profits cross.
/// Values above 1 mean the crossing never happens on [0, 1].
struct Thresholds {
  double sel = 0.0;               ///< SEL profit becomes non-negative
  double bops_store_lower = 0.0;  ///< BEL vs SEL
  double bops_store_upper = 0.0;  ///< BEU vs SEU
  double store_online = 0.0;      ///< SEL vs E
  double store_minus = 0.0;       ///< lower root of SEL = SEU
  double store_plus = 0.0;        ///< upper root of SEL = SEU
};

[[nodiscard]] StrategyOutcome optimal_in_region(const ModelParams& params, Theta theta,
                                                Region region, bool bops_offered);

[[nodiscard]] Thresholds thresholds(const ModelParams& params);

/// One of the eight pairwise profit relations, checked at a given theta.
struct RelationCheck {
  int id = 0;
  std::string statement;
  double gap = 0.0;  ///< signed profit difference the relation talks about
  bool holds = false;
};

struct ComparisonReport {
  std::array<RelationCheck, 8> relations;
  [[nodiscard]] bool all_hold() const noexcept;
};

[[nodiscard]] ComparisonReport compare(const ModelParams& params, Theta theta);

struct MenuEntry {
  Region region;
  bool bops_offered;
};

inline constexpr MenuEntry kBopsMenu[] = {{Region::BEL, true},
                                          {Region::BEU, true},
                                          {Region::SEL, true},
                                          {Region::SEU, true},
                                          {Region::S, true}};
inline constexpr MenuEntry kNoBopsMenu[] = {
    {Region::E, false}, {Region::SEL, false}, {Region::SEU, false}, {Region::S, false}};
inline constexpr MenuEntry kFullMenu[] = {
    {Region::BEL, true},  {Region::BEU, true},  {Region::SEL, true},
    {Region::SEU, true},  {Region::S, true},    {Region::E, false},
    {Region::SEL, false}, {Region::SEU, false}, {Region::S, false}};

/// Profits within kTieBand * c^2 of each other count as tied.
inline constexpr double kTieBand = 1e-12;

/// Deterministic preference among tied profits (lower rank wins):
/// SEL, BEL, SEU, BEU, E, S.
[[nodiscard]] int tie_rank(Region region) noexcept;

struct Selection {
  StrategyOutcome best;
  std::vector<StrategyOutcome> menu;
  bool offer_bops = false;
};

/// Best feasible outcome over an arbitrary menu. Throws EmptyRegion if no
/// entry is feasible.
[[nodiscard]] Selection select_from(const ModelParams& params, Theta theta,
                                    std::span<const MenuEntry> menu);

/// Full decision: evaluate both the BOPS and the no-BOPS menus and take the
/// overall maximum.
[[nodiscard]] Selection select_strategy(const ModelParams& params, Theta theta);

struct CostCell {
  double bops_cost = 0.0;
  double store_cost = 0.0;
  Region winner = Region::E;
};

/// Winning strategy on an n x n grid of (c_b, c_s) in [0, c), other costs
/// taken from `base`. Cells are ordered c_b-major.
[[nodiscard]] std::vector<CostCell> cost_region_map(const ModelParams& base, Theta theta,
                                                    int cells_per_axis);

}  // namespace omni
