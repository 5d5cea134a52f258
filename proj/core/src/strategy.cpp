#include "omni/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace omni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Store price that puts theta * p_s on the (2 theta - 1) c corner, clipped to
// the admissible range outside stage I.
double corner_store_price(double c, double th) {
  if (th <= 0.5) return 0.0;
  return std::clamp((2.0 * th - 1.0) * c / th, 0.0, 2.0 * c);
}

}  // namespace

StrategyOutcome optimal_in_region(const ModelParams& params, Theta theta, Region region,
                                  bool bops_offered) {
  if (is_bops_region(region) && !bops_offered) {
    throw InconsistentRegion("BE regions require the BOPS option");
  }
  if (region == Region::E && bops_offered) {
    throw InconsistentRegion("region E exists only when BOPS is not offered");
  }

  const double c = params.shipping();
  const double ce = params.delivery_cost();
  const double cb = params.bops_cost();
  const double cs = params.store_cost();
  const double th = theta.value();
  const double slack = params.tolerance() * c;
  const bool stage_one = theta.stage() == Stage::I;

  StrategyOutcome out;
  out.strategy = region;
  out.bops_offered = bops_offered;

  switch (region) {
    case Region::BEL: {
      out.prices = {c, 2.0 * c};
      out.profit = (2.0 * c - ce - cb) * c;
      out.feasible = 2.0 * c - ce - cb >= -params.tolerance();
      out.binding_condition = "2c - c_e - c_b >= 0";
      break;
    }
    case Region::BEU: {
      out.prices = {(2.0 * c + cb) / 2.0, 2.0 * c};
      out.profit = 0.25 * (2.0 * c - cb) * (2.0 * c - cb);
      out.feasible = true;
      out.binding_condition = "always";
      break;
    }
    case Region::SEL: {
      out.prices = {c, corner_store_price(c, th)};
      const double margin = (3.0 * th - 1.0) * c - th * ce - th * cs;
      out.profit = th > 0.0 ? margin * c / th : -kInf;
      out.feasible = stage_one && margin * c >= -slack;
      out.binding_condition = stage_one ? "(3theta - 1)c - theta(c_e + c_s) >= 0" : "stage I";
      break;
    }
    case Region::SEU: {
      out.prices = {2.0 * c, (2.0 * c + cs) / 2.0};
      out.profit = 0.25 * th * (2.0 * c - cs) * (2.0 * c - cs);
      out.feasible = th > 0.0;
      out.binding_condition = "theta > 0";
      break;
    }
    case Region::S: {
      out.prices = {2.0 * c, corner_store_price(c, th)};
      const double margin = (2.0 * th - 1.0) * c - th * cs;
      out.profit = th > 0.0 ? margin * c / th : -kInf;
      out.feasible = stage_one && margin * c >= -slack;
      out.binding_condition = stage_one ? "(2theta - 1)c - theta c_s >= 0" : "stage I";
      break;
    }
    case Region::E: {
      out.prices = {c, 2.0 * c};
      out.profit = 2.0 * (c - ce) * c;
      out.feasible = c > ce;
      out.binding_condition = "c > c_e";
      break;
    }
  }

  if (out.feasible) {
    out.demands = demand(params, theta, out.prices, region, bops_offered);
  }
  return out;
}

Thresholds thresholds(const ModelParams& params) {
  const double c = params.shipping();
  const double ce = params.delivery_cost();
  const double cb = params.bops_cost();
  const double cs = params.store_cost();

  Thresholds t;
  t.sel = c / (3.0 * c - ce - cs);
  t.bops_store_lower = c / (c + cb - cs);
  t.bops_store_upper = ((2.0 * c - cb) * (2.0 * c - cb)) / ((2.0 * c - cs) * (2.0 * c - cs));
  t.store_online = c / (c + ce - cs);
  const double scale = 2.0 * c / ((2.0 * c - cs) * (2.0 * c - cs));
  const double root = std::sqrt((c - ce) * (5.0 * c - ce - 2.0 * cs));
  t.store_minus = scale * (3.0 * c - ce - cs - root);
  t.store_plus = scale * (3.0 * c - ce - cs + root);
  return t;
}

namespace {

// Width of the band around a switching point inside which either sign of a
// (near-zero) profit gap is accepted.
constexpr double kSwitchBand = 1e-9;

bool sign_consistent(double side, double gap, double gap_band) {
  if (std::abs(side) <= kSwitchBand) return std::abs(gap) <= gap_band;
  return side > 0.0 ? gap > 0.0 : gap < 0.0;
}

}  // namespace

bool ComparisonReport::all_hold() const noexcept {
  return std::all_of(relations.begin(), relations.end(),
                     [](const RelationCheck& r) { return r.holds; });
}

ComparisonReport compare(const ModelParams& params, Theta theta) {
  const double c = params.shipping();
  const double ce = params.delivery_cost();
  const double cb = params.bops_cost();
  const double cs = params.store_cost();
  const double th = theta.value();
  const double gap_band = 1e-6 * c * c;
  const Thresholds thr = thresholds(params);

  // Closed-form values regardless of feasibility; the relations are algebraic.
  const double bel = (2.0 * c - ce - cb) * c;
  const double beu = 0.25 * (2.0 * c - cb) * (2.0 * c - cb);
  const double sel = th > 0.0 ? ((3.0 * th - 1.0) * c - th * ce - th * cs) * c / th : -kInf;
  const double seu = 0.25 * th * (2.0 * c - cs) * (2.0 * c - cs);
  const double s = th > 0.0 ? ((2.0 * th - 1.0) * c - th * cs) * c / th : -kInf;
  const double e = 2.0 * (c - ce) * c;

  ComparisonReport report;
  auto& r = report.relations;

  r[0] = {1, "pi_SEL > pi_S and pi_SEU >= pi_S", 0.0, true};
  if (th > 0.0) {
    r[0].gap = std::min(sel - s, seu - s);
    r[0].holds = sel - s > 0.0 && seu - s >= -gap_band;
  }

  const double sel_margin = (3.0 * th - 1.0) * c - th * ce - th * cs;
  r[1] = {2, "theta >= theta_SEL iff an SE-L solution exists", sel_margin,
          sign_consistent(th - thr.sel, sel_margin, gap_band)};

  r[2] = {3, "theta >< theta_BS/L  =>  pi_BEL <> pi_SEL", sel - bel,
          sign_consistent(th - thr.bops_store_lower, sel - bel, gap_band)};
  r[3] = {4, "theta >< theta_BS/U  =>  pi_BEU <> pi_SEU", seu - beu,
          sign_consistent(th - thr.bops_store_upper, seu - beu, gap_band)};
  r[4] = {5, "theta >< theta_S/E  =>  pi_SEL >< pi_E", sel - e,
          sign_consistent(th - thr.store_online, sel - e, gap_band)};
  r[5] = {6, "c_e >< c_b  =>  pi_BEL >< pi_E", bel - e,
          sign_consistent((ce - cb) / c, bel - e, gap_band)};
  const double discriminant = 4.0 * c * c - 4.0 * ce * c - cb * cb;
  r[6] = {7, "4c^2 - 4c_e c - c_b^2 >< 0  =>  pi_BEL >< pi_BEU", bel - beu,
          sign_consistent(discriminant / (c * c), bel - beu, gap_band)};

  const double distance_to_root =
      std::min(std::abs(th - thr.store_minus), std::abs(th - thr.store_plus));
  const bool inside = th >= thr.store_minus && th <= thr.store_plus;
  bool holds8;
  if (distance_to_root <= kSwitchBand) {
    holds8 = std::abs(sel - seu) <= gap_band;
  } else {
    holds8 = inside ? sel - seu >= 0.0 : sel - seu < 0.0;
  }
  r[7] = {8, "theta_S- <= theta <= theta_S+  iff  pi_SEL >= pi_SEU", sel - seu, holds8};
  return report;
}

int tie_rank(Region region) noexcept {
  switch (region) {
    case Region::SEL:
      return 0;
    case Region::BEL:
      return 1;
    case Region::SEU:
      return 2;
    case Region::BEU:
      return 3;
    case Region::E:
      return 4;
    case Region::S:
      return 5;
  }
  return 6;
}

Selection select_from(const ModelParams& params, Theta theta, std::span<const MenuEntry> menu) {
  Selection sel;
  sel.menu.reserve(menu.size());
  const StrategyOutcome* best = nullptr;
  for (const MenuEntry& entry : menu) {
    sel.menu.push_back(optimal_in_region(params, theta, entry.region, entry.bops_offered));
  }
  // Profits this close are equal up to rounding (e.g. exactly at a threshold),
  // so the fixed order decides rather than the last bit.
  const double tie_band = kTieBand * params.shipping() * params.shipping();
  for (const StrategyOutcome& o : sel.menu) {
    if (!o.feasible) continue;
    if (best == nullptr || o.profit > best->profit + tie_band ||
        (std::abs(o.profit - best->profit) <= tie_band &&
         tie_rank(o.strategy) < tie_rank(best->strategy))) {
      best = &o;
    }
  }
  if (best == nullptr) {
    std::ostringstream os;
    os << "no feasible strategy in menu at theta " << theta.value();
    throw EmptyRegion(os.str());
  }
  sel.best = *best;
  sel.offer_bops = is_bops_region(best->strategy);
  return sel;
}

Selection select_strategy(const ModelParams& params, Theta theta) {
  return select_from(params, theta, kFullMenu);
}

std::vector<CostCell> cost_region_map(const ModelParams& base, Theta theta, int cells_per_axis) {
  if (cells_per_axis < 1) throw std::invalid_argument("cost map needs at least one cell");
  const double c = base.shipping();
  const double step = c / cells_per_axis;
  std::vector<CostCell> cells;
  cells.reserve(static_cast<std::size_t>(cells_per_axis) * cells_per_axis);
  for (int i = 0; i < cells_per_axis; ++i) {
    for (int j = 0; j < cells_per_axis; ++j) {
      const double cb = i * step;
      const double cs = j * step;
      const ModelParams p(c, base.delivery_cost(), cb, cs);
      cells.push_back({cb, cs, select_strategy(p, theta).best.strategy});
    }
  }
  return cells;
}

}  // namespace omni
