#include "omni/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace omni::oracle {

void OracleConfig::validate() const {
  if (d_resolution < 101 || p_resolution < 101) {
    throw std::invalid_argument("oracle resolutions must be at least 101");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("oracle tolerance must be positive");
}

namespace {

// Utilities written out independently of omni::utilities. The store and
// BOPS utilities share slope -1 in the travel cost, so they are kept as
// intercept minus distance.
struct Intercepts {
  double delivery;  // c - p_e, the same for everyone
  double bops;      // 2c - p_e
  double store;     // theta (2c - p_s)
  double tie;       // utilities this close count as equal
};

Intercepts intercepts(const ModelParams& params, Theta theta, const PricePair& prices) {
  const double c = params.shipping();
  return {c - prices.online, 2.0 * c - prices.online, theta.value() * (2.0 * c - prices.store),
          params.tolerance()};
}

enum class Option { Delivery, Bops, Store };

// Highest utility wins; ties (within 1e-12 c) favour BOPS, then
// delivery, then the store, as the weak segment inequalities do.
struct Choice {
  Option option;
  double utility;
};

Choice choose(const Intercepts& a, double d, bool bops_offered) {
  const double ue = a.delivery;
  const double us = a.store - d;
  if (bops_offered) {
    const double ub = a.bops - d;
    if (ub >= ue - a.tie && ub >= us - a.tie) return {Option::Bops, ub};
  }
  if (ue >= us - a.tie) return {Option::Delivery, ue};
  return {Option::Store, us};
}

struct Midpoints {
  std::size_t n;
  double h;
  [[nodiscard]] double at(std::size_t k) const noexcept {
    return (static_cast<double>(k) + 0.5) * h;
  }
};

Midpoints midpoints(const ModelParams& params, const OracleConfig& cfg) {
  return {cfg.d_resolution, params.product_value() / static_cast<double>(cfg.d_resolution)};
}

// Number of leading midpoints satisfying `pred`, which must hold on a prefix.
// `guess` only seeds the search.
template <typename Pred>
std::size_t prefix_count(const Midpoints& m, double guess, Pred&& pred) {
  double est = std::floor(guess / m.h + 0.5);
  est = std::clamp(est, 0.0, static_cast<double>(m.n));
  auto k = static_cast<std::size_t>(est);
  while (k > 0 && !pred(m.at(k - 1))) --k;
  while (k < m.n && pred(m.at(k))) ++k;
  return k;
}

DemandVector count_with(const Intercepts& a, bool bops_offered, const Midpoints& m) {
  // Which of BOPS/store ranks above the other does not depend on d; whichever
  // it is beats delivery for small d and loses to it beyond one switch point.
  const bool bops_side = bops_offered && a.bops >= a.store - a.tie;
  const double near = bops_side ? a.bops : a.store;

  const auto near_chosen = [&](double d) {
    const Choice ch = choose(a, d, bops_offered);
    return ch.option != Option::Delivery;
  };
  const auto near_buys = [&](double d) {
    const Choice ch = choose(a, d, bops_offered);
    return ch.option != Option::Delivery && ch.utility >= -a.tie;
  };

  const std::size_t chosen = prefix_count(m, near - a.delivery, near_chosen);
  const std::size_t buying = prefix_count(m, std::min(near, near - a.delivery), near_buys);
  const std::size_t delivery = a.delivery >= -a.tie ? m.n - chosen : 0;

  DemandVector out;
  out.delivery = static_cast<double>(delivery) * m.h;
  (bops_side ? out.bops : out.store) = static_cast<double>(buying) * m.h;
  return out;
}

}  // namespace

DemandVector integrate_demand(const ModelParams& params, Theta theta, const PricePair& prices,
                              bool bops_offered, const OracleConfig& cfg) {
  cfg.validate();
  require_admissible(params, prices);
  const Intercepts a = intercepts(params, theta, prices);
  const Midpoints m = midpoints(params, cfg);
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t k = 0; k < m.n; ++k) {
    const Choice ch = choose(a, m.at(k), bops_offered);
    if (ch.utility >= -a.tie) ++counts[static_cast<int>(ch.option)];
  }
  return {static_cast<double>(counts[0]) * m.h, static_cast<double>(counts[1]) * m.h,
          static_cast<double>(counts[2]) * m.h};
}

DemandVector count_demand(const ModelParams& params, Theta theta, const PricePair& prices,
                          bool bops_offered, const OracleConfig& cfg) {
  cfg.validate();
  require_admissible(params, prices);
  return count_with(intercepts(params, theta, prices), bops_offered, midpoints(params, cfg));
}

double integrate_profit(const ModelParams& params, Theta theta, const PricePair& prices,
                        bool bops_offered, const OracleConfig& cfg) {
  return profit_of(params, prices, integrate_demand(params, theta, prices, bops_offered, cfg));
}

double price_step(const ModelParams& params, const OracleConfig& cfg) noexcept {
  return params.product_value() / static_cast<double>(cfg.p_resolution - 1);
}

double lipschitz_bound(const ModelParams& params) noexcept {
  const double worst = std::max({params.delivery_cost(), params.bops_cost(), params.store_cost()});
  return 4.0 * params.shipping() + worst;
}

namespace {

// Grid value i of n over [0, 2c]; the midpoint lands exactly on c.
double grid_price(double c, std::size_t i, std::size_t n) {
  return c * (2.0 * static_cast<double>(i) / static_cast<double>(n - 1));
}

void offer(std::optional<GridPoint>& slot, const PricePair& p, double value) {
  if (!slot || value > slot->profit) slot = GridPoint{p, value};
}

GridSweep sweep_rows(const ModelParams& params, Theta theta, bool bops_offered,
                     const OracleConfig& cfg, std::size_t row_begin, std::size_t row_end) {
  const double c = params.shipping();
  const Midpoints m = midpoints(params, cfg);
  const std::size_t n = cfg.p_resolution;
  GridSweep out;
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const double online = grid_price(c, i, n);
    for (std::size_t j = 0; j < n; ++j) {
      const PricePair p{online, grid_price(c, j, n)};
      const DemandVector d = count_with(intercepts(params, theta, p), bops_offered, m);
      const double value = profit_of(params, p, d);
      const Region region = classify_region(params, theta, p, bops_offered);
      offer(out.overall, p, value);
      offer(out.by_region[index_of(region)], p, value);
      ++out.points;
    }
  }
  return out;
}

void merge_into(GridSweep& acc, const GridSweep& part) {
  const auto take = [](std::optional<GridPoint>& a, const std::optional<GridPoint>& b) {
    if (b && (!a || b->profit > a->profit)) a = b;
  };
  take(acc.overall, part.overall);
  for (std::size_t r = 0; r < acc.by_region.size(); ++r) take(acc.by_region[r], part.by_region[r]);
  acc.points += part.points;
}

}  // namespace

GridSweep grid_sweep(const ModelParams& params, Theta theta, bool bops_offered,
                     const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t rows = cfg.p_resolution;
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, 64u);

  if (workers == 1) return sweep_rows(params, theta, bops_offered, cfg, 0, rows);

  // Contiguous row blocks merged in ascending order keep the result, including
  // tie-breaks, identical to the sequential sweep.
  std::vector<GridSweep> parts(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = rows * w / workers;
      const std::size_t end = rows * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        parts[w] = sweep_rows(params, theta, bops_offered, cfg, begin, end);
      });
    }
  }
  GridSweep result;
  for (const GridSweep& part : parts) merge_into(result, part);
  return result;
}

GridPoint grid_best(const ModelParams& params, Theta theta, bool bops_offered,
                    std::optional<Region> region_filter, const OracleConfig& cfg) {
  const GridSweep sweep = grid_sweep(params, theta, bops_offered, cfg);
  const std::optional<GridPoint>& hit = region_filter ? sweep.in(*region_filter) : sweep.overall;
  if (!hit) {
    throw EmptyRegion(std::string("no grid point lies in region ") +
                      std::string(region_filter ? to_string(*region_filter) : "(any)"));
  }
  return *hit;
}

}  // namespace omni::oracle
