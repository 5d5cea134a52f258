#include "omni/season.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace omni {

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::AlwaysBops:
      return "always_bops";
    case Scenario::NeverBops:
      return "never_bops";
    case Scenario::OptimalSwitch:
      return "optimal_switch";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view text) noexcept {
  for (Scenario s : kAllScenarios) {
    if (to_string(s) == text) return s;
  }
  if (text == "1") return Scenario::AlwaysBops;
  if (text == "2") return Scenario::NeverBops;
  if (text == "3" || text == "optimal") return Scenario::OptimalSwitch;
  return std::nullopt;
}

std::string_view to_string(BopsMenu m) noexcept {
  return m == BopsMenu::BeOnly ? "be_only" : "all";
}

std::optional<BopsMenu> parse_bops_menu(std::string_view text) noexcept {
  if (text == "all") return BopsMenu::AllRegions;
  if (text == "be_only") return BopsMenu::BeOnly;
  return std::nullopt;
}

std::span<const MenuEntry> menu_for(Scenario s, BopsMenu bops_menu) noexcept {
  switch (s) {
    case Scenario::AlwaysBops:
      if (bops_menu == BopsMenu::BeOnly) return kBeOnlyMenu;
      return kBopsMenu;
    case Scenario::NeverBops:
      return kNoBopsMenu;
    case Scenario::OptimalSwitch:
      return kFullMenu;
  }
  return kFullMenu;
}

void SeasonConfig::validate() const {
  if (periods < 1) throw std::invalid_argument("season needs at least one period");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("theta decay rate alpha must be >= 0");
  }
  if (!(store_inventory0 >= 0.0) || !std::isfinite(store_inventory0)) {
    throw std::invalid_argument("initial store inventory must be >= 0");
  }
  if (theta_noise && !(*theta_noise >= 0.0 && *theta_noise <= 1.0)) {
    throw std::invalid_argument("theta_noise must be a probability");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(base ^ mix(stream));
}

std::vector<Theta> theta_path(double alpha, int periods, std::optional<double> advance_probability,
                              std::mt19937_64& rng) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  std::vector<Theta> path;
  path.reserve(static_cast<std::size_t>(std::max(periods, 0)));
  int step = 0;
  for (int t = 1; t <= periods; ++t) {
    if (!advance_probability) {
      step = t;
    } else if (std::bernoulli_distribution(*advance_probability)(rng)) {
      ++step;
    }
    path.emplace_back(1.0 / (1.0 + alpha * step));
  }
  return path;
}

PeriodResult simulate_period(const ModelParams& params, const SeasonState& state, Theta theta,
                             std::span<const MenuEntry> menu, std::mt19937_64& rng) {
  SeasonRow row;
  row.period = state.period + 1;
  row.theta = theta.value();

  StrategyOutcome outcome;
  if (state.inventory <= 0.0) {
    outcome = optimal_in_region(params, theta, Region::E, false);
    row.forced_online = true;
  } else {
    outcome = select_from(params, theta, menu).best;
  }
  row.strategy = outcome.strategy;
  row.prices = outcome.prices;
  row.demand = outcome.demands;

  // Delivery is deterministic; only walk-ins and pickups hit the shelf.
  row.store_rate = outcome.demands.store_channel();
  if (row.store_rate > 0.0) {
    row.store_demand = std::poisson_distribution<long>(row.store_rate)(rng);
  }
  row.store_sales = std::min(static_cast<double>(row.store_demand), state.inventory);
  row.inventory_end = std::max(0.0, state.inventory - row.store_sales);

  double store_margin = 0.0;
  if (row.store_rate > 0.0) {
    store_margin = (outcome.demands.bops * (outcome.prices.online - params.bops_cost()) +
                    outcome.demands.store * (outcome.prices.store - params.store_cost())) /
                   row.store_rate;
  }
  row.profit = (outcome.prices.online - params.delivery_cost()) * outcome.demands.delivery +
               store_margin * row.store_sales;

  return {SeasonState{row.period, row.inventory_end}, row};
}

std::string SeasonRecord::path() const {
  std::string out;
  std::optional<Region> last;
  for (const SeasonRow& r : rows) {
    if (last && *last == r.strategy) continue;
    if (!out.empty()) out += '>';
    out += to_string(r.strategy);
    last = r.strategy;
  }
  return out;
}

namespace {

constexpr std::uint64_t kThetaStream = 0;

}  // namespace

SeasonRecord simulate_season(const SeasonConfig& cfg) {
  cfg.validate();
  std::mt19937_64 theta_rng(derive_seed(cfg.seed, kThetaStream));
  const std::vector<Theta> thetas = theta_path(cfg.alpha, cfg.periods, cfg.theta_noise, theta_rng);

  SeasonRecord record;
  record.rows.reserve(thetas.size());
  const auto menu = menu_for(cfg.scenario, cfg.always_bops_menu);
  SeasonState state{0, cfg.store_inventory0};
  for (const Theta& theta : thetas) {
    // One engine per period keeps draws aligned across scenarios.
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(state.period) + 1));
    PeriodResult step = simulate_period(cfg.params, state, theta, menu, rng);
    state = step.state;
    const SeasonRow& row = step.row;

    if (!record.rows.empty() && record.rows.back().strategy != row.strategy) {
      record.switching_periods.push_back(row.period);
      if (!row.forced_online && !record.first_switch) record.first_switch = row.period;
    }
    if (row.forced_online && !record.stockout_period) record.stockout_period = row.period;
    record.total_profit += row.profit;
    record.rows.push_back(row);
  }
  return record;
}

const ScenarioSummary& MonteCarloResult::of(Scenario s) const {
  for (const ScenarioSummary& summary : scenarios) {
    if (summary.scenario == s) return summary;
  }
  throw std::out_of_range("scenario missing from Monte Carlo result");
}

PairedDifference MonteCarloResult::paired(Scenario a, Scenario b) const {
  const auto& xa = of(a).totals;
  const auto& xb = of(b).totals;
  const std::size_t n = xa.size();
  PairedDifference out;
  if (n == 0) return out;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += xa[i] - xb[i];
  out.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = xa[i] - xb[i] - out.mean;
      ss += dev * dev;
    }
    out.standard_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return out;
}

namespace {

struct PathSummary {
  double total = 0.0;
  std::optional<int> first_switch;
  std::optional<int> stockout;
  std::string path;
};

void summarize(ScenarioSummary& s, const std::vector<PathSummary>& paths) {
  const std::size_t n = paths.size();
  s.totals.reserve(n);
  for (const PathSummary& p : paths) {
    s.totals.push_back(p.total);
    if (p.first_switch) {
      ++s.switch_periods[*p.first_switch];
    } else {
      ++s.no_switch;
      if (p.stockout) ++s.none_moves_online[*p.stockout];
    }
    if (p.stockout) ++s.stockouts[*p.stockout];
    ++s.path_types[p.path];
  }
  if (n == 0) return;

  double sum = 0.0;
  for (double x : s.totals) sum += x;
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : s.totals) ss += (x - s.mean) * (x - s.mean);
  s.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

  std::vector<double> sorted = s.totals;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

MonteCarloResult monte_carlo(const SeasonConfig& cfg, std::size_t replications,
                             unsigned threads) {
  cfg.validate();
  if (replications < 1) throw std::invalid_argument("need at least one replication");

  constexpr std::size_t kScenarios = std::size(kAllScenarios);
  std::vector<std::vector<PathSummary>> paths(kScenarios,
                                              std::vector<PathSummary>(replications));

  const auto run = [&](std::size_t job) {
    const std::size_t rep = job / kScenarios;
    const std::size_t sc = job % kScenarios;
    SeasonConfig local = cfg;
    local.scenario = kAllScenarios[sc];
    local.seed = derive_seed(cfg.seed, rep);
    const SeasonRecord record = simulate_season(local);
    paths[sc][rep] = {record.total_profit, record.first_switch, record.stockout_period,
                      record.path()};
  };

  const std::size_t jobs = replications * kScenarios;
  unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, jobs));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs; ++j) run(j);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < jobs; j += workers) run(j);
      });
    }
  }

  MonteCarloResult result;
  for (std::size_t sc = 0; sc < kScenarios; ++sc) {
    result.scenarios[sc].scenario = kAllScenarios[sc];
    summarize(result.scenarios[sc], paths[sc]);
  }
  const double always = result.of(Scenario::AlwaysBops).mean;
  const double never = result.of(Scenario::NeverBops).mean;
  const double optimal = result.of(Scenario::OptimalSwitch).mean;
  result.gain_vs_always_pct = 100.0 * (optimal - always) / always;
  result.gain_vs_never_pct = 100.0 * (optimal - never) / never;
  return result;
}

}  // namespace omni
