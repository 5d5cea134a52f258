#include <gtest/gtest.h>

#include <cmath>

#include "omni/season.hpp"

using namespace omni;

namespace {

SeasonConfig deterministic(int case_number, double alpha) {
  SeasonConfig cfg;
  cfg.params = reference_case(case_number);
  cfg.alpha = alpha;
  cfg.theta_noise.reset();
  cfg.seed = 7;
  return cfg;
}

// First t with theta_t strictly below `threshold` on the noiseless path.
int first_below(double alpha, double threshold, int periods) {
  for (int t = 1; t <= periods; ++t) {
    if (1.0 / (1.0 + alpha * t) < threshold) return t;
  }
  return 0;
}

}  // namespace

TEST(ThetaPath, Deterministic) {
  std::mt19937_64 rng(1);
  const auto path = theta_path(0.05, 12, std::nullopt, rng);
  ASSERT_EQ(path.size(), 12u);
  EXPECT_NEAR(path.front().value(), 1.0 / 1.05, 1e-15);
  EXPECT_NEAR(path.back().value(), 0.625, 1e-15);
}

TEST(ThetaPath, NoDecay) {
  std::mt19937_64 rng(1);
  for (const Theta& t : theta_path(0.0, 12, 0.95, rng)) EXPECT_EQ(t.value(), 1.0);
}

TEST(ThetaPath, NoisyPathStepsOrRepeats) {
  std::mt19937_64 rng(3);
  const double alpha = 0.05;
  int repeats = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto path = theta_path(alpha, 12, 0.95, rng);
    double prev = 1.0;
    for (const Theta& t : path) {
      const double k = (1.0 / t.value() - 1.0) / alpha;
      EXPECT_NEAR(k, std::round(k), 1e-9);
      EXPECT_TRUE(t.value() == prev || std::abs(1.0 / t.value() - 1.0 / prev - alpha) < 1e-12);
      if (t.value() == prev) ++repeats;
      prev = t.value();
    }
  }
  // 2400 steps at 5% stall: expect about 120.
  EXPECT_GT(repeats, 60);
  EXPECT_LT(repeats, 200);
}

TEST(SeasonConfig, Validation) {
  SeasonConfig cfg;
  cfg.periods = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.alpha = -0.1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.store_inventory0 = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.theta_noise = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(SimulatePeriod, SelAtHighTheta) {
  const ModelParams p = reference_case(1);
  std::mt19937_64 rng(123);
  const auto [state, row] =
      simulate_period(p, {0, 10.0}, Theta(0.9), menu_for(Scenario::OptimalSwitch), rng);
  EXPECT_EQ(row.strategy, Region::SEL);
  EXPECT_FALSE(row.forced_online);
  EXPECT_NEAR(row.store_rate, 1.0, 1e-12);
  const double ps = 0.8 / 0.9;
  EXPECT_NEAR(row.prices.store, ps, 1e-15);
  const double sales = std::min<double>(row.store_demand, 10.0);
  EXPECT_NEAR(row.profit, 0.5 * 1.0 + (ps - 0.1) * sales, 1e-12);
  EXPECT_EQ(state.inventory, 10.0 - sales);
  EXPECT_EQ(state.period, 1);
}

TEST(SimulatePeriod, ExpectedProfitMatchesClosedForm) {
  const ModelParams p = reference_case(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(i));
    sum += simulate_period(p, {0, 1e9}, Theta(0.9), menu_for(Scenario::OptimalSwitch), rng).row.profit;
  }
  EXPECT_NEAR(sum / n, 1.16 / 0.9, 0.01);
}

TEST(SimulatePeriod, EmptyStoreForcesOnline) {
  const ModelParams p = reference_case(1);
  std::mt19937_64 rng(1);
  for (double th : {0.2, 0.6, 1.0}) {
    const auto [state, row] = simulate_period(p, {3, 0.0}, Theta(th), menu_for(Scenario::AlwaysBops), rng);
    EXPECT_EQ(row.strategy, Region::E);
    EXPECT_TRUE(row.forced_online);
    EXPECT_NEAR(row.profit, 1.0, 1e-12);
    EXPECT_EQ(state.inventory, 0.0);
  }
}

TEST(SimulatePeriod, ZeroDrawLeavesInventory) {
  const ModelParams p = reference_case(1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto [state, row] =
        simulate_period(p, {0, 10.0}, Theta(0.9), menu_for(Scenario::OptimalSwitch), rng);
    if (row.store_demand != 0) continue;
    EXPECT_EQ(state.inventory, 10.0);
    EXPECT_NEAR(row.profit, 0.5, 1e-12);  // delivery leg only
    return;
  }
  FAIL() << "no zero draw in 200 seeds";
}

TEST(SimulatePeriod, PartialStockoutSellsWhatIsLeft) {
  const ModelParams p = reference_case(1);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed);
    const auto [state, row] =
        simulate_period(p, {0, 1.5}, Theta(0.9), menu_for(Scenario::OptimalSwitch), rng);
    if (row.store_demand < 2) continue;
    EXPECT_EQ(row.store_sales, 1.5);
    EXPECT_EQ(state.inventory, 0.0);
    return;
  }
  FAIL() << "no draw of 2 or more";
}

TEST(SimulateSeason, ReproducibleAndConservesInventory) {
  SeasonConfig cfg;
  cfg.seed = 99;
  const SeasonRecord a = simulate_season(cfg);
  const SeasonRecord b = simulate_season(cfg);
  ASSERT_EQ(a.rows.size(), 12u);
  double sold = 0.0;
  double prev = cfg.store_inventory0;
  bool empty = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].profit, b.rows[i].profit);
    EXPECT_EQ(a.rows[i].store_demand, b.rows[i].store_demand);
    EXPECT_LE(a.rows[i].inventory_end, prev);
    EXPECT_GE(a.rows[i].inventory_end, 0.0);
    if (empty) EXPECT_EQ(a.rows[i].strategy, Region::E);
    empty = a.rows[i].inventory_end == 0.0;
    prev = a.rows[i].inventory_end;
    sold += a.rows[i].store_sales;
  }
  EXPECT_DOUBLE_EQ(sold + a.rows.back().inventory_end, cfg.store_inventory0);
  EXPECT_EQ(a.total_profit, b.total_profit);
}

TEST(SimulateSeason, EmptyStoreAllOnline) {
  SeasonConfig cfg;
  cfg.store_inventory0 = 0.0;
  const SeasonRecord r = simulate_season(cfg);
  for (const SeasonRow& row : r.rows) EXPECT_EQ(row.strategy, Region::E);
  EXPECT_NEAR(r.total_profit, 12.0 * 1.0, 1e-12);
  EXPECT_TRUE(r.switching_periods.empty());
}

TEST(SimulateSeason, SinglePeriodHasNoSwitch) {
  SeasonConfig cfg;
  cfg.periods = 1;
  const SeasonRecord r = simulate_season(cfg);
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_TRUE(r.switching_periods.empty());
  EXPECT_FALSE(r.first_switch);
}

TEST(SimulateSeason, CaseOneSwitchAtCrossing) {
  // alpha = 0.07: theta_4 = 0.781 > 0.769 > theta_5 = 0.741, the SEL 1-4 / BEL 5 pattern.
  const SeasonRecord r = simulate_season(deterministic(1, 0.07));
  ASSERT_TRUE(r.first_switch);
  EXPECT_EQ(*r.first_switch, 5);
  for (int t = 0; t < 4; ++t) EXPECT_EQ(r.rows[t].strategy, Region::SEL);
  EXPECT_EQ(r.rows[4].strategy, Region::BEL);
}

TEST(SimulateSeason, CrossingPropertyAcrossAlphas) {
  const struct {
    int case_number;
    double threshold;
  } cases[] = {{1, 1.0 / 1.3}, {2, 1.0 / 1.4}, {3, (1.2 * 1.2) / (1.3 * 1.3)}};
  for (const auto& c : cases) {
    for (double alpha : {0.03, 0.045, 0.07, 0.09, 0.13}) {
      SeasonConfig cfg = deterministic(c.case_number, alpha);
      cfg.store_inventory0 = 1e9;  // keep stockouts out of the way
      const SeasonRecord r = simulate_season(cfg);
      const int expected = first_below(alpha, c.threshold, cfg.periods);
      if (expected == 0 || expected == 1) {
        EXPECT_FALSE(r.first_switch) << "case " << c.case_number << " alpha " << alpha;
      } else {
        ASSERT_TRUE(r.first_switch) << "case " << c.case_number << " alpha " << alpha;
        EXPECT_EQ(*r.first_switch, expected) << "case " << c.case_number << " alpha " << alpha;
      }
    }
  }
}

TEST(SimulateSeason, StockoutThenOnline) {
  // Find a seed whose draws empty the shelf inside the season.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeasonConfig cfg;
    cfg.seed = seed;
    const SeasonRecord r = simulate_season(cfg);
    if (!r.stockout_period) continue;
    const int t = *r.stockout_period;
    EXPECT_EQ(r.rows[t - 2].inventory_end, 0.0);
    for (int k = t - 1; k < 12; ++k) {
      EXPECT_EQ(r.rows[k].strategy, Region::E);
      EXPECT_TRUE(r.rows[k].forced_online);
    }
    return;
  }
  FAIL() << "no stockout in 100 seeds";
}

TEST(SimulateSeason, PathString) {
  const SeasonRecord r = simulate_season(deterministic(1, 0.07));
  EXPECT_EQ(r.path().rfind("SEL>BEL", 0), 0u);
}

TEST(MonteCarlo, SingleReplicationHistogram) {
  SeasonConfig cfg = deterministic(1, 0.07);
  const MonteCarloResult mc = monte_carlo(cfg, 1, 1);
  const ScenarioSummary& s = mc.of(Scenario::OptimalSwitch);
  EXPECT_EQ(s.totals.size(), 1u);
  EXPECT_EQ(s.switch_periods.size() + (s.no_switch > 0 ? 1 : 0), 1u);
}

TEST(MonteCarlo, CommonRandomNumbersAcrossScenarios) {
  // With the noiseless path every scenario sees the same draws, so a
  // scenario whose strategies coincide with another's gives equal totals.
  SeasonConfig cfg = deterministic(1, 0.07);
  const MonteCarloResult mc = monte_carlo(cfg, 50, 1);
  const auto& opt = mc.of(Scenario::OptimalSwitch).totals;
  const auto& always = mc.of(Scenario::AlwaysBops).totals;
  for (std::size_t i = 0; i < opt.size(); ++i) EXPECT_EQ(opt[i], always[i]);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResult) {
  SeasonConfig cfg;
  cfg.seed = 5;
  const MonteCarloResult a = monte_carlo(cfg, 64, 1);
  const MonteCarloResult b = monte_carlo(cfg, 64, 5);
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(a.scenarios[s].totals, b.scenarios[s].totals);
    EXPECT_EQ(a.scenarios[s].mean, b.scenarios[s].mean);
    EXPECT_EQ(a.scenarios[s].path_types, b.scenarios[s].path_types);
  }
}

TEST(MonteCarlo, OptimalNeverWorseOnAverage) {
  for (int case_number : {1, 2, 3}) {
    SeasonConfig cfg;
    cfg.params = reference_case(case_number);
    cfg.seed = 11;
    const MonteCarloResult mc = monte_carlo(cfg, 300);
    EXPECT_GE(mc.gain_vs_always_pct, 0.0) << case_number;
    EXPECT_GE(mc.gain_vs_never_pct, 0.0) << case_number;
  }
}

TEST(MonteCarlo, BeOnlyMenuShowsGainOverAlwaysBops) {
  SeasonConfig cfg;
  cfg.seed = 1;
  cfg.always_bops_menu = BopsMenu::BeOnly;
  const MonteCarloResult mc = monte_carlo(cfg, 300);
  EXPECT_GT(mc.gain_vs_always_pct, 3.0);
  EXPECT_GT(mc.paired(Scenario::OptimalSwitch, Scenario::AlwaysBops).mean, 0.0);
}

TEST(MonteCarlo, SummaryStatistics) {
  SeasonConfig cfg;
  cfg.seed = 3;
  const MonteCarloResult mc = monte_carlo(cfg, 101);
  for (const ScenarioSummary& s : mc.scenarios) {
    EXPECT_LE(s.min, s.median);
    EXPECT_LE(s.median, s.max);
    EXPECT_GE(s.sd, 0.0);
    std::size_t paths = 0;
    for (const auto& [_, n] : s.path_types) paths += n;
    EXPECT_EQ(paths, 101u);
    std::size_t switches = s.no_switch;
    for (const auto& [_, n] : s.switch_periods) switches += n;
    EXPECT_EQ(switches, 101u);
  }
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}
