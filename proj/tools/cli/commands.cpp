#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ostream>

#include "omni/season.hpp"
#include "omni/strategy.hpp"

namespace omni::cli {

namespace {

std::string num(double v) { return format_number(v); }
std::string num(long v) { return fmt::format("{}", v); }
std::string num(std::size_t v) { return fmt::format("{}", v); }
std::string flag(bool b) { return b ? "1" : "0"; }
std::string name(Region r) { return std::string(to_string(r)); }

std::vector<double> theta_grid(const RunConfig& cfg) {
  const auto steps =
      static_cast<long>(std::llround((cfg.theta_max - cfg.theta_min) / cfg.theta_step));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    grid.push_back(std::min(cfg.theta_min + static_cast<double>(i) * cfg.theta_step, cfg.theta_max));
  }
  return grid;
}

}  // namespace

std::vector<NamedTable> cmd_analyze(const RunConfig& cfg, std::ostream& log) {
  const ModelParams params = cfg.params();
  CsvTable curves({"theta", "stage", "strategy", "bops_offered", "p_e", "p_s", "d_e", "d_b", "d_s",
                   "profit", "feasible", "winner"});
  for (double th : theta_grid(cfg)) {
    const Theta theta(th);
    const Selection sel = select_strategy(params, theta);
    for (const StrategyOutcome& o : sel.menu) {
      curves.add({num(th), std::string(to_string(theta.stage())), name(o.strategy),
                  flag(o.bops_offered), num(o.prices.online), num(o.prices.store),
                  num(o.demands.delivery), num(o.demands.bops), num(o.demands.store), num(o.profit),
                  flag(o.feasible), name(sel.best.strategy)});
    }
  }

  const Thresholds t = thresholds(params);
  CsvTable thr({"threshold", "value"});
  thr.add({"theta_SEL", num(t.sel)})
      .add({"theta_BS_L", num(t.bops_store_lower)})
      .add({"theta_BS_U", num(t.bops_store_upper)})
      .add({"theta_S_E", num(t.store_online)})
      .add({"theta_S_minus", num(t.store_minus)})
      .add({"theta_S_plus", num(t.store_plus)});
  for (const auto& row : {std::pair{"theta_SEL", t.sel}, {"theta_BS_L", t.bops_store_lower},
                          {"theta_BS_U", t.bops_store_upper}, {"theta_S_E", t.store_online},
                          {"theta_S-", t.store_minus}, {"theta_S+", t.store_plus}}) {
    fmt::print(log, "{:<11} {:.6f}\n", row.first, row.second);
  }
  return {{"analyze.csv", std::move(curves)}, {"thresholds.csv", std::move(thr)}};
}

namespace {

// Samples y = intercept + slope * x for x in [x0, x1], keeping points whose y
// lies in [lo, hi].
void add_line(CsvTable& t, const std::string& curve, bool bops, double theta, double x0, double x1,
              double slope, double intercept, double lo, double hi, int samples, double eps) {
  for (int i = 0; i < samples; ++i) {
    const double x = x0 + (x1 - x0) * i / (samples - 1);
    const double y = intercept + slope * x;
    if (y < lo - eps || y > hi + eps) continue;
    t.add({curve, flag(bops), num(theta), num(x), num(y)});
  }
}

void add_vertical(CsvTable& t, const std::string& curve, bool bops, double theta, double x,
                  double y0, double y1, int samples) {
  if (y1 < y0) return;
  for (int i = 0; i < samples; ++i) {
    t.add({curve, flag(bops), num(theta), num(x), num(y0 + (y1 - y0) * i / (samples - 1))});
  }
}

}  // namespace

std::vector<NamedTable> cmd_regions(const RunConfig& cfg, std::ostream& log) {
  const ModelParams params = cfg.params();
  const double c = params.shipping();
  const double th = cfg.region_theta;
  const bool bops = cfg.region_bops;
  const int n = cfg.samples;
  const double eps = params.tolerance();

  if (cfg.plane == "costs") {
    CsvTable t({"bops_cost", "store_cost", "winner"});
    for (const CostCell& cell : cost_region_map(params, Theta(th), cfg.cost_cells)) {
      t.add({num(cell.bops_cost), num(cell.store_cost), name(cell.winner)});
    }
    fmt::print(log, "cost map: {} cells at theta {}\n", t.rows(), num(th));
    return {{"regions_costs.csv", std::move(t)}};
  }

  CsvTable t({"curve", "bops_offered", "theta", "x", "y"});
  if (cfg.plane == "segments") {
    // (d, delta) plane; delta ranges over [-2 theta c, 2c].
    const double lo = -2.0 * th * c;
    const double hi = 2.0 * c;
    const bool store_exists = th > 0.0;  // u_s = -d at theta = 0
    if (bops) {
      if (store_exists) {
        add_line(t, "bops|store", true, th, 0.0, c, 0.0, (2.0 - 2.0 * th) * c, lo, hi, n, eps);
        add_line(t, "delivery|store", true, th, c, 2.0 * c, 1.0, (1.0 - 2.0 * th) * c, lo, hi, n,
                 eps);
      }
      add_vertical(t, "bops|delivery", true, th, c, lo, std::min(hi, (2.0 - 2.0 * th) * c), n);
    } else if (store_exists) {
      add_line(t, "delivery|store", false, th, 0.0, 2.0 * c, 1.0, (1.0 - 2.0 * th) * c, lo, hi, n,
               eps);
    }
  } else {
    // (p_e, theta p_s) plane; region lines are theta p_s = p_e - delta*.
    const double hi = 2.0 * th * c;
    if (bops) {
      add_line(t, "BE|SE", true, th, 0.0, 2.0 * c, 1.0, -(2.0 - 2.0 * th) * c, 0.0, hi, n, eps);
    } else {
      add_line(t, "E|SE", false, th, 0.0, 2.0 * c, 1.0, -(1.0 - 2.0 * th) * c, 0.0, hi, n, eps);
    }
    add_line(t, "SE|S", bops, th, 0.0, 2.0 * c, 1.0, -(3.0 - 2.0 * th) * c, 0.0, hi, n, eps);
    add_vertical(t, "L|U", bops, th, c, 0.0, hi, n);
  }
  fmt::print(log, "{} plane: {} boundary points at theta {}\n", cfg.plane, t.rows(), num(th));
  return {{"regions_" + cfg.plane + ".csv", std::move(t)}};
}

std::vector<NamedTable> cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const SeasonRecord rec = simulate_season(cfg.season());
  CsvTable t({"t", "theta", "strategy", "forced", "p_e", "p_s", "d_e", "d_b", "d_s", "store_rate",
              "store_demand", "store_sales", "inventory_end", "profit"});
  for (const SeasonRow& r : rec.rows) {
    t.add({fmt::format("{}", r.period), num(r.theta), name(r.strategy), flag(r.forced_online),
           num(r.prices.online), num(r.prices.store), num(r.demand.delivery), num(r.demand.bops),
           num(r.demand.store), num(r.store_rate), num(r.store_demand), num(r.store_sales),
           num(r.inventory_end), num(r.profit)});
  }
  std::string periods;
  for (int p : rec.switching_periods) periods += fmt::format(" {}", p);
  fmt::print(log, "switching periods:{}\n", periods.empty() ? " none" : periods);
  fmt::print(log, "path: {}\n", rec.path());
  fmt::print(log, "total profit: {}\n", num(rec.total_profit));
  return {{"season.csv", std::move(t)}};
}

std::vector<NamedTable> cmd_montecarlo(const RunConfig& cfg, std::ostream& log) {
  const MonteCarloResult mc = monte_carlo(cfg.season(), cfg.replications, cfg.threads);

  CsvTable summary({"scenario", "replications", "mean", "sd", "min", "median", "max"});
  CsvTable switching({"scenario", "kind", "period", "paths"});
  CsvTable paths({"scenario", "path", "paths"});
  for (const ScenarioSummary& s : mc.scenarios) {
    const std::string sc(to_string(s.scenario));
    summary.add({sc, num(s.totals.size()), num(s.mean), num(s.sd), num(s.min), num(s.median),
                 num(s.max)});
    for (const auto& [period, count] : s.switch_periods) {
      switching.add({sc, "first_switch", fmt::format("{}", period), num(count)});
    }
    if (s.no_switch > 0) switching.add({sc, "first_switch", "NONE", num(s.no_switch)});
    for (const auto& [period, count] : s.none_moves_online) {
      switching.add({sc, "none_moves_online", fmt::format("{}", period), num(count)});
    }
    for (const auto& [period, count] : s.stockouts) {
      switching.add({sc, "stockout", fmt::format("{}", period), num(count)});
    }
    for (const auto& [path, count] : s.path_types) paths.add({sc, path, num(count)});
    fmt::print(log, "{:<15} mean {:>12}  sd {:>10}\n", sc, num(s.mean), num(s.sd));
  }

  CsvTable gains({"comparison", "gain_pct", "paired_mean_diff", "paired_se"});
  const PairedDifference d1 = mc.paired(Scenario::OptimalSwitch, Scenario::AlwaysBops);
  const PairedDifference d2 = mc.paired(Scenario::OptimalSwitch, Scenario::NeverBops);
  gains.add({"optimal_vs_always_bops", num(mc.gain_vs_always_pct), num(d1.mean),
             num(d1.standard_error)});
  gains.add({"optimal_vs_never_bops", num(mc.gain_vs_never_pct), num(d2.mean),
             num(d2.standard_error)});
  fmt::print(log, "gain vs always_bops: {}%  vs never_bops: {}%\n", num(mc.gain_vs_always_pct),
             num(mc.gain_vs_never_pct));

  return {{"montecarlo.csv", std::move(summary)},
          {"montecarlo_gains.csv", std::move(gains)},
          {"montecarlo_switching.csv", std::move(switching)},
          {"montecarlo_paths.csv", std::move(paths)}};
}

bool is_command(std::string_view name) noexcept {
  return name == "analyze" || name == "regions" || name == "simulate" || name == "montecarlo";
}

RunManifest run_command(std::string_view command, const RunConfig& cfg,
                        const std::filesystem::path& out_dir, std::ostream& log) {
  cfg.validate();
  RunManifest m;
  m.version = OMNI_VERSION;
  m.command = std::string(command);
  m.config = cfg.to_map();
  m.config_hash = config_hash(m.config);
  m.seed = cfg.seed;
  m.started_at = utc_timestamp();

  std::vector<NamedTable> tables;
  if (command == "analyze") {
    tables = cmd_analyze(cfg, log);
  } else if (command == "regions") {
    tables = cmd_regions(cfg, log);
  } else if (command == "simulate") {
    tables = cmd_simulate(cfg, log);
  } else if (command == "montecarlo") {
    tables = cmd_montecarlo(cfg, log);
  } else {
    throw ConfigError(fmt::format("unknown command '{}'", command));
  }

  std::filesystem::create_directories(out_dir);
  for (const NamedTable& nt : tables) {
    write_file(out_dir / nt.file, nt.table.str());
    m.outputs.push_back(describe_output(out_dir, nt.file));
  }
  m.finished_at = utc_timestamp();
  write_manifest(out_dir / "manifest.json", m);
  return m;
}

}  // namespace omni::cli
