#include "cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <vector>

namespace omni::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// INI values may carry a trailing comment.
std::string strip_comment(std::string_view s) {
  const auto cut = s.find_first_of(";#");
  return trim(s.substr(0, cut));
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, text));
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& text) {
  Int v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid integer", key, text));
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"params.case",
       [](RunConfig& c, const auto& k, const auto& v) { apply_case(c, to_int<int>(k, v)); }},
      {"params.shipping", [](RunConfig& c, const auto& k, const auto& v) { c.shipping = to_double(k, v); }},
      {"params.delivery_cost",
       [](RunConfig& c, const auto& k, const auto& v) { c.delivery_cost = to_double(k, v); }},
      {"params.bops_cost", [](RunConfig& c, const auto& k, const auto& v) { c.bops_cost = to_double(k, v); }},
      {"params.store_cost",
       [](RunConfig& c, const auto& k, const auto& v) { c.store_cost = to_double(k, v); }},
      {"theta.min", [](RunConfig& c, const auto& k, const auto& v) { c.theta_min = to_double(k, v); }},
      {"theta.max", [](RunConfig& c, const auto& k, const auto& v) { c.theta_max = to_double(k, v); }},
      {"theta.step", [](RunConfig& c, const auto& k, const auto& v) { c.theta_step = to_double(k, v); }},
      {"season.periods", [](RunConfig& c, const auto& k, const auto& v) { c.periods = to_int<int>(k, v); }},
      {"season.alpha", [](RunConfig& c, const auto& k, const auto& v) { c.alpha = to_double(k, v); }},
      {"season.store_inventory0",
       [](RunConfig& c, const auto& k, const auto& v) { c.store_inventory0 = to_double(k, v); }},
      {"season.scenario",
       [](RunConfig& c, const auto& k, const auto& v) {
         const auto s = parse_scenario(v);
         if (!s) throw ConfigError(fmt::format("{}: unknown scenario '{}'", k, v));
         c.scenario = *s;
       }},
      {"season.theta_noise",
       [](RunConfig& c, const auto& k, const auto& v) {
         if (v == "off" || v == "none") {
           c.theta_noise.reset();
         } else {
           c.theta_noise = to_double(k, v);
         }
       }},
      {"season.always_bops_menu",
       [](RunConfig& c, const auto& k, const auto& v) {
         const auto m = parse_bops_menu(v);
         if (!m) throw ConfigError(fmt::format("{}: expected 'all' or 'be_only', got '{}'", k, v));
         c.always_bops_menu = *m;
       }},
      {"season.seed",
       [](RunConfig& c, const auto& k, const auto& v) { c.seed = to_int<std::uint64_t>(k, v); }},
      {"montecarlo.replications",
       [](RunConfig& c, const auto& k, const auto& v) { c.replications = to_int<std::size_t>(k, v); }},
      {"montecarlo.threads",
       [](RunConfig& c, const auto& k, const auto& v) { c.threads = to_int<unsigned>(k, v); }},
      {"regions.plane", [](RunConfig& c, const auto&, const auto& v) { c.plane = v; }},
      {"regions.theta", [](RunConfig& c, const auto& k, const auto& v) { c.region_theta = to_double(k, v); }},
      {"regions.bops", [](RunConfig& c, const auto& k, const auto& v) { c.region_bops = to_bool(k, v); }},
      {"regions.samples", [](RunConfig& c, const auto& k, const auto& v) { c.samples = to_int<int>(k, v); }},
      {"regions.cost_cells",
       [](RunConfig& c, const auto& k, const auto& v) { c.cost_cells = to_int<int>(k, v); }},
  };
  return table;
}

}  // namespace

ModelParams RunConfig::params() const {
  return ModelParams(shipping, delivery_cost, bops_cost, store_cost);
}

SeasonConfig RunConfig::season() const {
  SeasonConfig s;
  s.periods = periods;
  s.alpha = alpha;
  s.store_inventory0 = store_inventory0;
  s.params = params();
  s.scenario = scenario;
  s.seed = seed;
  s.theta_noise = theta_noise;
  s.always_bops_menu = always_bops_menu;
  return s;
}

void RunConfig::validate() const {
  if (!(theta_min >= 0.0 && theta_max <= 1.0 && theta_min <= theta_max)) {
    throw ConfigError("theta grid must satisfy 0 <= min <= max <= 1");
  }
  if (!(theta_step > 0.0)) throw ConfigError("theta.step must be positive");
  if (periods < 1) throw ConfigError("season.periods must be >= 1");
  if (alpha < 0.0) throw ConfigError("season.alpha must be >= 0");
  if (store_inventory0 < 0.0) throw ConfigError("season.store_inventory0 must be >= 0");
  if (theta_noise && !(*theta_noise >= 0.0 && *theta_noise <= 1.0)) {
    throw ConfigError("season.theta_noise must lie in [0, 1] or be 'off'");
  }
  if (replications < 1) throw ConfigError("montecarlo.replications must be >= 1");
  if (plane != "segments" && plane != "prices" && plane != "costs") {
    throw ConfigError(fmt::format("regions.plane: unknown plane '{}'", plane));
  }
  if (!(region_theta >= 0.0 && region_theta <= 1.0)) {
    throw ConfigError("regions.theta must lie in [0, 1]");
  }
  if (samples < 2) throw ConfigError("regions.samples must be >= 2");
  if (cost_cells < 1) throw ConfigError("regions.cost_cells must be >= 1");
}

KeyValues RunConfig::to_map() const {
  // "{}" prints the shortest string that round-trips.
  KeyValues kv;
  kv["params.shipping"] = fmt::format("{}", shipping);
  kv["params.delivery_cost"] = fmt::format("{}", delivery_cost);
  kv["params.bops_cost"] = fmt::format("{}", bops_cost);
  kv["params.store_cost"] = fmt::format("{}", store_cost);
  kv["theta.min"] = fmt::format("{}", theta_min);
  kv["theta.max"] = fmt::format("{}", theta_max);
  kv["theta.step"] = fmt::format("{}", theta_step);
  kv["season.periods"] = fmt::format("{}", periods);
  kv["season.alpha"] = fmt::format("{}", alpha);
  kv["season.store_inventory0"] = fmt::format("{}", store_inventory0);
  kv["season.scenario"] = std::string(to_string(scenario));
  kv["season.theta_noise"] = theta_noise ? fmt::format("{}", *theta_noise) : "off";
  kv["season.always_bops_menu"] = std::string(to_string(always_bops_menu));
  kv["season.seed"] = fmt::format("{}", seed);
  kv["montecarlo.replications"] = fmt::format("{}", replications);
  kv["montecarlo.threads"] = fmt::format("{}", threads);
  kv["regions.plane"] = plane;
  kv["regions.theta"] = fmt::format("{}", region_theta);
  kv["regions.bops"] = region_bops ? "true" : "false";
  kv["regions.samples"] = fmt::format("{}", samples);
  kv["regions.cost_cells"] = fmt::format("{}", cost_cells);
  return kv;
}

KeyValues read_ini(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  KeyValues kv;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(fmt::format("{}: key '{}' is outside any section", path.string(), section));
    }
    for (const auto& [key, value] : body) {
      kv[section + "." + key] = strip_comment(value.data());
    }
  }
  return kv;
}

void apply(RunConfig& cfg, const KeyValues& kv) {
  const auto& table = setters();
  // The preset goes first so explicit cost keys override it.
  if (auto it = kv.find("params.case"); it != kv.end()) {
    table.at(it->first)(cfg, it->first, it->second);
  }
  for (const auto& [key, value] : kv) {
    if (key == "params.case") continue;
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
    it->second(cfg, key, value);
  }
}

void apply_case(RunConfig& cfg, int number) {
  if (number < 1 || number > 3) {
    throw ConfigError(fmt::format("case must be 1, 2 or 3 (got {})", number));
  }
  const ModelParams p = reference_case(number);
  cfg.shipping = p.shipping();
  cfg.delivery_cost = p.delivery_cost();
  cfg.bops_cost = p.bops_cost();
  cfg.store_cost = p.store_cost();
}

}  // namespace omni::cli
