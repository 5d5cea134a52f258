#include "omni/model.hpp"

#include <cmath>
#include <sstream>

namespace omni {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

ModelParams::ModelParams(double shipping, double delivery_cost, double bops_cost,
                         double store_cost)
    : shipping_(shipping),
      delivery_cost_(delivery_cost),
      bops_cost_(bops_cost),
      store_cost_(store_cost) {
  if (!std::isfinite(shipping) || shipping <= 0.0) {
    throw AssumptionViolation(describe("shipping cost c must be positive", shipping));
  }
  const auto check = [shipping](double cost, const char* name) {
    if (!std::isfinite(cost) || cost < 0.0) {
      throw AssumptionViolation(describe(name, cost));
    }
    if (cost >= shipping) {
      std::ostringstream os;
      os << name << " must be below the shipping cost " << shipping << " (got " << cost << ")";
      throw AssumptionViolation(os.str());
    }
  };
  check(delivery_cost, "delivery fulfillment cost c_e");
  check(bops_cost, "BOPS fulfillment cost c_b");
  check(store_cost, "store fulfillment cost c_s");
}

ModelParams reference_case(int number) {
  switch (number) {
    case 1:
      return ModelParams(1.0, 0.5, 0.4, 0.1);
    case 2:
      return ModelParams(1.0, 0.5, 0.6, 0.1);
    case 3:
      return ModelParams(1.0, 0.9, 0.8, 0.7);
    default:
      throw std::invalid_argument("reference case must be 1, 2 or 3");
  }
}

Theta::Theta(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError(describe("subjective probability must lie in [0, 1]", value));
  }
}

Stage Theta::stage() const noexcept {
  if (value_ > 0.5) return Stage::I;
  if (value_ > 0.0) return Stage::II;
  return Stage::III;
}

bool is_admissible(const ModelParams& params, const PricePair& prices) noexcept {
  const double cap = params.product_value() + params.tolerance();
  const double floor = -params.tolerance();
  return prices.online >= floor && prices.online <= cap && prices.store >= floor &&
         prices.store <= cap;
}

void require_admissible(const ModelParams& params, const PricePair& prices) {
  if (!is_admissible(params, prices)) {
    std::ostringstream os;
    os << "prices (" << prices.online << ", " << prices.store << ") outside [0, "
       << params.product_value() << "]";
    throw DomainError(os.str());
  }
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::I:
      return "I";
    case Stage::II:
      return "II";
    case Stage::III:
      return "III";
  }
  return "?";
}

std::string_view to_string(Segment segment) noexcept {
  switch (segment) {
    case Segment::Delivery:
      return "delivery";
    case Segment::Bops:
      return "bops";
    case Segment::Store:
      return "store";
    case Segment::None:
      return "none";
  }
  return "?";
}

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::BEL:
      return "BEL";
    case Region::BEU:
      return "BEU";
    case Region::SEL:
      return "SEL";
    case Region::SEU:
      return "SEU";
    case Region::S:
      return "S";
    case Region::E:
      return "E";
  }
  return "?";
}

std::optional<Region> parse_region(std::string_view text) noexcept {
  for (Region r : kAllRegions) {
    if (to_string(r) == text) return r;
  }
  if (text == "BE-L") return Region::BEL;
  if (text == "BE-U") return Region::BEU;
  if (text == "SE-L") return Region::SEL;
  if (text == "SE-U") return Region::SEU;
  return std::nullopt;
}

bool region_admissible(Region region, Stage stage, bool bops_offered) noexcept {
  switch (region) {
    case Region::BEL:
    case Region::BEU:
      return bops_offered;
    case Region::E:
      return !bops_offered;
    case Region::SEL:
      return stage == Stage::I || (!bops_offered && stage == Stage::II);
    case Region::SEU:
      return stage != Stage::III || !bops_offered;
    case Region::S:
      return stage == Stage::I;
  }
  return false;
}

double bops_store_gap(const ModelParams& p, Theta t) noexcept {
  return (2.0 - 2.0 * t.value()) * p.shipping();
}

double delivery_store_gap(const ModelParams& p, Theta t, double distance) noexcept {
  return (1.0 - 2.0 * t.value()) * p.shipping() + distance;
}

double store_only_gap(const ModelParams& p, Theta t) noexcept {
  return (3.0 - 2.0 * t.value()) * p.shipping();
}

namespace {

void require_distance(const ModelParams& params, double distance) {
  if (!(distance >= 0.0 && distance <= params.product_value())) {
    std::ostringstream os;
    os << "travel cost must lie in [0, " << params.product_value() << "] (got " << distance
       << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

Utilities utilities(const ModelParams& params, Theta theta, const PricePair& prices,
                    double distance, bool bops_offered) {
  require_distance(params, distance);
  const double c = params.shipping();
  const double th = theta.value();
  Utilities u;
  u.delivery = c - prices.online;
  if (bops_offered) u.bops = 2.0 * c - prices.online - distance;
  u.store = 2.0 * th * c - th * prices.store - distance;
  return u;
}

Segment classify_consumer(const ModelParams& params, Theta theta, const PricePair& prices,
                          double distance, bool bops_offered) {
  require_distance(params, distance);
  const double tol = params.tolerance();
  const double gap = prices.gap(theta);
  if (bops_offered) {
    if (distance <= params.shipping() + tol) {
      return gap <= bops_store_gap(params, theta) + tol ? Segment::Bops : Segment::Store;
    }
    return gap <= delivery_store_gap(params, theta, distance) + tol ? Segment::Delivery
                                                                    : Segment::Store;
  }
  const Utilities u = utilities(params, theta, prices, distance, false);
  return u.delivery >= u.store - tol ? Segment::Delivery : Segment::Store;
}

Segment purchase_decision(const ModelParams& params, Theta theta, const PricePair& prices,
                          double distance, bool bops_offered) {
  const Segment segment = classify_consumer(params, theta, prices, distance, bops_offered);
  const Utilities u = utilities(params, theta, prices, distance, bops_offered);
  double chosen = 0.0;
  switch (segment) {
    case Segment::Delivery:
      chosen = u.delivery;
      break;
    case Segment::Bops:
      chosen = *u.bops;
      break;
    case Segment::Store:
      chosen = u.store;
      break;
    case Segment::None:
      return Segment::None;
  }
  return chosen >= -params.tolerance() ? segment : Segment::None;
}

Region classify_region(const ModelParams& params, Theta theta, const PricePair& prices,
                       bool bops_offered) {
  require_admissible(params, prices);
  const double tol = params.tolerance();
  const double gap = prices.gap(theta);
  const bool low_online = prices.online <= params.shipping() + tol;

  Region region;
  const double split_gap =
      bops_offered ? bops_store_gap(params, theta) : delivery_store_gap(params, theta, 0.0);
  if (gap <= split_gap + tol) {
    region = bops_offered ? (low_online ? Region::BEL : Region::BEU) : Region::E;
  } else if (gap <= store_only_gap(params, theta) + tol) {
    region = low_online ? Region::SEL : Region::SEU;
  } else {
    region = Region::S;
  }

  if (!region_admissible(region, theta.stage(), bops_offered)) {
    std::ostringstream os;
    os << "region " << to_string(region) << " is empty in stage " << to_string(theta.stage())
       << (bops_offered ? " with" : " without") << " BOPS";
    throw EmptyRegion(os.str());
  }
  return region;
}

bool in_region_closure(const ModelParams& params, Theta theta, const PricePair& prices,
                       Region region, bool bops_offered) {
  if (!is_admissible(params, prices)) return false;
  if (!region_admissible(region, theta.stage(), bops_offered)) return false;

  const double tol = params.tolerance();
  const double gap = prices.gap(theta);
  const double c = params.shipping();
  const bool may_be_low = prices.online <= c + tol;
  const bool may_be_high = prices.online >= c - tol;
  const double split_gap =
      bops_offered ? bops_store_gap(params, theta) : delivery_store_gap(params, theta, 0.0);
  const double top_gap = store_only_gap(params, theta);

  switch (region) {
    case Region::BEL:
      return gap <= split_gap + tol && may_be_low;
    case Region::BEU:
      return gap <= split_gap + tol && may_be_high;
    case Region::E:
      return gap <= split_gap + tol;
    case Region::SEL:
      return gap >= split_gap - tol && gap <= top_gap + tol && may_be_low;
    case Region::SEU:
      return gap >= split_gap - tol && gap <= top_gap + tol && may_be_high;
    case Region::S:
      return gap >= top_gap - tol;
  }
  return false;
}

}  // namespace omni
