#include "omni/demand.hpp"

#include <algorithm>
#include <sstream>

namespace omni {

DemandVector demand(const ModelParams& params, Theta theta, const PricePair& prices,
                    Region region, bool bops_offered) {
  require_admissible(params, prices);
  if (!in_region_closure(params, theta, prices, region, bops_offered)) {
    std::ostringstream os;
    os << "prices (" << prices.online << ", " << prices.store << ") do not lie in region "
       << to_string(region) << " at theta " << theta.value()
       << (bops_offered ? " with" : " without") << " BOPS";
    throw InconsistentRegion(os.str());
  }

  const double c = params.shipping();
  const double th = theta.value();
  const double pe = prices.online;
  const double ps = prices.store;
  // Clamp away boundary round-off only; inside the closure these are >= 0.
  const auto mass = [](double x) { return std::max(0.0, x); };

  switch (region) {
    case Region::BEL:
      return {c, c, 0.0};
    case Region::BEU:
      return {0.0, mass(2.0 * c - pe), 0.0};
    case Region::SEL:
      return {mass((3.0 - 2.0 * th) * c - pe + th * ps), 0.0,
              mass(pe - (1.0 - 2.0 * th) * c - th * ps)};
    case Region::SEU:
    case Region::S:
      return {0.0, 0.0, mass(th * (2.0 * c - ps))};
    case Region::E:
      // Everyone prefers delivery; they buy only while u_e = c - p_e >= 0.
      return {pe <= c + params.tolerance() ? 2.0 * c : 0.0, 0.0, 0.0};
  }
  return {};
}

double profit_of(const ModelParams& params, const PricePair& prices,
                 const DemandVector& d) noexcept {
  return (prices.online - params.delivery_cost()) * d.delivery +
         (prices.online - params.bops_cost()) * d.bops +
         (prices.store - params.store_cost()) * d.store;
}

double profit(const ModelParams& params, Theta theta, const PricePair& prices, bool bops_offered,
              std::optional<Region> region_hint) {
  const Region region =
      region_hint ? *region_hint : classify_region(params, theta, prices, bops_offered);
  return profit_of(params, prices, demand(params, theta, prices, region, bops_offered));
}

}  // namespace omni
