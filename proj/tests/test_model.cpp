#include <gtest/gtest.h>

#include <cmath>

#include "omni/model.hpp"

using namespace omni;

namespace {

const ModelParams kUnit(1.0, 0.5, 0.4, 0.1);

}  // namespace

TEST(ModelParams, RejectsCostsAtOrAboveShipping) {
  EXPECT_THROW(ModelParams(1.0, 1.0, 0.4, 0.1), AssumptionViolation);
  EXPECT_THROW(ModelParams(1.0, 0.5, 1.2, 0.1), AssumptionViolation);
  EXPECT_THROW(ModelParams(1.0, 0.5, 0.4, 1.0), AssumptionViolation);
  EXPECT_THROW(ModelParams(0.0, 0.0, 0.0, 0.0), AssumptionViolation);
  EXPECT_THROW(ModelParams(1.0, -0.1, 0.4, 0.1), AssumptionViolation);
  EXPECT_NO_THROW(ModelParams(1.0, 0.0, 0.0, 0.0));
}

TEST(ModelParams, ProductValueIsTwiceShipping) {
  EXPECT_DOUBLE_EQ(ModelParams(1.7, 0.1, 0.1, 0.1).product_value(), 3.4);
}

TEST(ModelParams, ReferenceCases) {
  EXPECT_EQ(reference_case(1), ModelParams(1.0, 0.5, 0.4, 0.1));
  EXPECT_EQ(reference_case(2), ModelParams(1.0, 0.5, 0.6, 0.1));
  EXPECT_EQ(reference_case(3), ModelParams(1.0, 0.9, 0.8, 0.7));
  EXPECT_THROW((void)reference_case(4), std::invalid_argument);
}

TEST(Theta, Stages) {
  EXPECT_EQ(Theta(1.0).stage(), Stage::I);
  EXPECT_EQ(Theta(0.5000001).stage(), Stage::I);
  EXPECT_EQ(Theta(0.5).stage(), Stage::II);
  EXPECT_EQ(Theta(1e-9).stage(), Stage::II);
  EXPECT_EQ(Theta(0.0).stage(), Stage::III);
  EXPECT_THROW(Theta(-0.01), DomainError);
  EXPECT_THROW(Theta(1.01), DomainError);
  EXPECT_THROW(Theta(std::nan("")), DomainError);
}

TEST(PricePair, Admissibility) {
  EXPECT_TRUE(is_admissible(kUnit, {0.0, 2.0}));
  EXPECT_FALSE(is_admissible(kUnit, {2.01, 1.0}));
  EXPECT_FALSE(is_admissible(kUnit, {1.0, -0.01}));
  EXPECT_THROW(require_admissible(kUnit, {1.0, 2.5}), DomainError);
}

TEST(Utilities, DirectSubstitution) {
  const Utilities u = utilities(kUnit, Theta(0.8), {1.0, 1.0}, 0.0, true);
  EXPECT_DOUBLE_EQ(u.delivery, 0.0);
  ASSERT_TRUE(u.bops);
  EXPECT_DOUBLE_EQ(*u.bops, 1.0);
  EXPECT_DOUBLE_EQ(u.store, 0.8);
}

TEST(Utilities, PriceCapBoundary) {
  const Utilities u = utilities(kUnit, Theta(1.0), {2.0, 2.0}, 0.0, true);
  EXPECT_DOUBLE_EQ(u.delivery, -1.0);
  EXPECT_DOUBLE_EQ(*u.bops, 0.0);
  EXPECT_DOUBLE_EQ(u.store, 0.0);
}

TEST(Utilities, FarConsumer) {
  const Utilities u = utilities(kUnit, Theta(0.6), {1.2, 1.5}, 1.5, true);
  EXPECT_NEAR(u.delivery, -0.2, 1e-15);
  EXPECT_NEAR(*u.bops, -0.7, 1e-15);
  EXPECT_NEAR(u.store, -1.2, 1e-15);
}

TEST(Utilities, NoBopsOmitsBopsUtility) {
  EXPECT_FALSE(utilities(kUnit, Theta(0.6), {1.0, 1.0}, 0.3, false).bops.has_value());
}

TEST(Utilities, DistanceOutsideRangeThrows) {
  EXPECT_THROW((void)utilities(kUnit, Theta(0.6), {1.0, 1.0}, -0.1, true), DomainError);
  EXPECT_THROW((void)utilities(kUnit, Theta(0.6), {1.0, 1.0}, 2.1, true), DomainError);
}

TEST(ClassifyConsumer, KnownValues) {
  const PricePair p{1.2, 1.5};
  EXPECT_EQ(classify_consumer(kUnit, Theta(0.6), p, 0.5, true), Segment::Bops);
  EXPECT_EQ(classify_consumer(kUnit, Theta(0.6), p, 1.5, true), Segment::Delivery);
  EXPECT_EQ(classify_consumer(kUnit, Theta(1.0), {2.0, 0.0}, 0.0, true), Segment::Store);
}

TEST(ClassifyConsumer, LocalBoundaryIsBops) {
  // delta = (2 - 2 theta)c exactly, d <= c: weak inequality keeps BOPS.
  const Theta th(0.75);
  const PricePair p{1.5, 2.0};  // delta = 0.0; bound (2 - 1.5) = 0.5
  EXPECT_EQ(classify_consumer(kUnit, th, p, 1.0, true), Segment::Bops);
  const PricePair on{1.7, 1.6};  // delta = 0.5
  EXPECT_EQ(classify_consumer(kUnit, th, on, 0.3, true), Segment::Bops);
  EXPECT_EQ(classify_consumer(kUnit, th, on, 1.0, true), Segment::Bops);
  EXPECT_EQ(classify_consumer(kUnit, th, on, 1.0000001, true), Segment::Delivery);
}

TEST(ClassifyConsumer, NoBopsTieGoesToDelivery) {
  // u_e = c - p_e = 0; u_s = theta(2c - p_s) - d = 0.5 - d; tie at d = 0.5.
  const PricePair p{1.0, 1.0};
  EXPECT_EQ(classify_consumer(kUnit, Theta(0.5), p, 0.5, false), Segment::Delivery);
  EXPECT_EQ(classify_consumer(kUnit, Theta(0.5), p, 0.49, false), Segment::Store);
}

TEST(ClassifyConsumer, StoreSegmentIsAnIntervalFromZero) {
  for (double th : {0.25, 0.6, 0.9}) {
    for (double pe : {0.3, 1.0, 1.7}) {
      for (double ps : {0.0, 0.8, 1.9}) {
        for (bool bops : {true, false}) {
          bool left_store = false;
          for (int k = 0; k <= 400; ++k) {
            const double d = 2.0 * k / 400.0;
            const bool store = classify_consumer(kUnit, Theta(th), {pe, ps}, d, bops) == Segment::Store;
            if (!store) left_store = true;
            EXPECT_FALSE(store && left_store) << th << " " << pe << " " << ps << " d=" << d;
          }
        }
      }
    }
  }
}

TEST(ClassifyConsumer, StageThreeHasNoStoreSegmentBeyondZero) {
  for (double d = 0.01; d <= 2.0; d += 0.01) {
    EXPECT_NE(classify_consumer(kUnit, Theta(0.0), {2.0, 0.0}, d, true), Segment::Store);
  }
}

TEST(PurchaseDecision, FiltersNegativeUtility) {
  // Far consumer, everything negative.
  EXPECT_EQ(purchase_decision(kUnit, Theta(0.6), {1.2, 1.5}, 1.5, true), Segment::None);
  // BE-L at d = 0.5: BOPS utility 0.5 >= 0.
  EXPECT_EQ(purchase_decision(kUnit, Theta(0.8), {1.0, 2.0}, 0.5, true), Segment::Bops);
  // u_e = 0 buys (weak).
  EXPECT_EQ(purchase_decision(kUnit, Theta(0.8), {1.0, 2.0}, 1.5, true), Segment::Delivery);
}

TEST(ClassifyRegion, KnownValues) {
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {1.0, 2.0}, true), Region::BEL);
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {1.0, 0.75}, true), Region::BEL);  // delta = 0.4
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {1.0, 0.5}, true), Region::SEL);   // delta = 0.6
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {1.0, 2.0}, false), Region::E);    // delta = -0.6
}

TEST(ClassifyRegion, UpperAndStoreRegions) {
  const Theta th(0.8);
  EXPECT_EQ(classify_region(kUnit, th, {1.5, 2.0}, true), Region::BEU);
  EXPECT_EQ(classify_region(kUnit, th, {2.0, 1.05}, true), Region::SEU);  // delta = 1.16
  EXPECT_EQ(classify_region(kUnit, th, {1.2, 0.5}, true), Region::SEU);   // delta = 0.8
}

TEST(ClassifyRegion, StoreRegionInStageOne) {
  // delta > (3 - 2 theta)c = 1.4 needs p_e - theta p_s > 1.4.
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {2.0, 0.5}, true), Region::S);
  EXPECT_EQ(classify_region(kUnit, Theta(0.8), {1.9, 0.0}, false), Region::S);
}

// The stage gates in region_admissible are never reached by admissible
// prices: every label the boundaries produce exists in its stage.
TEST(ClassifyRegion, LabelsAreAlwaysAdmissible) {
  for (double th : {0.0, 0.1, 0.3, 0.5, 0.5001, 0.7, 1.0}) {
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        for (bool bops : {true, false}) {
          EXPECT_NO_THROW((void)classify_region(kUnit, Theta(th), {i / 50.0, j / 50.0}, bops))
              << th << " " << i << " " << j << " " << bops;
        }
      }
    }
  }
}

TEST(ClassifyRegion, DependsOnlyOnGapAndOnlineSide) {
  const Theta th(0.7);
  for (double delta : {-1.0, 0.2, 0.55, 0.9, 1.55}) {
    for (bool lower : {true, false}) {
      // Walk (p_e, p_s) along the line of constant delta on one side of c.
      std::optional<Region> label;
      for (double ps = 0.0; ps <= 2.0; ps += 0.01) {
        const double online = delta + th.value() * ps;
        if (online < 0.0 || online > 2.0 || (online <= 1.0) != lower) continue;
        Region r;
        try {
          r = classify_region(kUnit, th, {online, ps}, true);
        } catch (const EmptyRegion&) {
          continue;
        }
        if (!label) label = r;
        EXPECT_EQ(r, *label) << "delta " << delta << " p_s " << ps;
      }
    }
  }
}

TEST(RegionAdmissible, Table) {
  EXPECT_TRUE(region_admissible(Region::SEL, Stage::I, true));
  EXPECT_FALSE(region_admissible(Region::SEL, Stage::II, true));
  EXPECT_TRUE(region_admissible(Region::SEL, Stage::II, false));
  EXPECT_FALSE(region_admissible(Region::S, Stage::II, false));
  EXPECT_TRUE(region_admissible(Region::SEU, Stage::II, true));
  EXPECT_FALSE(region_admissible(Region::SEU, Stage::III, true));
  EXPECT_TRUE(region_admissible(Region::E, Stage::III, false));
  EXPECT_FALSE(region_admissible(Region::E, Stage::I, true));
  EXPECT_FALSE(region_admissible(Region::BEL, Stage::I, false));
  EXPECT_TRUE(region_admissible(Region::BEU, Stage::III, true));
}

TEST(RegionNames, RoundTrip) {
  for (Region r : kAllRegions) EXPECT_EQ(parse_region(to_string(r)), r);
  EXPECT_EQ(parse_region("BE-L"), Region::BEL);
  EXPECT_EQ(parse_region("SE-U"), Region::SEU);
  EXPECT_FALSE(parse_region("XX").has_value());
}

// Dense (d, delta, theta) grid: the three with-BOPS conditions tile the plane.
TEST(SegmentPartition, ExactlyOneConditionHolds) {
  const double c = 1.0;
  for (double th : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Theta theta(th);
    const double lo = -2.0 * th * c;
    const double hi = 2.0 * c;
    for (int i = 0; i <= 200; ++i) {
      const double d = 2.0 * c * i / 200.0;
      for (int j = 0; j <= 200; ++j) {
        const double delta = lo + (hi - lo) * j / 200.0;
        const bool e = d > c && delta <= (1.0 - 2.0 * th) * c + d;
        const bool b = d <= c && delta <= (2.0 - 2.0 * th) * c;
        const bool s = delta > (2.0 - 2.0 * th) * c && delta > (1.0 - 2.0 * th) * c + d;
        ASSERT_EQ(int(e) + int(b) + int(s), 1) << "theta " << th << " d " << d << " delta " << delta;
      }
    }
  }
}

TEST(SegmentPartition, ClassifierMatchesConditions) {
  const Theta theta(0.75);
  for (int i = 0; i <= 100; ++i) {
    const double d = 2.0 * i / 100.0;
    for (int j = 0; j <= 100; ++j) {
      const double ps = 2.0 * j / 100.0;
      for (double pe : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const double delta = pe - 0.75 * ps;
        const Segment seg = classify_consumer(kUnit, theta, {pe, ps}, d, true);
        if (d > 1.0 && delta <= -0.5 + d + 1e-12) {
          if (std::abs(delta - (-0.5 + d)) > 1e-9) EXPECT_EQ(seg, Segment::Delivery);
        } else if (d <= 1.0 && delta <= 0.5) {
          if (std::abs(delta - 0.5) > 1e-9) EXPECT_EQ(seg, Segment::Bops);
        } else if (std::abs(delta - 0.5) > 1e-9 && std::abs(delta - (-0.5 + d)) > 1e-9) {
          EXPECT_EQ(seg, Segment::Store);
        }
      }
    }
  }
}
