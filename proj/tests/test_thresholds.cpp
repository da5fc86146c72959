#include <gtest/gtest.h>

#include <cmath>

#include "ipstele/errors.hpp"
#include "ipstele/teleport.hpp"
#include "ipstele/thresholds.hpp"

using namespace ipstele;

TEST(UniqueRoot, FindsSingleCrossing) {
  const auto r = unique_root([](double x) { return x * x - 0.25; }, 0.0, 1.0, "square");
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 0.5, 1e-10);
}

TEST(UniqueRoot, NoneWithoutSignChange) {
  EXPECT_FALSE(unique_root([](double x) { return 1.0 + x; }, 0.0, 1.0, "positive").has_value());
}

TEST(UniqueRoot, AmbiguousCrossingsReported) {
  try {
    unique_root([](double x) { return std::sin(20.0 * x); }, 0.1, 1.0, "sine");
    FAIL() << "expected an ambiguity error";
  } catch (const AmbiguityError& e) {
    EXPECT_NE(std::string(e.what()).find("sine"), std::string::npos) << e.what();
  }
}

TEST(Thresholds, KnownValues) {
  ASSERT_TRUE(x_threshold(0.9).has_value());
  EXPECT_NEAR(*x_threshold(0.9), 0.708054939813, 1e-9);
  EXPECT_NEAR(improvement_gap(*x_threshold(0.9), 0.9), 0.0, 1e-9);
  ASSERT_TRUE(x_two_thirds(0.9).has_value());
  EXPECT_NEAR(average_fidelity_closed(*x_two_thirds(0.9), 0.9), 2.0 / 3.0, 1e-9);
}

TEST(Thresholds, NoneAtOrBelowHalf) {
  EXPECT_FALSE(x_threshold(0.5).has_value());
  EXPECT_FALSE(x_threshold(0.3).has_value());
}

TEST(Thresholds, GapSignsAroundThreshold) {
  const double th = *x_threshold(0.8);
  // IPS helps below the threshold and hurts above it.
  EXPECT_GT(improvement_gap(th - 0.05, 0.8), 0.0);
  EXPECT_LT(improvement_gap(th + 0.05, 0.8), 0.0);
}

TEST(Thresholds, ApproachesOneForWeakReflection) {
  EXPECT_GT(*x_threshold(0.999), 0.9);
}

TEST(SecureWindow, AtHighTransmissivity) {
  const auto w = secure_window(0.95);
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->first, 0.193673655027, 1e-9);
  EXPECT_NEAR(w->second, 0.794246077946, 1e-9);
  const double mid = 0.5 * (w->first + w->second);
  EXPECT_GT(average_fidelity_closed(mid, 0.95), 2.0 / 3.0);
  EXPECT_GT(average_fidelity_closed(mid, 0.95), twb_average_fidelity(mid));
}

TEST(SecureWindow, EmptyWhenTwoThirdsComesLate) {
  // At tau_eff = 0.55 the IPS fidelity overtakes the twin beam before
  // reaching 2/3, so there is no window.
  EXPECT_FALSE(secure_window(0.55).has_value());
}

TEST(ThresholdCurveTest, ParallelMatchesPointwise) {
  const std::vector<double> grid = default_threshold_grid();
  ASSERT_EQ(grid.size(), 10u);
  EXPECT_DOUBLE_EQ(grid.back(), 0.999);
  const ThresholdCurve c = threshold_curve(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_TRUE(c.x_th[i].has_value());
    EXPECT_EQ(*c.x_th[i], *x_threshold(grid[i]));
    if (i > 0) EXPECT_GT(*c.x_th[i], *c.x_th[i - 1]);
  }
}

TEST(ThresholdCurveTest, ViolationsListLowTransmissivity) {
  // x_23 exceeds 1/3 below tau_eff ~ 0.65; the curve reports those points.
  const ThresholdCurve c = threshold_curve(default_threshold_grid());
  const auto v = c.violations();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NE(v[0].find("0.55"), std::string::npos) << v[0];
}

TEST(ThresholdCurveTest, DomainErrorPropagates) {
  const std::vector<double> bad = {0.9, 1.5};
  EXPECT_THROW(threshold_curve(bad), DomainError);
}
