#include <gtest/gtest.h>

#include <cmath>

#include "floodrisk/catbond.hpp"
#include "floodrisk/error.hpp"

using namespace floodrisk;
using namespace floodrisk::catbond;

namespace {

VasicekPair<double> market() {
  VasicekPair<double> p;
  p.rate = {1.52, 0.0412, 0.014, 0.0228};
  p.reference = {0.04, 0.0202, 0.04, 0.0243};
  p.correlation = 0.89;
  return p;
}

TriggerPath make_path(std::vector<double> times, std::vector<double> cumulative) {
  TriggerPath p;
  p.times = std::move(times);
  p.cumulative = std::move(cumulative);
  p.severities.assign(p.times.size(), 0.0);
  return p;
}

PricingOptions options(std::int64_t paths, double kappa = 0.42) {
  PricingOptions o;
  o.paths = paths;
  o.kappa = kappa;
  o.seed = 20190101;
  return o;
}

}  // namespace

TEST(CatBond, TriggerIncrementUsesHighestLayer) {
  const TriggerModel t;
  EXPECT_DOUBLE_EQ(trigger_increment(500.0, t.layers), 0.0);
  EXPECT_DOUBLE_EQ(trigger_increment(626.0, t.layers), 0.0);
  EXPECT_DOUBLE_EQ(trigger_increment(700.0, t.layers), 0.005);
  EXPECT_DOUBLE_EQ(trigger_increment(800.0, t.layers), 0.015);
  EXPECT_DOUBLE_EQ(trigger_increment(900.0, t.layers), 0.15);
  EXPECT_DOUBLE_EQ(trigger_increment(1426.0, t.layers), 0.2);
}

TEST(CatBond, Payoff) {
  EXPECT_DOUBLE_EQ(payoff(0.0), 1.0);
  EXPECT_DOUBLE_EQ(payoff(0.355), 0.645);
  EXPECT_DOUBLE_EQ(payoff(1.0), 0.0);
  EXPECT_DOUBLE_EQ(payoff(1.4), 0.0);
}

TEST(CatBond, WipeoutTime) {
  const auto p = make_path({0.5, 1.2, 2.0}, {0.6, 1.0, 1.2});
  ASSERT_TRUE(wipeout_time(p).has_value());
  EXPECT_DOUBLE_EQ(*wipeout_time(p), 1.2);
  EXPECT_FALSE(wipeout_time(make_path({0.5}, {0.3})).has_value());
  EXPECT_DOUBLE_EQ(p.level_at(0.49), 0.0);
  EXPECT_DOUBLE_EQ(p.level_at(0.5), 0.6);
}

TEST(CatBond, DistortedSeverity) {
  const GpdParams<double> sev{258.55, -0.181, 600.0};
  EXPECT_NEAR(distorted_severity(0.3, sev, 0.0), 600.0 + gpd_excess_quantile_sf(0.7, sev), 1e-10);
  EXPECT_GT(distorted_severity(0.3, sev, 0.5), distorted_severity(0.3, sev, 0.0));
  EXPECT_LE(distorted_severity(1.0 - 1e-16, sev, 3.0), sev.upper_endpoint() + 1e-9);
}

// Frozen from a numpy evaluation of the same cash-flow rules.
TEST(CatBond, RisklessValueOracle) {
  EXPECT_NEAR(riskless_value(BondTerms{}, market()), 1107.7117772667423, 1e-9);
}

TEST(CatBond, PathValueOracle) {
  const BondTerms terms;
  const RateCurve curve(market(), terms);
  EXPECT_NEAR(path_value(make_path({0.3, 1.1, 2.6}, {0.005, 0.205, 0.355}), terms, curve), 762.4219177480493, 1e-9);
  // wiped at 1.9: seven coupons then a quarter-weighted accrued coupon
  EXPECT_NEAR(path_value(make_path({0.6, 1.9}, {0.5, 1.0}), terms, curve), 92.55762194714724, 1e-9);
  EXPECT_NEAR(path_value(make_path({}, {}), terms, curve), riskless_value(terms, market()), 1e-9);
}

TEST(CatBond, NoTriggerRiskGivesRisklessValue) {
  TriggerModel none;
  none.rate = 0.0;
  const auto a = price_bond(BondTerms{}, none, market(), options(1000));
  EXPECT_NEAR(a.price, riskless_value(BondTerms{}, market()), 1e-9);
  EXPECT_EQ(a.standard_error, 0.0);

  TriggerModel inert;
  for (auto& l : inert.layers) l.wipe_fraction = 0.0;
  const auto b = price_bond(BondTerms{}, inert, market(), options(1000));
  EXPECT_NEAR(b.price, riskless_value(BondTerms{}, market()), 1e-9);
  EXPECT_EQ(b.wipeout_probability, 0.0);
}

// Independent numpy Monte Carlo: 5 x 4000 paths gave 429.73 (se 1.41) at
// kappa 0.42 and 617.61 (se 1.59) at kappa 0.
TEST(CatBond, PriceAgreesWithIndependentSimulation) {
  const auto p = price_bond(BondTerms{}, TriggerModel{}, market(), options(50000));
  EXPECT_NEAR(p.price, 429.73, 4.0 * std::hypot(1.41, p.standard_error));
  const auto q = price_bond(BondTerms{}, TriggerModel{}, market(), options(50000, 0.0));
  EXPECT_NEAR(q.price, 617.61, 4.0 * std::hypot(1.59, q.standard_error));
}

TEST(CatBond, PriceDecreasesInKappa) {
  std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8};
  const auto rows = sensitivity_sweep(SweepParameter::Kappa, grid, BondTerms{}, TriggerModel{}, market(), options(5000));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].price, rows[i - 1].price);
}

TEST(CatBond, ShapeSweepFlagsInvalidPoints) {
  std::vector<double> grid{-0.3, 0.0, -0.1};
  const auto rows = sensitivity_sweep(SweepParameter::Shape, grid, BondTerms{}, TriggerModel{}, market(), options(2000));
  EXPECT_TRUE(rows[0].valid);
  EXPECT_FALSE(rows[1].valid);
  EXPECT_FALSE(rows[1].note.empty());
  EXPECT_TRUE(rows[2].valid);
}

TEST(CatBond, WorkerCountDoesNotChangeResult) {
  auto o = options(20000);
  o.block_size = 1000;
  o.workers = 1;
  const auto a = price_bond(BondTerms{}, TriggerModel{}, market(), o);
  o.workers = 4;
  const auto b = price_bond(BondTerms{}, TriggerModel{}, market(), o);
  EXPECT_EQ(a.price, b.price);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_EQ(a.wipeout_probability, b.wipeout_probability);
}

TEST(CatBond, StandardErrorScalesWithPaths) {
  const auto a = price_bond(BondTerms{}, TriggerModel{}, market(), options(10000));
  const auto b = price_bond(BondTerms{}, TriggerModel{}, market(), options(40000));
  EXPECT_NEAR(a.standard_error / b.standard_error, 2.0, 0.2);
}

TEST(CatBond, CalibrationRequiresStraddlingBracket) {
  EXPECT_THROW(calibrate_kappa(BondTerms{}, TriggerModel{}, market(), 1000.0, {0.0, 1.5}, options(2000)),
               DomainError);
  const auto c = calibrate_kappa(BondTerms{}, TriggerModel{}, market(), 500.0, {0.0, 1.5}, options(5000), 2.0);
  EXPECT_TRUE(c.converged);
  EXPECT_NEAR(c.price, 500.0, 2.0);
}

TEST(CatBond, Validation) {
  TriggerModel t;
  t.layers[1].threshold = 500.0;
  EXPECT_THROW(t.validate(), DomainError);
  t = TriggerModel{};
  t.layers[0].wipe_fraction = 1.5;
  EXPECT_THROW(t.validate(), DomainError);
  BondTerms b;
  b.maturity = 2.9;
  EXPECT_THROW(b.validate(), DomainError);
}

TEST(CatBond, MeanEventCountIsRateTimesHorizon) {
  Engine e = substream(5, 0);
  const int paths = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < paths; ++i) {
    const auto n = static_cast<double>(simulate_event_times(2.55, 3.0, e).size());
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / paths;
  const double se = std::sqrt((sum2 / paths - mean * mean) / paths);
  EXPECT_NEAR(mean, 7.65, 3.0 * se);
}
