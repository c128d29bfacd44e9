#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "floodrisk/data.hpp"
#include "floodrisk/error.hpp"
#include "floodrisk/evt.hpp"

using namespace floodrisk;
using namespace floodrisk::evt;

namespace {

std::vector<double> fixture_losses() {
  const auto cpi = data::load_cpi_csv(FIXTURE_DIR "/cpi.csv");
  return data::losses_of(data::normalize_cpi(data::load_loss_csv(FIXTURE_DIR "/losses.csv"), cpi, 2019));
}

ExcessSample fixture_sample() {
  const auto x = fixture_losses();
  return make_excess_sample(x, data::quantile_of(x, 0.70));
}

std::vector<std::int64_t> fixture_counts() {
  std::vector<std::int64_t> out;
  for (const auto& [year, n] : data::load_count_csv(FIXTURE_DIR "/counts.csv")) out.push_back(n);
  return out;
}

std::vector<double> gpd_draws(double scale, double shape, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> y(n);
  for (auto& v : y) v = gpd_excess_quantile_sf(1.0 - unif(rng), Gpd{scale, shape, 0.0});
  return y;
}

}  // namespace

// Frozen from scipy.stats.genpareto.fit and a scipy Nelder-Mead run of the
// point-process likelihood on the fixture losses.
TEST(Evt, FixtureThreshold) {
  const auto s = fixture_sample();
  EXPECT_NEAR(s.threshold, 17.189999976087627, 1e-9);
  EXPECT_EQ(s.n_u(), 28u);
  EXPECT_NEAR(s.tail_fraction(), 28.0 / 94.0, 1e-15);
}

TEST(Evt, GpdFixtureOracle) {
  const auto fit = fit_gpd(fixture_sample());
  ASSERT_TRUE(fit.converged);
  EXPECT_NEAR(fit.estimates[0], 26.740970, 1e-4);
  EXPECT_NEAR(fit.estimates[1], -0.308174, 1e-5);
  EXPECT_NEAR(fit.loglik, -111.384664, 1e-6);
  EXPECT_NEAR(fit.aic, 226.769329, 1e-5);
  EXPECT_NEAR(fit.bic, 2.0 * 111.384664 + 2.0 * std::log(28.0), 1e-5);
  EXPECT_NEAR(fit.standard_errors[0], 7.795, 0.01);
  EXPECT_NEAR(fit.standard_errors[1], 0.2295, 0.001);
  EXPECT_LT(fit.ci95[1].lo, fit.estimates[1]);
  EXPECT_GT(fit.ci95[1].hi, fit.estimates[1]);
}

TEST(Evt, ExponentialIsMeanExcess) {
  const auto s = fixture_sample();
  const auto fit = fit_exponential(s);
  EXPECT_NEAR(fit.estimates[0], 20.179285772, 1e-8);
  EXPECT_NEAR(fit.loglik, -112.130385, 1e-6);
  EXPECT_NEAR(fit.aic, 226.260771, 1e-5);
  EXPECT_NEAR(fit.standard_errors[0], fit.estimates[0] / std::sqrt(28.0), 1e-12);
}

TEST(Evt, PointProcessFixtureOracle) {
  const auto x = fixture_losses();
  const auto s = fixture_sample();
  const auto fit = fit_pp(x, s.threshold, daily_span(x.size()));
  ASSERT_TRUE(fit.converged);
  EXPECT_NEAR(fit.estimates[0], 83.509822, 1e-3);
  EXPECT_NEAR(fit.estimates[1], 6.302960, 1e-3);
  EXPECT_NEAR(fit.estimates[2], -0.308174, 1e-5);
  EXPECT_NEAR(fit.loglik, -8.078895, 1e-6);
  EXPECT_NEAR(fit.aic, 22.157789, 1e-5);
  // shape and linked scale agree with the GPD fit
  const auto gpd = fit_gpd(s);
  const auto linked = gev_gpd_link(fit.gev(), s.threshold);
  EXPECT_NEAR(linked.scale, gpd.estimates[0], 1e-3);
  EXPECT_NEAR(fit.estimates[2], gpd.estimates[1], 1e-5);
}

TEST(Evt, GevGpdLinkRoundTrip) {
  const Gpd g{12.0, 0.2, 5.0};
  const auto gev = gpd_gev_link(g, 30.0, 10.0);
  const auto back = gev_gpd_link(gev, 5.0);
  EXPECT_NEAR(back.scale, 12.0, 1e-12);
  // the linked intensity reproduces the expected exceedance count
  EXPECT_NEAR(10.0 * std::pow(1.0 + gev.shape * (5.0 - gev.location) / gev.scale, -1.0 / gev.shape), 30.0, 1e-9);
}

TEST(Evt, GpdRecoversSimulatedParameters) {
  const auto y = gpd_draws(3.0, 0.2, 20000, 11);
  std::vector<double> x = y;
  for (auto& v : x) v += 10.0;
  const auto fit = fit_gpd(make_excess_sample(x, 10.0));
  EXPECT_NEAR(fit.estimates[0], 3.0, 4.0 * fit.standard_errors[0]);
  EXPECT_NEAR(fit.estimates[1], 0.2, 4.0 * fit.standard_errors[1]);
  EXPECT_LT(fit.standard_errors[1], 0.02);
}

TEST(Evt, ExponentialDataNearZeroShape) {
  const auto y = gpd_draws(2.0, 0.0, 20000, 12);
  const auto fit = fit_gpd(make_excess_sample(y, 0.0));
  EXPECT_NEAR(fit.estimates[1], 0.0, 0.03);
  const auto lr = lr_test(fit, fit_exponential(make_excess_sample(y, 0.0)), 1);
  EXPECT_GE(lr.statistic, 0.0);
}

TEST(Evt, LrTestFixture) {
  const auto s = fixture_sample();
  const auto lr = lr_test(fit_gpd(s), fit_exponential(s), 1);
  EXPECT_NEAR(lr.statistic, 1.491442, 1e-5);
  EXPECT_NEAR(lr.p_value, 0.221993, 1e-5);
  EXPECT_THROW(lr_test(fit_exponential(s), fit_gpd(s), 1), DomainError);
}

TEST(Evt, GpdNeedsEnoughDistinctExcesses) {
  std::vector<double> x{1, 2, 3, 4, 5, 6};
  EXPECT_THROW(fit_gpd(make_excess_sample(x, 2.5)), DomainError);
  std::vector<double> flat(10, 5.0);
  flat.push_back(1.0);
  EXPECT_THROW(fit_gpd(make_excess_sample(flat, 2.0)), DomainError);
}

TEST(Evt, NegloglikOutsideSupportIsInfinite) {
  std::vector<double> y{1.0, 5.0};
  EXPECT_TRUE(std::isinf(gpd_negloglik(Gpd{1.0, -0.5, 0.0}, y)));
  EXPECT_TRUE(std::isinf(gpd_negloglik(Gpd{-1.0, 0.1, 0.0}, y)));
}

TEST(Evt, MeanResidualLife) {
  const auto x = fixture_losses();
  const auto s = fixture_sample();
  std::vector<double> grid{s.threshold, 78.0, 100.0};
  const auto mrl = mean_residual_life(x, grid);
  ASSERT_EQ(mrl.size(), 3u);
  EXPECT_TRUE(mrl[0].valid);
  EXPECT_NEAR(mrl[0].mean_excess, 20.179285772, 1e-8);
  EXPECT_LT(mrl[0].lo, mrl[0].mean_excess);
  EXPECT_GT(mrl[0].hi, mrl[0].mean_excess);
  EXPECT_FALSE(mrl[1].valid);
  EXPECT_FALSE(mrl[2].valid);
  EXPECT_FALSE(mrl[2].note.empty());
}

TEST(Evt, StabilityScanIsFlatForGpdData) {
  const auto y = gpd_draws(4.0, 0.1, 20000, 13);
  std::vector<double> grid{0.0, 2.0, 4.0, 6.0};
  const auto scan = param_stability_scan(y, grid);
  for (const auto& p : scan) {
    ASSERT_TRUE(p.valid);
    EXPECT_NEAR(p.shape, 0.1, 4.0 * (p.shape_ci.hi - p.shape_ci.lo) / 3.92);
    EXPECT_NEAR(p.modified_scale, 4.0, 4.0 * (p.modified_scale_ci.hi - p.modified_scale_ci.lo) / 3.92);
  }
  std::vector<double> high{1e6};
  EXPECT_FALSE(param_stability_scan(y, high)[0].valid);
}

TEST(Evt, PoissonFixture) {
  const auto r = fit_poisson_frequency(fixture_counts(), 13, {2000, 20190101});
  EXPECT_NEAR(r.rate, 33.0 / 13.0, 1e-15);
  EXPECT_NEAR(r.ks_statistic, 0.07898782609432885, 1e-12);
  EXPECT_NEAR(r.naive_ks_pvalue, 0.999993086, 1e-8);
  // independent bootstrap with 20000 replicates gave 0.796
  EXPECT_NEAR(r.gof_pvalue, 0.796, 0.03);
  EXPECT_GT(r.gof_pvalue, 0.05);
}

TEST(Evt, PoissonBootstrapIsSeeded) {
  const auto a = fit_poisson_frequency(fixture_counts(), 13, {500, 1});
  const auto b = fit_poisson_frequency(fixture_counts(), 13, {500, 1});
  EXPECT_EQ(a.gof_pvalue, b.gof_pvalue);
}

TEST(Evt, PoissonRejectsOverdispersion) {
  std::vector<std::int64_t> counts{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 30, 30, 30, 30, 30, 30};
  const auto r = fit_poisson_frequency(counts, counts.size(), {1000, 3});
  EXPECT_LT(r.gof_pvalue, 0.01);
}

TEST(Evt, PoissonMissingYearsCountAsZero) {
  std::vector<std::int64_t> counts{4, 2};
  const auto r = fit_poisson_frequency(counts, 4, {0, 1});
  EXPECT_DOUBLE_EQ(r.rate, 1.5);
  EXPECT_THROW(fit_poisson_frequency(counts, 1, {0, 1}), DomainError);
}

TEST(Evt, KolmogorovPvalue) {
  // scipy.stats.kstwobign.sf at the Stephens-corrected statistic
  EXPECT_NEAR(kolmogorov_pvalue(0.3, 20), 0.0431349, 1e-6);
  EXPECT_DOUBLE_EQ(kolmogorov_pvalue(0.0, 20), 1.0);
}

TEST(Evt, QqPointsOnTheDiagonalForQuantiles) {
  const Gpd g{5.0, 0.1, 0.0};
  std::vector<double> y;
  for (int i = 1; i <= 9; ++i) y.push_back(gpd_excess_quantile_sf(1.0 - i / 10.0, g));
  const auto qq = qq_points(y, g);
  ASSERT_EQ(qq.size(), 9u);
  for (const auto& p : qq) EXPECT_NEAR(p.model, p.empirical, 1e-12);
}
