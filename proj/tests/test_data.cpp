#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "floodrisk/data.hpp"
#include "floodrisk/error.hpp"
#include "floodrisk/normal.hpp"

using namespace floodrisk;
using namespace floodrisk::data;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("floodrisk_test_" + name);
  std::ofstream(p) << body;
  return p;
}

std::vector<double> fixture_losses() {
  const auto cpi = load_cpi_csv(FIXTURE_DIR "/cpi.csv");
  return losses_of(normalize_cpi(load_loss_csv(FIXTURE_DIR "/losses.csv"), cpi, 2019));
}

}  // namespace

TEST(Data, LoadsFixture) {
  const auto records = load_loss_csv(FIXTURE_DIR "/losses.csv");
  EXPECT_EQ(records.size(), 94u);
  EXPECT_EQ(records.front().year, records.front().price_year);
}

TEST(Data, EmptyFileWithHeader) {
  const auto p = write_temp("empty.csv", "event_id,year,province,loss_billion,precip_mm\n");
  EXPECT_TRUE(load_loss_csv(p).empty());
}

TEST(Data, BadRowsReportLineNumbers) {
  const auto p = write_temp("bad.csv",
                            "event_id,year,province,loss_billion,precip_mm\n"
                            "a,2010,Hunan,1.5,300\n"
                            "b,2011,Hunan,abc,300\n"
                            "\n"
                            "c,20x2,Hunan,2.0,300\n");
  try {
    load_loss_csv(p);
    FAIL() << "expected RowParseError";
  } catch (const RowParseError& e) {
    ASSERT_EQ(e.rows().size(), 2u);
    EXPECT_EQ(e.rows()[0].line, 3u);
    EXPECT_EQ(e.rows()[1].line, 5u);
  }
}

TEST(Data, MissingColumnNamesIt) {
  const auto p = write_temp("nocol.csv", "event_id,year,province,loss\n");
  try {
    load_loss_csv(p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("loss_billion"), std::string::npos);
  }
}

TEST(Data, ColumnMapToleratesRenames) {
  const auto p = write_temp("renamed.csv", "id,yr,prov,loss,rain\nq,2015,Anhui,3.5,410\n");
  LossSchema schema;
  schema.event_id = "id";
  schema.year = "yr";
  schema.province = "prov";
  schema.loss = "loss";
  schema.precip = "rain";
  const auto r = load_loss_csv(p, schema);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0].loss, 3.5);
}

TEST(Data, MissingFileIsInputError) { EXPECT_THROW(load_loss_csv("/nonexistent/losses.csv"), InputError); }

TEST(Data, CpiNormalization) {
  std::vector<LossRecord> r(2);
  r[0].year = r[0].price_year = 2019;
  r[0].loss = 5.0;
  r[1].year = r[1].price_year = 2010;
  r[1].loss = 100.0;
  const CpiSeries cpi{{2010, 100.0}, {2019, 110.0}};
  const auto n = normalize_cpi(r, cpi, 2019);
  EXPECT_DOUBLE_EQ(n[0].loss, 5.0);
  EXPECT_NEAR(n[1].loss, 110.0, 1e-12);
  const auto twice = normalize_cpi(n, cpi, 2019);
  EXPECT_DOUBLE_EQ(twice[1].loss, n[1].loss);
  EXPECT_THROW(normalize_cpi(r, CpiSeries{{2019, 1.0}}, 2019), InputError);
}

TEST(Data, QuantileConvention) {
  std::vector<double> s{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.5), 5.5);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 1.0), 10.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.25), 3.25);
  EXPECT_THROW(empirical_quantile(s, 1.1), DomainError);
  double prev = -1.0;
  for (double q = 0.0; q <= 1.0; q += 0.01) {
    const double v = empirical_quantile(s, q);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Data, LossSummary) {
  const auto x = fixture_losses();
  const auto s = descriptive_stats(x);
  EXPECT_EQ(s.size, 94u);
  EXPECT_NEAR(s.mean, 15.45, 0.01);
  EXPECT_NEAR(s.median, 9.69, 0.005);
  EXPECT_NEAR(s.min, 0.12, 0.005);
  EXPECT_NEAR(s.max, 78.65, 0.005);
  EXPECT_NEAR(s.skewness, 1.72, 0.05);
  EXPECT_NEAR(s.kurtosis, 5.56, 0.1);
  EXPECT_NEAR(quantile_of(x, 0.70), 17.19, 1e-6);
  EXPECT_DOUBLE_EQ(s.min, *std::min_element(x.begin(), x.end()));
  EXPECT_DOUBLE_EQ(s.max, *std::max_element(x.begin(), x.end()));
}

TEST(Data, PrecipitationSummary) {
  const auto p = precipitation_of(load_loss_csv(FIXTURE_DIR "/losses.csv"));
  const auto s = descriptive_stats(p);
  EXPECT_DOUBLE_EQ(s.median, 479.5);
  EXPECT_NEAR(s.kurtosis, 3.65, 0.1);
  EXPECT_NEAR(s.skewness, 0.79, 0.05);
  EXPECT_NEAR(s.mean, 530.07, 0.01);
  EXPECT_DOUBLE_EQ(s.min, 75.0);
  EXPECT_DOUBLE_EQ(s.max, 1426.0);
  // one inter-order-statistic gap around 626, 744, 849, 985
  const std::vector<std::pair<double, double>> targets{{0.70, 626}, {0.80, 744}, {0.90, 849}, {0.95, 985}};
  for (const auto& [q, v] : targets) EXPECT_NEAR(quantile_of(p, q), v, 1.0) << q;
}

TEST(Data, LogLossPrecipCorrelation) {
  const auto records = load_loss_csv(FIXTURE_DIR "/losses.csv");
  auto x = losses_of(records);
  for (auto& v : x) v = std::log(v);
  const double r = pearson_correlation(x, precipitation_of(records));
  EXPECT_GT(r, 0.3);
  EXPECT_LT(r, 0.6);
}

TEST(Data, NormalKurtosis) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z;
  std::vector<double> x(1000000);
  for (auto& v : x) v = z(rng);
  const auto s = descriptive_stats(x);
  EXPECT_NEAR(s.kurtosis, 3.0, 0.05);
  EXPECT_NEAR(s.skewness, 0.0, 0.02);
}

TEST(Data, ConstantSampleHasNoMoments) {
  std::vector<double> x(10, 2.0);
  EXPECT_THROW(descriptive_stats(x), DomainError);
}

TEST(Data, Indicators) {
  const auto m = load_indicator_csv(FIXTURE_DIR "/indicators.csv");
  EXPECT_EQ(m.cols(), 13);
  for (int j = 0; j < 13; ++j)
    EXPECT_EQ(m.orientation[j], j < 6 ? mcdm::Orientation::Benefit : mcdm::Orientation::Cost);
  const auto p = write_temp("ind12.csv", "province,X1,X2,X3,X4,X5,X6,X7,X8,X9,X10,X11,X12\nA,1,1,1,1,1,1,1,1,1,1,1,1\n");
  EXPECT_THROW(load_indicator_csv(p), InputError);
}

TEST(Data, Counts) {
  const auto c = load_count_csv(FIXTURE_DIR "/counts.csv");
  EXPECT_EQ(c.size(), 13u);
  std::int64_t total = 0;
  for (const auto& [y, n] : c) total += n;
  EXPECT_EQ(total, 33);
}

TEST(Normal, QuantileAccuracy) {
  // Reference values from the inverse error function at 30 digits.
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-9);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
  for (double p : {1e-8, 0.001, 0.1, 0.3, 0.7, 0.99, 1 - 1e-9})
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-9 * std::max(p, 1e-3));
  EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
}
