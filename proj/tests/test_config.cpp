#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "floodrisk/config.hpp"
#include "floodrisk/error.hpp"

using namespace floodrisk;
namespace fs = std::filesystem;

namespace {

fs::path write_ini(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "floodrisk_config_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Config, LoadsBundledExample) {
  const auto c = config::load(FIXTURE_DIR "/flood.ini");
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>(20190101));
  EXPECT_EQ(c.data.losses, fs::path(FIXTURE_DIR) / "losses.csv");
  EXPECT_EQ(c.fit.model, config::TailBasis::PointProcess);
  EXPECT_EQ(c.trigger.layers.size(), 4u);
  EXPECT_DOUBLE_EQ(c.trigger.layers[3].threshold, 985.0);
  EXPECT_DOUBLE_EQ(c.trigger.layers[3].wipe_fraction, 0.20);
  EXPECT_DOUBLE_EQ(c.rates.correlation, 0.89);
  EXPECT_EQ(c.pricing.paths, 100000);
  EXPECT_EQ(c.rank.breaks, (std::vector<int>{4, 14}));
  EXPECT_NO_THROW(config::validate(c, {"losses", "cpi", "counts", "indicators"}));
}

TEST(Config, DefaultsMatchBundledRates) {
  const auto d = config::defaults();
  const auto c = config::load(FIXTURE_DIR "/flood.ini");
  EXPECT_DOUBLE_EQ(d.rates.rate.speed, c.rates.rate.speed);
  EXPECT_DOUBLE_EQ(d.rates.reference.initial, c.rates.reference.initial);
  EXPECT_FALSE(d.seed.has_value());
}

TEST(Config, UnknownKeyIsRejected) {
  const auto p = write_ini("unknown.ini", "[fit]\nmodle = gpd\n");
  try {
    config::load(p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("fit.modle"), std::string::npos);
  }
}

TEST(Config, MalformedValuesAreRejected) {
  EXPECT_THROW(config::load(write_ini("bad_num.ini", "[bond]\nface = lots\n")), InputError);
  EXPECT_THROW(config::load(write_ini("bad_enum.ini", "[rank]\nmethod = vikor\n")), InputError);
  EXPECT_THROW(config::load(write_ini("bad_layer.ini", "[trigger]\nlayers = 626-0.1\n")), InputError);
  EXPECT_THROW(config::load("/nonexistent/flood.ini"), InputError);
}

TEST(Config, MissingDataFileFailsValidation) {
  const auto c = config::load(write_ini("missing.ini", "[data]\nlosses = nowhere.csv\n"));
  EXPECT_THROW(config::validate(c, {"losses"}), InputError);
  EXPECT_THROW(config::validate(config::defaults(), {"losses"}), InputError);
}

TEST(Config, RangeChecks) {
  auto c = config::defaults();
  c.threshold.value = 1.5;
  EXPECT_THROW(config::validate(c, {}), InputError);
  c = config::defaults();
  c.pricing.paths = 0;
  EXPECT_THROW(config::validate(c, {}), InputError);
  c = config::defaults();
  c.rates.correlation = 1.0;
  EXPECT_THROW(config::validate(c, {}), InputError);
}

TEST(Config, ExplicitWeights) {
  const auto c = config::load(write_ini("weights.ini", "[rank]\nweights = 0.5, 0.3, 0.2\ncriteria = 1, 2, 3\n"));
  EXPECT_EQ(c.rank.weights, config::WeightScheme::Explicit);
  EXPECT_EQ(c.rank.explicit_weights.size(), 3u);
  EXPECT_NO_THROW(config::validate(c, {}));
}

TEST(Config, ParseList) {
  EXPECT_EQ(config::parse_list("0.1, 0.2,0.3"), (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_THROW(config::parse_list("0.1, x"), InputError);
}
