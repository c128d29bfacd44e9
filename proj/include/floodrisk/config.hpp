#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "floodrisk/catbond.hpp"
#include "floodrisk/mcdm.hpp"
#include "floodrisk/vasicek.hpp"

namespace floodrisk::config {

enum class ThresholdPolicy { Quantile, Absolute };
enum class TailBasis { PointProcess, Gpd, Exponential };
enum class WeightScheme { Equal, Entropy, Explicit };

struct DataSection {
  std::filesystem::path losses;
  std::filesystem::path cpi;
  std::filesystem::path indicators;
  std::filesystem::path counts;     // annual exceedance counts
  std::filesystem::path reference;  // published figures to compare against
  int base_year = 2019;
};

struct ThresholdSection {
  ThresholdPolicy policy = ThresholdPolicy::Quantile;
  double value = 0.70;
  // Diagnostics grid, as quantiles of the sample
  double grid_lo = 0.50;
  double grid_hi = 0.95;
  int grid_points = 46;
};

struct FitSection {
  TailBasis model = TailBasis::PointProcess;
  // "daily" uses n / 365.25 blocks; otherwise a positive number
  std::string span = "daily";
  int bootstrap = 2000;
};

struct RiskSection {
  std::vector<double> levels{0.85, 0.90, 0.95, 0.975, 0.99};
  std::vector<double> compensation_levels{0.85, 0.90, 0.95, 0.975};
};

struct RankSection {
  mcdm::Method method = mcdm::Method::GRA;
  WeightScheme weights = WeightScheme::Equal;
  std::vector<double> explicit_weights;
  // Empty means every criterion; 1-based criterion numbers otherwise
  std::vector<int> criteria;
  double zeta = 0.5;
  double shift = 0.01;
  std::vector<int> breaks{4, 14};
};

struct SweepSection {
  catbond::SweepParameter parameter = catbond::SweepParameter::Kappa;
  std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  double scale_to_shape = -1432.311;
};

struct CalibrateSection {
  double target = 1000.0;
  catbond::Bracket bracket;
  double tolerance = 0.5;
  int max_iterations = 60;
};

struct Config {
  std::filesystem::path source;  // empty when built from defaults
  DataSection data;
  ThresholdSection threshold;
  FitSection fit;
  RiskSection risk;
  RankSection rank;
  catbond::BondTerms bond;
  catbond::TriggerModel trigger;
  VasicekPair<double> rates;
  catbond::PricingOptions pricing;
  SweepSection sweep;
  CalibrateSection calibrate;
  std::optional<std::uint64_t> seed;
};

/// Rate parameters used when the file has no [rates] section.
VasicekPair<double> default_rates();

/// Reads an INI file. Relative paths resolve against the file's directory.
/// Throws InputError on unreadable files, unknown keys or malformed values.
Config load(const std::filesystem::path& path);

Config defaults();

/// Checks ranges and that referenced files exist. `needs` lists the data
/// keys the command reads ("losses", "cpi", "indicators", "counts").
void validate(const Config& cfg, const std::vector<std::string>& needs);

std::vector<double> parse_list(const std::string& text);

}  // namespace floodrisk::config
