#pragma once

#include <cstddef>
#include <filesystem>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floodrisk/error.hpp"
#include "floodrisk/mcdm.hpp"

namespace floodrisk::data {

struct LossRecord {
  std::string event_id;
  int year = 0;
  std::string province;
  double loss = 0.0;              // billion RMB
  double max_point_precip = 0.0;  // mm, 24-hour maximum
  // Year whose price level `loss` is expressed in; equals `year` on load.
  int price_year = 0;
};

/// Column names for losses.csv; overridable when source files drift.
struct LossSchema {
  std::string event_id = "event_id";
  std::string year = "year";
  std::string province = "province";
  std::string loss = "loss_billion";
  std::string precip = "precip_mm";
  int min_year = 1949;
  int max_year = 2100;
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

/// Thrown when one or more rows fail to parse; lists every bad row.
class RowParseError : public InputError {
 public:
  explicit RowParseError(std::vector<RowError> rows);
  const std::vector<RowError>& rows() const noexcept { return rows_; }

 private:
  std::vector<RowError> rows_;
};

using CpiSeries = std::map<int, double>;

struct StatsSummary {
  std::size_t size = 0;
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // raw, normal = 3
};

std::vector<LossRecord> load_loss_csv(const std::filesystem::path& path, const LossSchema& schema = {});
CpiSeries load_cpi_csv(const std::filesystem::path& path);

/// Reads indicators.csv (province, X1..X13). X1-X6 are benefit criteria
/// (higher means more vulnerable) and X7-X13 are cost criteria.
mcdm::DecisionMatrix load_indicator_csv(const std::filesystem::path& path);

/// Reads counts.csv (year, exceedances): events above the threshold per
/// calendar year. Years must be unique.
std::map<int, std::int64_t> load_count_csv(const std::filesystem::path& path);

/// Reads a two-column (quantity, value) table of externally published
/// figures used for side-by-side comparison in reports.
std::vector<std::pair<std::string, double>> load_reference_csv(const std::filesystem::path& path);

inline constexpr std::size_t kIndicatorCount = 13;
inline constexpr std::size_t kRiskExposureCount = 6;

/// Rescales losses to `base_year` prices: loss * cpi[base] / cpi[price_year].
/// Idempotent for a fixed base year.
std::vector<LossRecord> normalize_cpi(std::span<const LossRecord> records, const CpiSeries& cpi, int base_year);

/// Linear interpolation between order statistics at position q(n-1)
/// (zero based), i.e. the "type 7" sample quantile. `sorted` must be
/// ascending.
double empirical_quantile(std::span<const double> sorted, double q);

/// Convenience overload that sorts a copy first.
double quantile_of(std::vector<double> sample, double q);

/// Moment-based summary; skewness m3/m2^1.5 and raw kurtosis m4/m2^2 with
/// population (1/n) central moments.
StatsSummary descriptive_stats(std::span<const double> sample);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

std::vector<double> losses_of(std::span<const LossRecord> records);
std::vector<double> precipitation_of(std::span<const LossRecord> records);

}  // namespace floodrisk::data
