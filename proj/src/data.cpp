#include "floodrisk/data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "csv.hpp"

namespace floodrisk::data {

namespace {

std::string describe(const std::vector<RowError>& rows) {
  std::ostringstream out;
  out << rows.size() << " malformed row(s)";
  for (const auto& r : rows) out << "\n  line " << r.line << ": " << r.message;
  return out.str();
}

}  // namespace

RowParseError::RowParseError(std::vector<RowError> rows) : InputError(describe(rows)), rows_(std::move(rows)) {}

std::vector<LossRecord> load_loss_csv(const std::filesystem::path& path, const LossSchema& schema) {
  const auto table = detail::read_csv(path);
  const std::size_t c_id = table.column(schema.event_id);
  const std::size_t c_year = table.column(schema.year);
  const std::size_t c_province = table.column(schema.province);
  const std::size_t c_loss = table.column(schema.loss);
  const std::size_t c_precip = table.column(schema.precip);
  const std::size_t width = std::max({c_id, c_year, c_province, c_loss, c_precip}) + 1;

  std::vector<LossRecord> records;
  std::vector<RowError> errors;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto fail = [&](std::string message) { errors.push_back({row.line, std::move(message)}); };
    if (row.fields.size() < width) {
      fail("expected at least " + std::to_string(width) + " fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    LossRecord rec;
    rec.event_id = row.fields[c_id];
    rec.province = row.fields[c_province];
    long long year = 0;
    if (!detail::parse_int(row.fields[c_year], year)) {
      fail("year '" + row.fields[c_year] + "' is not an integer");
      continue;
    }
    if (year < schema.min_year || year > schema.max_year) {
      fail("year " + std::to_string(year) + " outside [" + std::to_string(schema.min_year) + ", " +
           std::to_string(schema.max_year) + "]");
      continue;
    }
    rec.year = static_cast<int>(year);
    rec.price_year = rec.year;
    if (!detail::parse_double(row.fields[c_loss], rec.loss)) {
      fail("loss '" + row.fields[c_loss] + "' is not numeric");
      continue;
    }
    if (!(rec.loss > 0.0) || !std::isfinite(rec.loss)) {
      fail("loss must be positive");
      continue;
    }
    if (!detail::parse_double(row.fields[c_precip], rec.max_point_precip)) {
      fail("precipitation '" + row.fields[c_precip] + "' is not numeric");
      continue;
    }
    if (!(rec.max_point_precip >= 0.0) || !std::isfinite(rec.max_point_precip)) {
      fail("precipitation must be >= 0");
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (!errors.empty()) throw RowParseError(std::move(errors));
  return records;
}

CpiSeries load_cpi_csv(const std::filesystem::path& path) {
  const auto table = detail::read_csv(path);
  const std::size_t c_year = table.column("year");
  const std::size_t c_index = table.column("index");
  CpiSeries cpi;
  std::vector<RowError> errors;
  for (const auto& row : table.rows) {
    long long year = 0;
    double index = 0.0;
    if (row.fields.size() <= std::max(c_year, c_index) || !detail::parse_int(row.fields[c_year], year) ||
        !detail::parse_double(row.fields[c_index], index)) {
      errors.push_back({row.line, "expected integer year and numeric index"});
      continue;
    }
    if (!(index > 0.0)) {
      errors.push_back({row.line, "CPI index must be positive"});
      continue;
    }
    if (!cpi.emplace(static_cast<int>(year), index).second)
      errors.push_back({row.line, "duplicate year " + std::to_string(year)});
  }
  if (!errors.empty()) throw RowParseError(std::move(errors));
  return cpi;
}

std::map<int, std::int64_t> load_count_csv(const std::filesystem::path& path) {
  const auto table = detail::read_csv(path);
  const std::size_t c_year = table.column("year");
  const std::size_t c_count = table.column("exceedances");
  std::map<int, std::int64_t> counts;
  std::vector<RowError> errors;
  for (const auto& row : table.rows) {
    long long year = 0, count = 0;
    if (row.fields.size() <= std::max(c_year, c_count) || !detail::parse_int(row.fields[c_year], year) ||
        !detail::parse_int(row.fields[c_count], count)) {
      errors.push_back({row.line, "expected integer year and count"});
      continue;
    }
    if (count < 0) {
      errors.push_back({row.line, "count must be non-negative"});
      continue;
    }
    if (!counts.emplace(static_cast<int>(year), count).second)
      errors.push_back({row.line, "duplicate year " + std::to_string(year)});
  }
  if (!errors.empty()) throw RowParseError(std::move(errors));
  return counts;
}

std::vector<std::pair<std::string, double>> load_reference_csv(const std::filesystem::path& path) {
  const auto table = detail::read_csv(path);
  const std::size_t c_name = table.column("quantity");
  const std::size_t c_value = table.column("value");
  std::vector<std::pair<std::string, double>> out;
  std::vector<RowError> errors;
  for (const auto& row : table.rows) {
    double value = 0.0;
    if (row.fields.size() <= std::max(c_name, c_value) || !detail::parse_double(row.fields[c_value], value)) {
      errors.push_back({row.line, "expected quantity name and numeric value"});
      continue;
    }
    out.emplace_back(detail::trim(row.fields[c_name]), value);
  }
  if (!errors.empty()) throw RowParseError(std::move(errors));
  return out;
}

mcdm::DecisionMatrix load_indicator_csv(const std::filesystem::path& path) {
  const auto table = detail::read_csv(path);
  const std::size_t c_province = table.column("province");
  std::vector<std::size_t> columns;
  mcdm::DecisionMatrix m;
  for (std::size_t j = 1; j <= kIndicatorCount; ++j) {
    const std::string name = "X" + std::to_string(j);
    columns.push_back(table.column(name));
    m.criteria.push_back(name);
    m.orientation.push_back(j <= kRiskExposureCount ? mcdm::Orientation::Benefit : mcdm::Orientation::Cost);
  }
  if (table.header.size() != kIndicatorCount + 1)
    throw InputError(path.string() + ": expected province plus exactly 13 criteria columns");

  m.values.resize(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(kIndicatorCount));
  std::vector<RowError> errors;
  Eigen::Index i = 0;
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      errors.push_back({row.line, "expected " + std::to_string(table.header.size()) + " fields"});
      continue;
    }
    m.alternatives.push_back(row.fields[c_province]);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      double v = 0.0;
      if (!detail::parse_double(row.fields[columns[j]], v) || !std::isfinite(v)) {
        errors.push_back({row.line, m.criteria[j] + " '" + row.fields[columns[j]] + "' is not numeric"});
        v = 0.0;
      }
      m.values(i, static_cast<Eigen::Index>(j)) = v;
    }
    ++i;
  }
  if (!errors.empty()) throw RowParseError(std::move(errors));
  m.validate();
  return m;
}

std::vector<LossRecord> normalize_cpi(std::span<const LossRecord> records, const CpiSeries& cpi, int base_year) {
  const auto base = cpi.find(base_year);
  if (base == cpi.end()) throw InputError("CPI series has no entry for base year " + std::to_string(base_year));
  std::vector<LossRecord> out(records.begin(), records.end());
  for (auto& rec : out) {
    const auto it = cpi.find(rec.price_year);
    if (it == cpi.end()) throw InputError("CPI series has no entry for year " + std::to_string(rec.price_year));
    rec.loss *= base->second / it->second;
    rec.price_year = base_year;
  }
  return out;
}

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("empirical_quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("empirical_quantile: q must lie in [0, 1]");
  const double position = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = position - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile_of(std::vector<double> sample, double q) {
  std::sort(sample.begin(), sample.end());
  return empirical_quantile(sample, q);
}

StatsSummary descriptive_stats(std::span<const double> sample) {
  if (sample.empty()) throw DomainError("descriptive_stats: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  StatsSummary s;
  s.size = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = empirical_quantile(sorted, 0.5);
  const double n = static_cast<double>(s.size);
  s.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : sample) {
    const double d = x - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (s.size < 3) throw DomainError("descriptive_stats: skewness needs at least 3 observations");
  if (s.size < 4) throw DomainError("descriptive_stats: kurtosis needs at least 4 observations");
  if (!(m2 > 0.0)) throw DomainError("descriptive_stats: constant sample has undefined skewness and kurtosis");
  s.skewness = m3 / std::pow(m2, 1.5);
  s.kurtosis = m4 / (m2 * m2);
  return s;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("pearson_correlation: need two equal-length samples");
  const Eigen::Map<const Eigen::VectorXd> a(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<const Eigen::VectorXd> b(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double denom = da.norm() * db.norm();
  if (!(denom > 0.0)) throw DomainError("pearson_correlation: constant sample");
  return da.dot(db) / denom;
}

std::vector<double> losses_of(std::span<const LossRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.loss);
  return out;
}

std::vector<double> precipitation_of(std::span<const LossRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.max_point_precip);
  return out;
}

}  // namespace floodrisk::data
