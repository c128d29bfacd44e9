#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floodrisk/gpd.hpp"

namespace floodrisk::risk {

using Gpd = GpdParams<double>;
using Gev = GevParams<double>;

/// Threshold-excess tail model: P(X > x) = tail_prob * S_gpd(x - u).
struct TailModel {
  Gpd gpd;
  double tail_prob = 1.0;  // empirical survival at u, n_u / n
  double rate = 0.0;       // exceedances per year

  void validate() const;
};

double exceed_prob(double x, const TailModel& model);

/// Level exceeded on average once every `period` observations.
double return_level(double period, const TailModel& model);

/// Tail-extrapolated quantile, defined for q > 1 - tail_prob.
double value_at_risk(double q, const TailModel& model);

/// E[X | X > VaR_q] = VaR_q + scale(VaR_q) / (1 - xi).
double cvar(double q, const TailModel& model);

/// Same quantity written through the GEV triplet:
/// VaR_q / (1 - xi) + (sigma - xi mu) / (1 - xi).
double cvar(double q, const TailModel& model, const Gev& gev);

/// Annual aggregate loss mean of the compound Poisson exceedance process,
/// rate * (u + scale / (1 - xi)).
double expected_annual_loss(const TailModel& model);

/// rate * (u + sigma - xi mu) / (1 - xi).
double expected_annual_loss(const TailModel& model, const Gev& gev);

/// Quantile of the annual maximum under Poisson arrivals, the per-year
/// alternative to the per-event VaR.
double annual_value_at_risk(double q, const TailModel& model);

struct BacktestResult {
  double level = 0.0;  // significance, e.g. 0.05
  double value = 0.0;
  double theoretical_rate = 0.0;
  long theoretical_count = 0;
  long count = 0;
  double rate = 0.0;
};

/// Counts sample points strictly above each (significance level, value).
std::vector<BacktestResult> backtest_spillover(std::span<const double> sample,
                                               std::span<const std::pair<double, double>> measures);

enum class Taker { Insurer, CRFCIF, Reinsurance, CatBond };

const char* to_string(Taker taker);

struct CompensationLayer {
  std::string name;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  Taker taker = Taker::Insurer;
};

struct MeasureRow {
  double confidence = 0.0;
  double var = 0.0;
  double cvar = 0.0;
};

struct CompensationTable {
  std::vector<MeasureRow> rows;
  std::vector<CompensationLayer> layers;
};

/// Contiguous layers over (0, inf) split at ascending boundaries. The first
/// layer goes to the insurer and the last to the CAT bond; interior layers go
/// to the cross-regional fund, then reinsurance.
std::vector<CompensationLayer> layers_from_boundaries(std::span<const double> boundaries);

/// Boundaries are VaR at the lowest confidence level followed by CVaR at the
/// next levels, at most three boundaries (four takers). With confidence
/// levels {0.85, 0.90, 0.95, 0.975} the split points are VaR_0.85,
/// CVaR_0.90 and CVaR_0.95.
CompensationTable build_compensation_table(const TailModel& model, std::span<const double> confidence_levels);

}  // namespace floodrisk::risk
