#include "floodrisk/risk.hpp"

#include <cmath>

#include "floodrisk/error.hpp"

namespace floodrisk::risk {

namespace {

bool near_zero(double xi) { return std::abs(xi) < kShapeZero; }

void require_finite_mean(const TailModel& m) {
  if (m.gpd.shape >= 1.0) throw DomainError("shape >= 1: tail mean is infinite");
}

// u + scale * ((1/ratio)^xi - 1)/xi, with ratio the conditional survival
double tail_quantile(double conditional_sf, const Gpd& g) {
  return g.threshold + gpd_excess_quantile_sf(conditional_sf, g);
}

}  // namespace

void TailModel::validate() const {
  if (!(gpd.scale > 0.0)) throw DomainError("tail model: scale must be positive");
  if (!(tail_prob > 0.0 && tail_prob <= 1.0)) throw DomainError("tail model: tail probability must be in (0, 1]");
  if (!(rate >= 0.0)) throw DomainError("tail model: rate must be non-negative");
}

double exceed_prob(double x, const TailModel& model) {
  model.validate();
  if (!(x > model.gpd.threshold)) throw DomainError("exceed_prob: x must lie above the threshold");
  return model.tail_prob * gpd_survival(x - model.gpd.threshold, model.gpd);
}

double return_level(double period, const TailModel& model) {
  model.validate();
  if (!(period * model.tail_prob >= 1.0)) throw DomainError("return_level: period shorter than 1 / tail probability");
  return tail_quantile(1.0 / (period * model.tail_prob), model.gpd);
}

double value_at_risk(double q, const TailModel& model) {
  model.validate();
  if (!(q < 1.0)) throw DomainError("value_at_risk: q must be below 1");
  if (!(q >= 1.0 - model.tail_prob)) throw DomainError("value_at_risk: q lies below the tail extrapolation domain");
  return tail_quantile(std::min((1.0 - q) / model.tail_prob, 1.0), model.gpd);
}

double cvar(double q, const TailModel& model) {
  require_finite_mean(model);
  const double v = value_at_risk(q, model);
  const double scale_at_v = model.gpd.scale + model.gpd.shape * (v - model.gpd.threshold);
  return v + scale_at_v / (1.0 - model.gpd.shape);
}

double cvar(double q, const TailModel& model, const Gev& gev) {
  require_finite_mean(model);
  const double v = value_at_risk(q, model);
  return v / (1.0 - gev.shape) + (gev.scale - gev.shape * gev.location) / (1.0 - gev.shape);
}

double expected_annual_loss(const TailModel& model) {
  model.validate();
  require_finite_mean(model);
  return model.rate * (model.gpd.threshold + model.gpd.scale / (1.0 - model.gpd.shape));
}

double expected_annual_loss(const TailModel& model, const Gev& gev) {
  model.validate();
  require_finite_mean(model);
  return model.rate * (model.gpd.threshold + gev.scale - gev.shape * gev.location) / (1.0 - gev.shape);
}

double annual_value_at_risk(double q, const TailModel& model) {
  model.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("annual_value_at_risk: q must be in (0, 1)");
  if (!(model.rate > 0.0)) throw DomainError("annual_value_at_risk: rate must be positive");
  // P(max <= x) = exp(-rate * S(x - u)); below u the annual maximum is unmodelled
  const double sf = -std::log(q) / model.rate;
  if (sf >= 1.0) throw DomainError("annual_value_at_risk: quantile falls below the threshold");
  if (near_zero(model.gpd.shape)) return model.gpd.threshold - model.gpd.scale * std::log(sf);
  return tail_quantile(sf, model.gpd);
}

std::vector<BacktestResult> backtest_spillover(std::span<const double> sample,
                                               std::span<const std::pair<double, double>> measures) {
  if (sample.empty()) throw DomainError("backtest_spillover: empty sample");
  const double n = static_cast<double>(sample.size());
  std::vector<BacktestResult> out;
  out.reserve(measures.size());
  for (const auto& [level, value] : measures) {
    BacktestResult r;
    r.level = level;
    r.value = value;
    r.theoretical_rate = level;
    r.theoretical_count = std::lround(level * n);
    for (double x : sample)
      if (x > value) ++r.count;
    r.rate = static_cast<double>(r.count) / n;
    out.push_back(r);
  }
  return out;
}

const char* to_string(Taker taker) {
  switch (taker) {
    case Taker::Insurer: return "insurer";
    case Taker::CRFCIF: return "cross-regional fund";
    case Taker::Reinsurance: return "reinsurance";
    case Taker::CatBond: return "cat bond";
  }
  return "unknown";
}

std::vector<CompensationLayer> layers_from_boundaries(std::span<const double> boundaries) {
  if (boundaries.empty()) throw DomainError("layers: need at least one boundary");
  if (boundaries.size() > 3) throw DomainError("layers: at most three boundaries (four takers)");
  double previous = 0.0;
  for (double b : boundaries) {
    if (!(b > previous) || !std::isfinite(b)) throw DomainError("layers: boundaries must be finite, positive and increasing");
    previous = b;
  }
  static constexpr Taker interior[] = {Taker::CRFCIF, Taker::Reinsurance};
  std::vector<CompensationLayer> layers;
  double lower = 0.0;
  for (std::size_t i = 0; i <= boundaries.size(); ++i) {
    CompensationLayer layer;
    layer.lower = lower;
    if (i < boundaries.size()) layer.upper = boundaries[i];
    if (i == 0)
      layer.taker = Taker::Insurer;
    else if (i == boundaries.size())
      layer.taker = Taker::CatBond;
    else
      layer.taker = interior[i - 1];
    layer.name = "level " + std::to_string(i + 1);
    layers.push_back(layer);
    lower = layer.upper;
  }
  return layers;
}

CompensationTable build_compensation_table(const TailModel& model, std::span<const double> confidence_levels) {
  if (confidence_levels.empty()) throw DomainError("compensation: no confidence levels");
  for (std::size_t i = 1; i < confidence_levels.size(); ++i)
    if (!(confidence_levels[i] > confidence_levels[i - 1]))
      throw DomainError("compensation: confidence levels must be strictly increasing");

  CompensationTable table;
  for (double q : confidence_levels) table.rows.push_back({q, value_at_risk(q, model), cvar(q, model)});

  std::vector<double> bounds{table.rows[0].var};
  for (std::size_t i = 1; i < table.rows.size() && bounds.size() < 3; ++i) bounds.push_back(table.rows[i].cvar);
  table.layers = layers_from_boundaries(bounds);
  return table;
}

}  // namespace floodrisk::risk
