#include "floodrisk/catbond.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "floodrisk/error.hpp"
#include "floodrisk/normal.hpp"

namespace floodrisk::catbond {

void TriggerModel::validate() const {
  if (layers.empty()) throw DomainError("trigger: no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i > 0 && !(layers[i].threshold > layers[i - 1].threshold))
      throw DomainError("trigger: layer thresholds must be strictly increasing");
    if (!(layers[i].wipe_fraction >= 0.0 && layers[i].wipe_fraction <= 1.0))
      throw DomainError("trigger: wipe fractions must lie in [0, 1]");
  }
  if (!(rate >= 0.0)) throw DomainError("trigger: rate must be non-negative");
  if (!(severity.scale > 0.0)) throw DomainError("trigger: severity scale must be positive");
}

int BondTerms::coupon_count() const { return static_cast<int>(std::lround(maturity / coupon_interval)); }

void BondTerms::validate() const {
  if (!(face > 0.0) || !(maturity > 0.0) || !(coupon_interval > 0.0))
    throw DomainError("bond: face, maturity and coupon interval must be positive");
  const double periods = maturity / coupon_interval;
  if (std::abs(periods - std::round(periods)) > 1e-9) throw DomainError("bond: maturity must be a whole number of coupon periods");
  if (!std::isfinite(spread)) throw DomainError("bond: spread must be finite");
}

double distorted_severity(double uniform, const GpdParams<double>& severity, double kappa) {
  const double sf = normal_sf(normal_quantile(uniform) + kappa);
  return severity.threshold + gpd_excess_quantile_sf(sf, severity);
}

double trigger_increment(double severity, std::span<const TriggerLayer> layers) {
  double fraction = 0.0;
  for (const auto& layer : layers) {
    if (!(severity > layer.threshold)) break;
    fraction = layer.wipe_fraction;
  }
  return fraction;
}

double TriggerPath::level_at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0.0;
  return cumulative[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::vector<double> simulate_event_times(double rate, double horizon, Engine& engine) {
  std::vector<double> times;
  if (!(rate > 0.0)) return times;
  for (double t = exponential(engine, rate); t <= horizon; t += exponential(engine, rate)) times.push_back(t);
  return times;
}

TriggerPath simulate_trigger_path(const TriggerModel& trigger, double kappa, double horizon, Engine& engine) {
  TriggerPath path;
  path.times = simulate_event_times(trigger.rate, horizon, engine);
  path.severities.reserve(path.times.size());
  path.cumulative.reserve(path.times.size());
  double y = 0.0;
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const double x = distorted_severity(uniform_open(engine), trigger.severity, kappa);
    y += trigger_increment(x, trigger.layers);
    path.severities.push_back(x);
    path.cumulative.push_back(y);
  }
  return path;
}

std::optional<double> wipeout_time(const TriggerPath& path) {
  for (std::size_t i = 0; i < path.times.size(); ++i)
    if (path.cumulative[i] >= 1.0) return path.times[i];
  return std::nullopt;
}

RateCurve::RateCurve(const VasicekPair<double>& rates, const BondTerms& terms) : rates_(rates), spread_(terms.spread) {
  rates_.validate();
  terms.validate();
  const int n = terms.coupon_count();
  coupon_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) coupon_[k] = coupon_value(k * terms.coupon_interval);
  maturity_discount_ = discount(terms.maturity);
}

double RateCurve::discount(double s) const {
  return vasicek::discount_factor_expectation(rates_.rate, 0.0, s, rates_.rate.initial);
}

double RateCurve::discounted_index(double s) const {
  return vasicek::discounted_index_expectation(rates_, 0.0, s, rates_.rate.initial, rates_.reference.initial);
}

double RateCurve::coupon_value(double s) const { return spread_ * discount(s) + discounted_index(s); }

double path_value(const TriggerPath& path, const BondTerms& terms, const RateCurve& curve) {
  const int n = terms.coupon_count();
  const double dt = terms.coupon_interval;
  const double coupon = terms.face * dt;
  const auto tau = wipeout_time(path);
  const bool wiped = tau && *tau <= terms.maturity;
  const int paid = wiped ? std::min(static_cast<int>(std::floor(*tau / dt)), n) : n;

  double value = 0.0;
  for (int s = 1; s <= paid; ++s) value += coupon * payoff(path.level_at((s - 1) * dt)) * curve.coupon_value_at(s);
  if (!wiped) return value + terms.face * payoff(path.level_at(terms.maturity)) * curve.discount_at_maturity();

  // Accrued coupon between the last coupon date and the wipe-out, weighted
  // by the principal left at that coupon date.
  const double last = paid * dt;
  return value + coupon * (*tau - last) * payoff(path.level_at(last)) * curve.coupon_value(*tau);
}

double riskless_value(const BondTerms& terms, const VasicekPair<double>& rates) {
  const RateCurve curve(rates, terms);
  double value = 0.0;
  for (int s = 1; s <= terms.coupon_count(); ++s) value += terms.face * terms.coupon_interval * curve.coupon_value_at(s);
  return value + terms.face * curve.discount_at_maturity();
}

namespace {

struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t wiped = 0;
  double principal = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
    wiped += o.wiped;
    principal += o.principal;
  }
};

}  // namespace

PriceResult price_bond(const BondTerms& terms, const TriggerModel& trigger, const VasicekPair<double>& rates,
                       const PricingOptions& options) {
  terms.validate();
  trigger.validate();
  if (options.paths < 1) throw DomainError("price_bond: paths must be >= 1");
  if (options.block_size < 1) throw DomainError("price_bond: block size must be >= 1");
  if (options.workers < 1) throw DomainError("price_bond: workers must be >= 1");
  if (!std::isfinite(options.kappa)) throw DomainError("price_bond: kappa must be finite");

  const RateCurve curve(rates, terms);
  const std::int64_t blocks = (options.paths + options.block_size - 1) / options.block_size;
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));

  const auto run_block = [&](std::int64_t b) {
    Engine engine = substream(options.seed, static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * options.block_size;
    const std::int64_t end = std::min(begin + options.block_size, options.paths);
    Moments& m = partial[static_cast<std::size_t>(b)];
    for (std::int64_t i = begin; i < end; ++i) {
      const TriggerPath path = simulate_trigger_path(trigger, options.kappa, terms.maturity, engine);
      m.add(path_value(path, terms, curve));
      if (const auto tau = wipeout_time(path); tau && *tau <= terms.maturity) ++m.wiped;
      m.principal += payoff(path.level_at(terms.maturity));
    }
  };

  const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(options.workers, blocks));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> pool;
    for (std::int64_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::int64_t b; (b = next.fetch_add(1)) < blocks;) run_block(b);
      });
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);

  PriceResult result;
  result.paths = total.n;
  result.price = total.mean;
  const double n = static_cast<double>(total.n);
  result.standard_error = total.n > 1 ? std::sqrt(total.m2 / (n - 1.0) / n) : 0.0;
  result.wipeout_probability = static_cast<double>(total.wiped) / n;
  result.mean_remaining_principal = total.principal / n;
  return result;
}

Calibration calibrate_kappa(const BondTerms& terms, const TriggerModel& trigger, const VasicekPair<double>& rates,
                            double target, Bracket bracket, PricingOptions options, double tolerance,
                            int max_iterations) {
  if (!(bracket.lo < bracket.hi)) throw DomainError("calibrate_kappa: bracket must satisfy lo < hi");
  const auto price_at = [&](double kappa) {
    options.kappa = kappa;
    return price_bond(terms, trigger, rates, options);
  };
  const PriceResult lo = price_at(bracket.lo);
  const PriceResult hi = price_at(bracket.hi);
  if (!(lo.price > target && target > hi.price))
    throw DomainError("calibrate_kappa: bracket [" + std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) +
                      "] does not straddle the target (prices " + std::to_string(lo.price) + ", " +
                      std::to_string(hi.price) + ")");

  Calibration out;
  double a = bracket.lo, b = bracket.hi;
  for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
    const double mid = 0.5 * (a + b);
    const PriceResult p = price_at(mid);
    out.kappa = mid;
    out.price = p.price;
    out.standard_error = p.standard_error;
    if (std::abs(p.price - target) < tolerance) {
      out.converged = true;
      return out;
    }
    (p.price > target ? a : b) = mid;
  }
  out.iterations = max_iterations;
  return out;
}

std::vector<SweepRow> sensitivity_sweep(SweepParameter parameter, std::span<const double> grid,
                                        const BondTerms& terms, const TriggerModel& trigger,
                                        const VasicekPair<double>& rates, const PricingOptions& options,
                                        double scale_to_shape) {
  if (grid.empty()) throw DomainError("sensitivity_sweep: empty grid");
  std::vector<SweepRow> rows;
  for (double v : grid) {
    SweepRow row;
    row.value = v;
    TriggerModel model = trigger;
    PricingOptions opts = options;
    if (parameter == SweepParameter::Kappa) {
      opts.kappa = v;
    } else {
      model.severity.shape = v;
      model.severity.scale = scale_to_shape * v;
    }
    try {
      const PriceResult p = price_bond(terms, model, rates, opts);
      row.price = p.price;
      row.standard_error = p.standard_error;
    } catch (const DomainError& e) {
      row.valid = false;
      row.note = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace floodrisk::catbond
