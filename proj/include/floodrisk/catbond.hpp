#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floodrisk/gpd.hpp"
#include "floodrisk/random.hpp"
#include "floodrisk/vasicek.hpp"

namespace floodrisk::catbond {

struct TriggerLayer {
  double threshold = 0.0;      // mm
  double wipe_fraction = 0.0;  // share of principal removed per event
};

/// Layered compound Poisson trigger on event severities.
struct TriggerModel {
  std::vector<TriggerLayer> layers{{626.0, 0.005}, {744.0, 0.015}, {849.0, 0.15}, {985.0, 0.20}};
  double rate = 2.55;  // events per year
  GpdParams<double> severity{258.55, -0.181, 600.0};

  void validate() const;
};

struct BondTerms {
  double face = 1000.0;
  double maturity = 3.0;
  double coupon_interval = 0.25;
  double spread = 0.05;  // R, per annum

  int coupon_count() const;
  void validate() const;
};

/// Severity draw under the Wang-distorted measure:
///   u + (beta / xi) [(1 - Phi(Phi^-1(U) + kappa))^-xi - 1].
/// kappa = 0 is the plain inverse-CDF draw.
double distorted_severity(double uniform, const GpdParams<double>& severity, double kappa);

/// Wiped fraction contributed by one event of the given severity.
double trigger_increment(double severity, std::span<const TriggerLayer> layers);

/// Remaining principal max(1 - y, 0).
inline double payoff(double y) { return y < 1.0 ? 1.0 - y : 0.0; }

struct TriggerPath {
  std::vector<double> times;
  std::vector<double> severities;
  std::vector<double> cumulative;  // Y right after each event

  /// Y_t, right-continuous.
  double level_at(double t) const;
};

/// Homogeneous Poisson arrival times on (0, horizon].
std::vector<double> simulate_event_times(double rate, double horizon, Engine& engine);

/// One trigger path. Arrival times are drawn first, then one uniform per
/// event, so paths for different kappa or severity laws share random numbers.
TriggerPath simulate_trigger_path(const TriggerModel& trigger, double kappa, double horizon, Engine& engine);

/// First event time with Y >= 1.
std::optional<double> wipeout_time(const TriggerPath& path);

struct PricingOptions {
  double kappa = 0.42;
  std::int64_t paths = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::int64_t block_size = 4096;
};

struct PriceResult {
  double price = 0.0;
  double standard_error = 0.0;
  std::int64_t paths = 0;
  double wipeout_probability = 0.0;
  double mean_remaining_principal = 0.0;
};

/// Closed-form discount expectations at coupon dates and for accrued coupons.
class RateCurve {
 public:
  RateCurve(const VasicekPair<double>& rates, const BondTerms& terms);

  double discount(double s) const;
  double discounted_index(double s) const;
  /// E[D(0, s) (R + i_s)].
  double coupon_value(double s) const;

  double coupon_value_at(int k) const { return coupon_[k]; }
  double discount_at_maturity() const { return maturity_discount_; }

 private:
  VasicekPair<double> rates_;
  double spread_;
  std::vector<double> coupon_;  // index k = coupon date k * interval, k >= 1
  double maturity_discount_;
};

/// Present value of one path given its trigger history.
double path_value(const TriggerPath& path, const BondTerms& terms, const RateCurve& curve);

/// Value with no trigger risk: coupons plus discounted face.
double riskless_value(const BondTerms& terms, const VasicekPair<double>& rates);

/// Monte Carlo price at t = 0. Paths are generated in fixed blocks with one
/// RNG substream each and reduced in block order.
PriceResult price_bond(const BondTerms& terms, const TriggerModel& trigger, const VasicekPair<double>& rates,
                       const PricingOptions& options);

struct Bracket {
  double lo = 0.0;
  double hi = 1.5;
};

struct Calibration {
  double kappa = 0.0;
  double price = 0.0;
  double standard_error = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Bisection on kappa under a fixed seed until |price - target| < tolerance.
Calibration calibrate_kappa(const BondTerms& terms, const TriggerModel& trigger, const VasicekPair<double>& rates,
                            double target, Bracket bracket, PricingOptions options, double tolerance = 0.5,
                            int max_iterations = 60);

enum class SweepParameter { Kappa, Shape };

struct SweepRow {
  double value = 0.0;
  bool valid = true;
  std::string note;
  double price = 0.0;
  double standard_error = 0.0;
};

/// Prices across a grid with common random numbers. For the shape sweep the
/// GPD scale follows scale = ratio * shape so the upper endpoint stays fixed.
std::vector<SweepRow> sensitivity_sweep(SweepParameter parameter, std::span<const double> grid,
                                        const BondTerms& terms, const TriggerModel& trigger,
                                        const VasicekPair<double>& rates, const PricingOptions& options,
                                        double scale_to_shape = -1432.311);

}  // namespace floodrisk::catbond
