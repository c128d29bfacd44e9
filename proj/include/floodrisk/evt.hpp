#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floodrisk/gpd.hpp"
#include "floodrisk/optimize.hpp"

namespace floodrisk::evt {

using Gpd = GpdParams<double>;
using Gev = GevParams<double>;

/// Sample split at a threshold. `excesses` holds x - u for every x > u.
struct ExcessSample {
  std::vector<double> values;
  double threshold = 0.0;
  std::vector<double> excesses;

  std::size_t n() const { return values.size(); }
  std::size_t n_u() const { return excesses.size(); }
  /// Empirical survival probability at the threshold, n_u / n.
  double tail_fraction() const;
};

ExcessSample make_excess_sample(std::span<const double> values, double threshold);

enum class Model { GPD, Exponential, PointProcess, Poisson };

const char* to_string(Model model);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FitResult {
  Model model = Model::GPD;
  std::vector<std::string> names;
  Eigen::VectorXd estimates;
  Eigen::VectorXd standard_errors;
  Eigen::MatrixXd covariance;
  std::vector<Interval> ci95;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n_eff = 0;
  double threshold = 0.0;
  bool converged = false;
  int iterations = 0;

  Eigen::Index parameter_count() const { return estimates.size(); }

  /// Typed views; throw if the model has no such parameterization.
  Gpd gpd() const;
  Gev gev() const;
};

/// Fills AIC, BIC and 95% intervals from estimates, covariance and loglik.
void finish_fit(FitResult& fit);

struct MrlPoint {
  double threshold = 0.0;
  std::size_t n_u = 0;
  double mean_excess = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool valid = false;
  std::string note;
};

/// Mean residual life curve with normal-approximation 95% bands. Grid
/// points leaving fewer than two exceedances are returned flagged.
std::vector<MrlPoint> mean_residual_life(std::span<const double> sample, std::span<const double> thresholds);

struct StabilityPoint {
  double threshold = 0.0;
  std::size_t n_u = 0;
  bool valid = false;
  std::string note;
  double shape = 0.0;
  Interval shape_ci;
  // scale - shape * u, constant in u above a valid threshold
  double modified_scale = 0.0;
  Interval modified_scale_ci;
};

std::vector<StabilityPoint> param_stability_scan(std::span<const double> sample, std::span<const double> thresholds,
                                                 std::size_t min_exceedances = 10);

/// Probability-weighted-moment estimate of (scale, shape) used to start the
/// likelihood search.
Gpd pwm_start(const ExcessSample& sample);

double gpd_negloglik(const Gpd& params, std::span<const double> excesses);

/// GPD maximum likelihood by Nelder-Mead from the PWM start; standard errors
/// from the inverse of a finite-difference observed information.
FitResult fit_gpd(const ExcessSample& sample, const NelderMeadOptions& options = {});

/// Closed-form exponential (shape 0) fit: scale = mean excess.
FitResult fit_exponential(const ExcessSample& sample);

/// Negative point-process log-likelihood of the exceedances of `u`:
///   n_u ln(sigma) + (1/xi + 1) sum ln(1 + xi (x_i - mu) / sigma)
///     + span * (1 + xi (u - mu) / sigma)^(-1/xi)
/// `span` is the number of blocks the sample covers (1 as written for a
/// single period). Returns +inf outside the support.
double pp_negloglik(const Gev& params, std::span<const double> sample, double u, double span = 1.0);

/// Block count of the "daily" time convention: n observations at 365.25
/// per block.
inline double daily_span(std::size_t n) { return static_cast<double>(n) / 365.25; }

FitResult fit_pp(std::span<const double> sample, double u, double span = 1.0, const NelderMeadOptions& options = {});

/// Likelihood-ratio test of nested fits on the same exceedances.
struct LrTest {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

LrTest lr_test(const FitResult& full, const FitResult& nested, int df);

struct PoissonRate {
  double rate = 0.0;
  std::size_t years = 0;
  std::int64_t total = 0;
  double ks_statistic = 0.0;
  double gof_pvalue = 1.0;    // parametric bootstrap
  double naive_ks_pvalue = 1.0;  // continuous Kolmogorov reference
  int bootstrap_replicates = 0;
};

struct PoissonGofOptions {
  int replicates = 2000;
  std::uint64_t seed = 20190101;
};

/// MLE of the annual rate (sum / years). Years absent from `annual_counts`
/// count as zero, so annual_counts.size() <= years.
PoissonRate fit_poisson_frequency(std::span<const std::int64_t> annual_counts, std::size_t years,
                                  const PoissonGofOptions& options = {});

/// Kolmogorov distance between the empirical CDF of counts and Poisson(rate).
double poisson_ks_statistic(std::span<const std::int64_t> counts, double rate);

/// Asymptotic Kolmogorov upper tail with the Stephens small-sample
/// correction.
double kolmogorov_pvalue(double statistic, std::size_t n);

struct QqPoint {
  double model = 0.0;
  double empirical = 0.0;
};

/// (F^-1(i / (n + 1)), y_(i)) for sorted excesses y.
std::vector<QqPoint> qq_points(std::span<const double> excesses, const Gpd& fitted);

}  // namespace floodrisk::evt
