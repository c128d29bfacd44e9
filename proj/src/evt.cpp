#include "floodrisk/evt.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "floodrisk/error.hpp"
#include "floodrisk/random.hpp"

namespace floodrisk::evt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;

std::vector<double> exceedances(std::span<const double> sample, double u) {
  std::vector<double> out;
  for (double x : sample)
    if (x > u) out.push_back(x);
  return out;
}

// Covariance from the observed information; NaN entries when the Hessian is
// not positive definite.
Eigen::MatrixXd invert_information(const Eigen::MatrixXd& hessian) {
  const Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  if (llt.info() != Eigen::Success)
    return Eigen::MatrixXd::Constant(hessian.rows(), hessian.cols(), std::numeric_limits<double>::quiet_NaN());
  return llt.solve(Eigen::MatrixXd::Identity(hessian.rows(), hessian.cols()));
}

Minimum minimize_twice(const auto& objective, const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  Minimum first = nelder_mead(objective, start, options);
  // A restart from the reported optimum guards against a collapsed simplex.
  NelderMeadOptions again = options;
  again.initial_step = 0.01;
  again.max_iterations = std::max(options.max_iterations - first.iterations, 1);
  Minimum second = nelder_mead(objective, first.point, again);
  second.iterations += first.iterations;
  if (first.value < second.value) {
    first.iterations = second.iterations;
    first.converged = first.converged && second.converged;
    return first;
  }
  return second;
}

}  // namespace

double ExcessSample::tail_fraction() const {
  if (values.empty()) throw DomainError("empty sample");
  return static_cast<double>(excesses.size()) / static_cast<double>(values.size());
}

ExcessSample make_excess_sample(std::span<const double> values, double threshold) {
  ExcessSample s;
  s.values.assign(values.begin(), values.end());
  s.threshold = threshold;
  for (double x : values)
    if (x > threshold) s.excesses.push_back(x - threshold);
  return s;
}

const char* to_string(Model model) {
  switch (model) {
    case Model::GPD: return "gpd";
    case Model::Exponential: return "exponential";
    case Model::PointProcess: return "pp";
    case Model::Poisson: return "poisson";
  }
  return "unknown";
}

Gpd FitResult::gpd() const {
  switch (model) {
    case Model::GPD: return {estimates[0], estimates[1], threshold};
    case Model::Exponential: return {estimates[0], 0.0, threshold};
    case Model::PointProcess: return gev_gpd_link(gev(), threshold);
    default: throw DomainError("fit has no GPD parameterization");
  }
}

Gev FitResult::gev() const {
  if (model != Model::PointProcess) throw DomainError("fit has no GEV parameterization");
  return {estimates[0], estimates[1], estimates[2]};
}

void finish_fit(FitResult& fit) {
  const auto k = static_cast<double>(fit.estimates.size());
  fit.aic = 2.0 * k - 2.0 * fit.loglik;
  fit.bic = k * std::log(static_cast<double>(fit.n_eff)) - 2.0 * fit.loglik;
  fit.standard_errors = fit.covariance.diagonal().cwiseSqrt();
  fit.ci95.clear();
  for (Eigen::Index i = 0; i < fit.estimates.size(); ++i)
    fit.ci95.push_back({fit.estimates[i] - kZ95 * fit.standard_errors[i], fit.estimates[i] + kZ95 * fit.standard_errors[i]});
}

std::vector<MrlPoint> mean_residual_life(std::span<const double> sample, std::span<const double> thresholds) {
  std::vector<MrlPoint> curve;
  curve.reserve(thresholds.size());
  for (double u : thresholds) {
    MrlPoint p;
    p.threshold = u;
    const auto ex = make_excess_sample(sample, u);
    p.n_u = ex.n_u();
    if (p.n_u < 2) {
      p.note = p.n_u == 0 ? "no exceedances" : "fewer than two exceedances";
      curve.push_back(p);
      continue;
    }
    const Eigen::Map<const Eigen::VectorXd> y(ex.excesses.data(), static_cast<Eigen::Index>(p.n_u));
    p.mean_excess = y.mean();
    const double var = (y.array() - p.mean_excess).square().sum() / static_cast<double>(p.n_u - 1);
    const double half = kZ95 * std::sqrt(var / static_cast<double>(p.n_u));
    p.lo = p.mean_excess - half;
    p.hi = p.mean_excess + half;
    p.valid = true;
    curve.push_back(p);
  }
  return curve;
}

std::vector<StabilityPoint> param_stability_scan(std::span<const double> sample, std::span<const double> thresholds,
                                                 std::size_t min_exceedances) {
  std::vector<StabilityPoint> out;
  for (double u : thresholds) {
    StabilityPoint p;
    p.threshold = u;
    const auto ex = make_excess_sample(sample, u);
    p.n_u = ex.n_u();
    if (p.n_u < std::max<std::size_t>(min_exceedances, 5)) {
      p.note = "too few exceedances (" + std::to_string(p.n_u) + ")";
      out.push_back(p);
      continue;
    }
    try {
      const FitResult fit = fit_gpd(ex);
      p.shape = fit.estimates[1];
      p.shape_ci = fit.ci95[1];
      p.modified_scale = fit.estimates[0] - p.shape * u;
      const auto& v = fit.covariance;
      const double var = v(0, 0) + u * u * v(1, 1) - 2.0 * u * v(0, 1);
      const double half = kZ95 * std::sqrt(var);
      p.modified_scale_ci = {p.modified_scale - half, p.modified_scale + half};
      p.valid = true;
    } catch (const ConvergenceError& e) {
      p.note = std::string("not converged: ") + e.what();
    } catch (const DomainError& e) {
      p.note = e.what();
    }
    out.push_back(p);
  }
  return out;
}

Gpd pwm_start(const ExcessSample& sample) {
  std::vector<double> y = sample.excesses;
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  double a0 = 0.0, a1 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = (static_cast<double>(i) + 1.0 - 0.35) / n;
    a0 += y[i];
    a1 += (1.0 - p) * y[i];
  }
  a0 /= n;
  a1 /= n;
  double shape = 2.0 - a0 / (a0 - 2.0 * a1);
  double scale = 2.0 * a0 * a1 / (a0 - 2.0 * a1);
  if (!std::isfinite(shape) || !std::isfinite(scale) || scale <= 0.0) {
    shape = 0.0;
    scale = a0;
  }
  shape = std::clamp(shape, -0.9, 0.9);
  const double ymax = y.back();
  if (shape < 0.0 && 1.0 + shape * ymax / scale <= 0.0) shape = -0.9 * scale / ymax;
  return {scale, shape, sample.threshold};
}

double gpd_negloglik(const Gpd& params, std::span<const double> excesses) {
  if (!(params.scale > 0.0)) return kInf;
  double sum = 0.0;
  for (double y : excesses) {
    const double z = y / params.scale;
    if (!(1.0 + params.shape * z > 0.0)) return kInf;
    sum += log1p_ratio(params.shape, z);
  }
  return static_cast<double>(excesses.size()) * std::log(params.scale) + (1.0 + params.shape) * sum;
}

FitResult fit_gpd(const ExcessSample& sample, const NelderMeadOptions& options) {
  if (sample.n_u() < 5) throw DomainError("fit_gpd: need at least 5 exceedances");
  const auto [lo, hi] = std::minmax_element(sample.excesses.begin(), sample.excesses.end());
  if (*hi - *lo <= 1e-12 * *hi) throw DomainError("fit_gpd: degenerate sample (all excesses equal)");

  const auto objective = [&](const Eigen::VectorXd& p) {
    return gpd_negloglik({p[0], p[1], sample.threshold}, sample.excesses);
  };
  const Gpd start = pwm_start(sample);
  const Minimum best = minimize_twice(objective, Eigen::Vector2d(start.scale, start.shape), options);
  if (!best.converged)
    throw ConvergenceError("fit_gpd: no convergence within the iteration limit", {best.point[0], best.point[1]});

  FitResult fit;
  fit.model = Model::GPD;
  fit.names = {"scale", "shape"};
  fit.estimates = best.point;
  fit.loglik = -best.value;
  fit.n_eff = sample.n_u();
  fit.threshold = sample.threshold;
  fit.converged = true;
  fit.iterations = best.iterations;
  fit.covariance = invert_information(numerical_hessian(objective, best.point));
  finish_fit(fit);
  return fit;
}

FitResult fit_exponential(const ExcessSample& sample) {
  if (sample.n_u() < 2) throw DomainError("fit_exponential: need at least 2 exceedances");
  const double n = static_cast<double>(sample.n_u());
  const double scale = std::accumulate(sample.excesses.begin(), sample.excesses.end(), 0.0) / n;
  if (!(scale > 0.0)) throw DomainError("fit_exponential: degenerate sample (zero mean excess)");

  FitResult fit;
  fit.model = Model::Exponential;
  fit.names = {"scale"};
  fit.estimates = Eigen::VectorXd::Constant(1, scale);
  fit.covariance = Eigen::MatrixXd::Constant(1, 1, scale * scale / n);
  fit.loglik = -n * (std::log(scale) + 1.0);
  fit.n_eff = sample.n_u();
  fit.threshold = sample.threshold;
  fit.converged = true;
  finish_fit(fit);
  return fit;
}

double pp_negloglik(const Gev& params, std::span<const double> sample, double u, double span) {
  if (!(params.scale > 0.0) || !(span > 0.0)) return kInf;
  const double zu = (u - params.location) / params.scale;
  if (!(1.0 + params.shape * zu > 0.0)) return kInf;
  double sum = 0.0;
  std::size_t n_u = 0;
  for (double x : sample) {
    if (!(x > u)) continue;
    const double z = (x - params.location) / params.scale;
    if (!(1.0 + params.shape * z > 0.0)) return kInf;
    sum += log1p_ratio(params.shape, z);
    ++n_u;
  }
  return static_cast<double>(n_u) * std::log(params.scale) + (1.0 + params.shape) * sum +
         span * std::exp(-log1p_ratio(params.shape, zu));
}

FitResult fit_pp(std::span<const double> sample, double u, double span, const NelderMeadOptions& options) {
  const auto excess = make_excess_sample(sample, u);
  if (excess.n_u() < 5) throw DomainError("fit_pp: need at least 5 exceedances");
  if (!(span > 0.0)) throw DomainError("fit_pp: span must be positive");
  const std::vector<double> tail = exceedances(sample, u);

  const FitResult gpd = fit_gpd(excess, options);
  const Gev start = gpd_gev_link(gpd.gpd(), static_cast<double>(excess.n_u()), span);

  const auto objective = [&](const Eigen::VectorXd& p) { return pp_negloglik({p[0], p[1], p[2]}, tail, u, span); };
  const Minimum best = minimize_twice(objective, Eigen::Vector3d(start.location, start.scale, start.shape), options);
  if (!best.converged)
    throw ConvergenceError("fit_pp: no convergence within the iteration limit",
                           {best.point[0], best.point[1], best.point[2]});

  FitResult fit;
  fit.model = Model::PointProcess;
  fit.names = {"location", "scale", "shape"};
  fit.estimates = best.point;
  fit.loglik = -best.value;
  fit.n_eff = excess.n_u();
  fit.threshold = u;
  fit.converged = true;
  fit.iterations = best.iterations;
  fit.covariance = invert_information(numerical_hessian(objective, best.point));
  finish_fit(fit);
  return fit;
}

LrTest lr_test(const FitResult& full, const FitResult& nested, int df) {
  if (df < 1) throw DomainError("lr_test: df must be >= 1");
  if (full.n_eff != nested.n_eff || full.threshold != nested.threshold)
    throw DomainError("lr_test: fits use different data or thresholds");
  LrTest t;
  t.df = df;
  t.statistic = 2.0 * (full.loglik - nested.loglik);
  if (t.statistic < -1e-6 * (1.0 + std::abs(full.loglik)))
    throw DomainError("lr_test: full model log-likelihood below the nested model");
  t.statistic = std::max(t.statistic, 0.0);
  if (t.statistic == 0.0) return t;
  const boost::math::chi_squared chi2(df);
  t.p_value = boost::math::cdf(boost::math::complement(chi2, t.statistic));
  return t;
}

double poisson_ks_statistic(std::span<const std::int64_t> counts, double rate) {
  if (counts.empty()) return 0.0;
  const std::int64_t kmax = *std::max_element(counts.begin(), counts.end());
  std::vector<double> freq(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (auto c : counts) freq[static_cast<std::size_t>(c)] += 1.0;
  const double n = static_cast<double>(counts.size());
  double empirical = 0.0, pmf = std::exp(-rate), cdf = 0.0, d = 0.0;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    if (k > 0) pmf *= rate / static_cast<double>(k);
    cdf += pmf;
    empirical += freq[static_cast<std::size_t>(k)] / n;
    d = std::max(d, std::abs(empirical - std::min(cdf, 1.0)));
  }
  return d;
}

double kolmogorov_pvalue(double statistic, std::size_t n) {
  if (n == 0 || statistic <= 0.0) return 1.0;
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

PoissonRate fit_poisson_frequency(std::span<const std::int64_t> annual_counts, std::size_t years,
                                  const PoissonGofOptions& options) {
  if (years < 1) throw DomainError("fit_poisson_frequency: years must be >= 1");
  if (annual_counts.size() > years) throw DomainError("fit_poisson_frequency: more counts than years");
  std::vector<std::int64_t> counts(annual_counts.begin(), annual_counts.end());
  for (auto c : counts)
    if (c < 0) throw DomainError("fit_poisson_frequency: negative count");
  counts.resize(years, 0);

  PoissonRate out;
  out.years = years;
  out.total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  out.rate = static_cast<double>(out.total) / static_cast<double>(years);
  if (out.total == 0) return out;

  out.ks_statistic = poisson_ks_statistic(counts, out.rate);
  out.naive_ks_pvalue = kolmogorov_pvalue(out.ks_statistic, years);
  out.bootstrap_replicates = options.replicates;
  if (options.replicates <= 0) return out;

  std::vector<std::int64_t> draw(years);
  int at_least = 0;
  for (int b = 0; b < options.replicates; ++b) {
    Engine engine = substream(options.seed, static_cast<std::uint64_t>(b));
    std::int64_t total = 0;
    for (auto& c : draw) total += (c = poisson(engine, out.rate));
    const double rate_b = static_cast<double>(total) / static_cast<double>(years);
    if (poisson_ks_statistic(draw, rate_b) >= out.ks_statistic - 1e-12) ++at_least;
  }
  out.gof_pvalue = (1.0 + at_least) / (1.0 + options.replicates);
  return out;
}

std::vector<QqPoint> qq_points(std::span<const double> excesses, const Gpd& fitted) {
  if (!(fitted.scale > 0.0)) throw DomainError("qq_points: invalid GPD scale");
  std::vector<double> y(excesses.begin(), excesses.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  std::vector<QqPoint> out;
  out.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = (static_cast<double>(i) + 1.0) / (n + 1.0);
    out.push_back({gpd_excess_quantile_sf(1.0 - p, fitted), y[i]});
  }
  return out;
}

}  // namespace floodrisk::evt
