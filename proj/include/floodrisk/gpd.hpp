#pragma once

#include <cmath>
#include <limits>

#include "floodrisk/error.hpp"

namespace floodrisk {

/// Below this |shape| the exponential/Gumbel limits are used.
inline constexpr double kShapeZero = 1e-6;

/// Generalized Pareto law of excesses over `threshold`.
template <typename Scalar = double>
struct GpdParams {
  Scalar scale{1};
  Scalar shape{0};
  Scalar threshold{0};

  /// Largest attainable value (not excess); +inf unless shape < 0.
  Scalar upper_endpoint() const {
    return shape < Scalar(0) ? threshold - scale / shape : std::numeric_limits<Scalar>::infinity();
  }
};

/// GEV triplet used as the point-process parameterization.
template <typename Scalar = double>
struct GevParams {
  Scalar location{0};
  Scalar scale{1};
  Scalar shape{0};
};

/// log(1 + shape * z) / shape, continuous through shape = 0.
template <typename Scalar>
Scalar log1p_ratio(Scalar shape, Scalar z) {
  using std::abs;
  using std::log1p;
  if (abs(shape) < Scalar(kShapeZero)) return z * (Scalar(1) - shape * z / Scalar(2));
  return log1p(shape * z) / shape;
}

/// P(Y > y) for an excess y >= 0.
template <typename Scalar>
Scalar gpd_survival(Scalar excess, const GpdParams<Scalar>& p) {
  using std::exp;
  if (excess <= Scalar(0)) return Scalar(1);
  const Scalar z = excess / p.scale;
  if (std::abs(p.shape) < Scalar(kShapeZero)) return exp(-z);
  const Scalar base = Scalar(1) + p.shape * z;
  if (base <= Scalar(0)) return Scalar(0);
  return exp(-log1p_ratio(p.shape, z));
}

/// Excess y with P(Y > y) = survival, survival in (0, 1].
template <typename Scalar>
Scalar gpd_excess_quantile_sf(Scalar survival, const GpdParams<Scalar>& p) {
  using std::expm1;
  using std::log;
  const Scalar log_sf = log(survival);
  if (std::abs(p.shape) < Scalar(kShapeZero)) return -p.scale * log_sf;
  return p.scale * expm1(-p.shape * log_sf) / p.shape;
}

template <typename Scalar>
Scalar gpd_log_density(Scalar excess, const GpdParams<Scalar>& p) {
  using std::log;
  if (excess < Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  const Scalar z = excess / p.scale;
  const Scalar base = Scalar(1) + p.shape * z;
  if (base <= Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  return -log(p.scale) - (Scalar(1) + p.shape) * log1p_ratio(p.shape, z);
}

/// Threshold-u GPD implied by a GEV/point-process fit:
/// scale = sigma + xi * (u - mu).
template <typename Scalar>
GpdParams<Scalar> gev_gpd_link(const GevParams<Scalar>& gev, Scalar threshold) {
  const Scalar scale = gev.scale + gev.shape * (threshold - gev.location);
  if (!(scale > Scalar(0))) throw DomainError("gev_gpd_link: linked GPD scale is not positive");
  return {scale, gev.shape, threshold};
}

/// Inverse of the link for a point-process intensity that produces `expected`
/// exceedances over `span` blocks at the threshold.
template <typename Scalar>
GevParams<Scalar> gpd_gev_link(const GpdParams<Scalar>& gpd, Scalar expected, Scalar span) {
  using std::log;
  using std::pow;
  const Scalar ratio = expected / span;
  if (std::abs(gpd.shape) < Scalar(kShapeZero)) return {gpd.threshold + gpd.scale * log(ratio), gpd.scale, gpd.shape};
  const Scalar sigma = gpd.scale * pow(ratio, gpd.shape);
  return {gpd.threshold - (gpd.scale - sigma) / gpd.shape, sigma, gpd.shape};
}

}  // namespace floodrisk
