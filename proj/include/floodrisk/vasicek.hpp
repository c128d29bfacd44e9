#pragma once

#include <cmath>

#include "floodrisk/error.hpp"

namespace floodrisk {

/// One Ornstein-Uhlenbeck factor dx = a (b - x) dt + sigma dW.
template <typename Scalar = double>
struct OuFactor {
  Scalar speed{1};  // a
  Scalar mean{0};   // b
  Scalar vol{0};    // sigma
  Scalar initial{0};
};

/// Risk-free short rate r and reference-rate factor l with correlated
/// drivers; the floating coupon index is i = exp(l) - 1.
template <typename Scalar = double>
struct VasicekPair {
  OuFactor<Scalar> rate;
  OuFactor<Scalar> reference;
  Scalar correlation{0};

  void validate() const {
    if (!(rate.speed > Scalar(0)) || !(reference.speed > Scalar(0)))
      throw DomainError("Vasicek mean-reversion speeds must be positive");
    if (rate.vol < Scalar(0) || reference.vol < Scalar(0)) throw DomainError("Vasicek volatilities must be >= 0");
    if (!(correlation > Scalar(-1) && correlation < Scalar(1)))
      throw DomainError("Vasicek correlation must lie in (-1, 1)");
  }
};

namespace vasicek {

/// B(t, s) = (1 - exp(-a (s - t))) / a.
template <typename Scalar>
Scalar bond_b(const OuFactor<Scalar>& r, Scalar horizon) {
  using std::expm1;
  return -expm1(-r.speed * horizon) / r.speed;
}

/// A(t, s) of the zero-coupon price A exp(-B r_t).
template <typename Scalar>
Scalar bond_a(const OuFactor<Scalar>& r, Scalar horizon) {
  using std::exp;
  const Scalar b = bond_b(r, horizon);
  const Scalar a2 = r.speed * r.speed;
  const Scalar s2 = r.vol * r.vol;
  return exp((b - horizon) * (a2 * r.mean - s2 / Scalar(2)) / a2 - s2 * b * b / (Scalar(4) * r.speed));
}

/// E_t[D(t, s)] with D the money-market discount factor and r_t given.
template <typename Scalar>
Scalar discount_factor_expectation(const OuFactor<Scalar>& r, Scalar t, Scalar s, Scalar r_t) {
  using std::exp;
  if (s < t) throw DomainError("discount_factor_expectation: s < t");
  const Scalar h = s - t;
  return bond_a(r, h) * exp(-bond_b(r, h) * r_t);
}

/// Variance of the integrated short rate over a horizon.
template <typename Scalar>
Scalar integrated_rate_variance(const OuFactor<Scalar>& r, Scalar h) {
  const Scalar b = bond_b(r, h);
  return r.vol * r.vol / (r.speed * r.speed) * (h - b - r.speed * b * b / Scalar(2));
}

/// log A~(t, s) for E_t[D(t, s) exp(l_s)] = A~ exp(-B r_t + B~ l_t), from
/// the joint Gaussian law of (integral of r, l_s).
template <typename Scalar>
Scalar log_a_tilde(const VasicekPair<Scalar>& p, Scalar h) {
  using std::exp;
  using std::expm1;
  const auto& r = p.rate;
  const auto& l = p.reference;
  const Scalar b = bond_b(r, h);
  const Scalar decay_l = -expm1(-l.speed * h);  // 1 - exp(-a_l h)
  const Scalar var_int = integrated_rate_variance(r, h);
  const Scalar var_l = l.vol * l.vol / (Scalar(2) * l.speed) * (-expm1(Scalar(-2) * l.speed * h));
  const Scalar cov = p.correlation * r.vol * l.vol / r.speed *
                     (decay_l / l.speed - (-expm1(-(r.speed + l.speed) * h)) / (r.speed + l.speed));
  const Scalar mean = -r.mean * (h - b) + l.mean * decay_l;
  return mean + (var_int + var_l - Scalar(2) * cov) / Scalar(2);
}

/// B~(t, s) = exp(-a_l (s - t)).
template <typename Scalar>
Scalar b_tilde(const VasicekPair<Scalar>& p, Scalar h) {
  using std::exp;
  return exp(-p.reference.speed * h);
}

/// E_t[D(t, s) i_s] = A~ exp(-B r_t + B~ l_t) - A exp(-B r_t).
template <typename Scalar>
Scalar discounted_index_expectation(const VasicekPair<Scalar>& p, Scalar t, Scalar s, Scalar r_t, Scalar l_t) {
  using std::exp;
  if (s < t) throw DomainError("discounted_index_expectation: s < t");
  const Scalar h = s - t;
  const Scalar b = bond_b(p.rate, h);
  return exp(log_a_tilde(p, h) - b * r_t + b_tilde(p, h) * l_t) - bond_a(p.rate, h) * exp(-b * r_t);
}

/// C1 + C2 in its commonly printed closed form, kept for
/// comparison. It contains growing exp(+a_l h) terms and drifts away from the
/// Gaussian expectation as the horizon grows (about 3% at three years for
/// typical parameters). Requires a_l != a_r.
template <typename Scalar>
Scalar tabulated_c1_plus_c2(const VasicekPair<Scalar>& p, Scalar h) {
  using std::exp;
  const auto& r = p.rate;
  const auto& l = p.reference;
  if (l.speed == r.speed) throw DomainError("tabulated Shibor expectation is singular when a_l == a_r");
  const Scalar ar = r.speed, br = r.mean, sr = r.vol;
  const Scalar al = l.speed, bl = l.mean, sl = l.vol;
  const Scalar rho = p.correlation;
  const Scalar c1 = (br - sr * sr / (Scalar(2) * ar)) * h + Scalar(3) * sr * sr / (Scalar(4) * ar * ar) +
                    rho * sr * sl / (al * (al - ar)) + sl * sl / (Scalar(4) * al) + bl - br / ar;
  const Scalar c2 = sr * sr / (Scalar(4) * ar * ar) * exp(Scalar(-2) * ar * h) +
                    (br / ar - sr * sr / (ar * ar)) * exp(-ar * h) + (rho * sr * sl / (ar * al) - bl) * exp(al * h) -
                    rho * sr * sl / (ar * (al - ar)) * exp((al - ar) * h) -
                    sl * sl / (Scalar(4) * al) * exp(Scalar(2) * al * h);
  return c1 + c2;
}

template <typename Scalar>
Scalar discounted_index_expectation_tabulated(const VasicekPair<Scalar>& p, Scalar t, Scalar s, Scalar r_t,
                                              Scalar l_t) {
  using std::exp;
  if (s < t) throw DomainError("discounted_index_expectation: s < t");
  const Scalar h = s - t;
  const Scalar b = bond_b(p.rate, h);
  return exp(-tabulated_c1_plus_c2(p, h) - b * r_t + b_tilde(p, h) * l_t) - bond_a(p.rate, h) * exp(-b * r_t);
}

}  // namespace vasicek
}  // namespace floodrisk
