#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace floodrisk {

struct NelderMeadOptions {
  int max_iterations = 2000;
  // Stop once every vertex is within tolerance * (1 + |best|_inf) of the best
  // vertex in the infinity norm.
  double tolerance = 1e-10;
  double initial_step = 0.05;
};

struct Minimum {
  Eigen::VectorXd point;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Objectives may
/// return +inf outside their support; the starting point must be finite.
template <typename Objective>
Minimum nelder_mead(Objective&& f, const Eigen::VectorXd& start, const NelderMeadOptions& options = {}) {
  const Eigen::Index n = start.size();
  std::vector<Eigen::VectorXd> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double step = start[i] != 0.0 ? options.initial_step * start[i] : 2.5e-4;
    simplex[i + 1][i] += step;
  }
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<Eigen::Index> order(n + 1);
  Minimum result;
  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const Eigen::VectorXd& best = simplex[order.front()];

    double spread = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i)
      spread = std::max(spread, (simplex[order[i]] - best).lpNorm<Eigen::Infinity>());
    if (spread <= options.tolerance * (1.0 + best.lpNorm<Eigen::Infinity>())) {
      result.converged = true;
      break;
    }

    const Eigen::Index worst = order.back();
    const Eigen::Index second = order[n - 1];
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[order[i]];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected < values[order.front()]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    // contraction, outside if the reflection improved on the worst vertex
    const bool outside = f_reflected < values[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    const Eigen::VectorXd anchor = simplex[order.front()];
    for (Eigen::Index i = 1; i <= n; ++i) {
      simplex[order[i]] = anchor + 0.5 * (simplex[order[i]] - anchor);
      values[order[i]] = f(simplex[order[i]]);
    }
  }

  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  result.point = simplex[best];
  result.value = values[best];
  result.iterations = iteration;
  return result;
}

/// Central finite-difference Hessian with steps 1e-5 * max(|x_i|, 1).
template <typename Objective>
Eigen::MatrixXd numerical_hessian(Objective&& f, const Eigen::VectorXd& x, double relative_step = 1e-5) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) h[i] = relative_step * std::max(std::abs(x[i]), 1.0);

  const double f0 = f(x);
  Eigen::MatrixXd hessian(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd up = x, down = x;
    up[i] += h[i];
    down[i] -= h[i];
    hessian(i, i) = (f(up) - 2.0 * f0 + f(down)) / (h[i] * h[i]);
    for (Eigen::Index j = 0; j < i; ++j) {
      Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
      pp[i] += h[i]; pp[j] += h[j];
      pm[i] += h[i]; pm[j] -= h[j];
      mp[i] -= h[i]; mp[j] += h[j];
      mm[i] -= h[i]; mm[j] -= h[j];
      hessian(i, j) = hessian(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h[i] * h[j]);
    }
  }
  return hessian;
}

}  // namespace floodrisk
