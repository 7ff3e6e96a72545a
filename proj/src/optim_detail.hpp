#pragma once

#include <cmath>

#include "egap/model.hpp"

namespace egap::detail {

inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Adam step with a proximal l1 shrink on the theta block. The shrink
// threshold uses the same per-coordinate metric as the step, so fixed
// points of the iteration are stationary points of the composite risk.
struct AdamProx {
  FlatVector m, v;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  explicit AdamProx(Eigen::Index dim)
      : m(FlatVector::Zero(dim)), v(FlatVector::Zero(dim)) {}

  void apply(FlatVector& x, const FlatVector& g, double lr,
             Eigen::Index theta_offset, double kappa) {
    ++step;
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v.array() + (1.0 - beta2) * g.array().square();
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double mhat = m[i] / c1;
      const double vhat = v[i] / c2;
      const double coord_lr = lr / (std::sqrt(vhat) + eps);
      x[i] -= coord_lr * mhat;
      if (i >= theta_offset) x[i] = soft_threshold(x[i], coord_lr * kappa);
    }
  }
};

}  // namespace egap::detail
