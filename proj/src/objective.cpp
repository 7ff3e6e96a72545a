#include "egap/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "egap/numeric.hpp"

namespace egap {

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_inputs(const Params& p, const Dataset& ds, const LossSpec& spec) {
  if (ds.features.cols() != p.w1.cols())
    throw std::invalid_argument("risk: dataset dim != params input dim");
  if (spec.kind == LossKind::Logistic) {
    for (Eigen::Index i = 0; i < ds.targets.size(); ++i) {
      if (ds.targets[i] != 0.0 && ds.targets[i] != 1.0)
        throw std::invalid_argument(
            "logistic loss requires targets in {0,1}");
    }
  }
}

}  // namespace

double point_loss(LossKind kind, double y, double z) {
  if (kind == LossKind::MSE) {
    const double d = z - y;
    return d * d;
  }
  const double s = 2.0 * y - 1.0;
  return softplus(-s * z);
}

double point_dloss(LossKind kind, double y, double z) {
  if (kind == LossKind::MSE) return 2.0 * (z - y);
  const double s = 2.0 * y - 1.0;
  return -s * sigmoid(-s * z);
}

RiskReport risk(const Params& p, const Dataset& ds, const LossSpec& spec) {
  check_inputs(p, ds, spec);
  const Eigen::VectorXd pred = forward(p, ds.features);
  const Eigen::Index n = ds.size();
  std::vector<double> losses(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    losses[static_cast<std::size_t>(i)] = point_loss(spec.kind, ds.targets[i], pred[i]);
  RiskReport r;
  r.data_term = pairwise_sum(losses) / static_cast<double>(n);
  r.reg_term = spec.kappa * p.theta.lpNorm<1>();
  r.total = r.data_term + r.reg_term;
  r.per_sample_max = 0.0;
  for (double v : losses) r.per_sample_max = std::max(r.per_sample_max, v);
  return r;
}

FlatVector data_grad(const Params& p, const Dataset& ds, const LossSpec& spec) {
  check_inputs(p, ds, spec);
  const Eigen::MatrixXd pre = ds.features * p.w1.transpose();  // N x m
  const Eigen::MatrixXd acts = pre.cwiseMax(0.0);
  const Eigen::VectorXd pred = acts * p.theta;
  const Eigen::Index n = ds.size();

  Eigen::VectorXd dloss(n);  // d data_term / d pred_i, including the 1/N
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i)
    dloss[i] = point_dloss(spec.kind, ds.targets[i], pred[i]) * inv_n;

  // grad theta_k = sum_i dloss_i * acts_ik
  const Eigen::VectorXd g_theta = acts.transpose() * dloss;
  // grad w1 = ((dloss theta^T) .* 1[pre > 0])^T X ; ReLU'(0) = 0
  Eigen::MatrixXd gate = (pre.array() > 0.0).cast<double>();
  const Eigen::MatrixXd weighted =
      (dloss * p.theta.transpose()).cwiseProduct(gate);  // N x m
  const Eigen::MatrixXd g_w1 = weighted.transpose() * ds.features;  // m x n

  Params g;
  g.w1 = g_w1;
  g.theta = g_theta;
  return to_flat(g);
}

FlatVector grad(const Params& p, const Dataset& ds, const LossSpec& spec) {
  FlatVector g = data_grad(p, ds, spec);
  const int m = p.width();
  const int n = p.input_dim();
  for (int i = 0; i < m; ++i) {
    const double t = p.theta[i];
    if (t > 0.0)
      g[m * n + i] += spec.kappa;
    else if (t < 0.0)
      g[m * n + i] -= spec.kappa;
  }
  return g;
}

double lipschitz_constant(LossKind kind, std::optional<double> prediction_bound,
                          double max_abs_target) {
  if (kind == LossKind::Logistic) return 1.0;
  if (!prediction_bound)
    throw std::invalid_argument(
        "MSE Lipschitz constant requires a prediction bound");
  if (*prediction_bound < 0.0 || max_abs_target < 0.0)
    throw std::invalid_argument("bounds must be nonnegative");
  return 2.0 * (*prediction_bound + max_abs_target);
}

}  // namespace egap
