#pragma once

#include <optional>

#include "egap/dataset.hpp"
#include "egap/model.hpp"

namespace egap {

enum class LossKind { MSE, Logistic };

/// Loss kind plus the l1 coefficient kappa and the per-prediction Lipschitz
/// constant L of the loss in the logit. Logistic is globally 1-Lipschitz;
/// squared error is only Lipschitz on a bounded prediction range, so its L
/// is supplied through lipschitz_constant().
struct LossSpec {
  LossKind kind = LossKind::MSE;
  double kappa = 1e-4;
  double lipschitz = 0.0;
};

/// data_term + reg_term decomposition of the regularized empirical risk:
///   (1/N) sum_i loss(y_i, pred_i) + kappa * ||theta||_1
struct RiskReport {
  double data_term = 0.0;
  double reg_term = 0.0;
  double total = 0.0;
  double per_sample_max = 0.0;
};

RiskReport risk(const Params& p, const Dataset& ds, const LossSpec& spec);

/// Single-sample loss at target y and logit z. Logistic is evaluated in the
/// stable form log(1+exp(-s z)) with s = 2y-1.
double point_loss(LossKind kind, double y, double z);

/// d point_loss / d z.
double point_dloss(LossKind kind, double y, double z);

/// Exact gradient of the data term plus the kappa*sign(theta) subgradient
/// (sign(0) = 0). The ReLU derivative at 0 is taken as 0.
FlatVector grad(const Params& p, const Dataset& ds, const LossSpec& spec);

/// Gradient of the data term only; what proximal optimizers step on.
FlatVector data_grad(const Params& p, const Dataset& ds, const LossSpec& spec);

/// Logistic -> 1 exactly. MSE -> 2*(prediction_bound + max_abs_target), a
/// valid constant while predictions stay inside the stated range; requires
/// prediction_bound.
double lipschitz_constant(LossKind kind,
                          std::optional<double> prediction_bound = {},
                          double max_abs_target = 0.0);

}  // namespace egap
