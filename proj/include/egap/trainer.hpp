#pragma once

#include <cstdint>
#include <vector>

#include "egap/dataset.hpp"
#include "egap/model.hpp"
#include "egap/objective.hpp"

namespace egap {

enum class OptimizerKind { GD, Momentum, Adam };

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::Adam;
  double step_size = 1e-2;
  int max_epochs = 5000;
  int batch = 0;  // 0 = full batch
  double grad_tol = 1e-6;
  std::uint64_t seed = 0;
};

/// A trained, row-normalized local minimum. grad_norm is the l-inf norm of
/// the composite first-order residual (plain gradient for w1, soft-thresholded
/// excess for theta), so it is optimizer-independent and vanishes exactly at
/// stationary points of the l1-regularized risk.
struct Minimum {
  Params params;
  double final_risk = 0.0;
  double grad_norm = 0.0;
  std::uint64_t seed = 0;
  int width = 0;
  bool converged = false;  // grad_norm <= grad_tol before the epoch budget ran out
};

/// Full-batch training is deterministic given (ds, cfg.seed). The l1 term is
/// handled by a proximal shrinkage step after each gradient step, so exact
/// zeros in theta are reachable. Rows are re-normalized once at the end.
Minimum train(const Dataset& ds, int width, const LossSpec& spec,
              const TrainConfig& cfg);

/// `count` minima with seeds seed0..seed0+count-1. A diverged run is retried
/// with a bumped seed (recorded in Minimum::seed); more than 10% failed
/// attempts raise PoolDegenerate.
std::vector<Minimum> train_pool(const Dataset& ds, int width,
                                const LossSpec& spec,
                                const TrainConfig& cfg_base, int count,
                                std::uint64_t seed0, int workers = 1,
                                int* failures_out = nullptr);

struct L1BoundCheck {
  double l1 = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Verifies ||theta||_1 <= L/kappa on a trained minimum (requires kappa > 0).
L1BoundCheck check_l1_bound(const Minimum& min, const LossSpec& spec);

}  // namespace egap
