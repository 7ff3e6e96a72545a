#include "egap/trainer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "egap/errors.hpp"
#include "egap/parallel.hpp"
#include "egap/rng.hpp"

namespace egap {

namespace {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// l-inf norm of the composite optimality residual at p given the data-term
// gradient g: plain gradient for w1 coordinates; for theta, the distance of
// -g_i from the subdifferential of kappa*|theta_i|.
double composite_residual(const Params& p, const FlatVector& g, double kappa) {
  const int m = p.width();
  const int n = p.input_dim();
  double r = 0.0;
  for (int i = 0; i < m * n; ++i) r = std::max(r, std::abs(g[i]));
  for (int i = 0; i < m; ++i) {
    const double gi = g[m * n + i];
    const double ti = p.theta[i];
    double ri = 0.0;
    if (ti > 0.0)
      ri = std::abs(gi + kappa);
    else if (ti < 0.0)
      ri = std::abs(gi - kappa);
    else
      ri = std::max(0.0, std::abs(gi) - kappa);
    r = std::max(r, ri);
  }
  return r;
}

Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& idx,
                  std::size_t begin, std::size_t end) {
  Dataset out;
  out.task = ds.task;
  const auto count = static_cast<Eigen::Index>(end - begin);
  out.features.resize(count, ds.dim());
  out.targets.resize(count);
  for (std::size_t k = begin; k < end; ++k) {
    out.features.row(static_cast<Eigen::Index>(k - begin)) = ds.features.row(idx[k]);
    out.targets[static_cast<Eigen::Index>(k - begin)] = ds.targets[idx[k]];
  }
  return out;
}

struct AdamState {
  FlatVector m, v;
  long step = 0;
  explicit AdamState(Eigen::Index dim) : m(FlatVector::Zero(dim)), v(FlatVector::Zero(dim)) {}
};

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;
constexpr double kMomentumBeta = 0.9;

Params prox_gd_step(const Params& p, const FlatVector& g, double lr,
                    double kappa) {
  const int m = p.width();
  const int n = p.input_dim();
  FlatVector x = to_flat(p) - lr * g;
  for (int i = 0; i < m; ++i)
    x[m * n + i] = soft_threshold(x[m * n + i], lr * kappa);
  return from_flat(x, m, n);
}

// One optimizer step on (w1, theta) from the data-term gradient, followed by
// the proximal shrinkage of theta. For Adam the shrink threshold uses the
// same per-coordinate metric as the step, so iteration fixed points are
// exact stationary points of the composite objective. GD goes through
// prox_gd_step with backtracking instead (see train()).
void apply_step(Params& p, const FlatVector& g, const TrainConfig& cfg,
                const LossSpec& spec, AdamState& adam, FlatVector& velocity) {
  const int m = p.width();
  const int n = p.input_dim();
  const double lr = cfg.step_size;
  FlatVector x = to_flat(p);

  switch (cfg.optimizer) {
    case OptimizerKind::GD: {
      x -= lr * g;
      for (int i = 0; i < m; ++i)
        x[m * n + i] = soft_threshold(x[m * n + i], lr * spec.kappa);
      break;
    }
    case OptimizerKind::Momentum: {
      velocity = kMomentumBeta * velocity + g;
      x -= lr * velocity;
      for (int i = 0; i < m; ++i)
        x[m * n + i] = soft_threshold(x[m * n + i], lr * spec.kappa);
      break;
    }
    case OptimizerKind::Adam: {
      ++adam.step;
      adam.m = kAdamBeta1 * adam.m + (1.0 - kAdamBeta1) * g;
      adam.v = kAdamBeta2 * adam.v.array() + (1.0 - kAdamBeta2) * g.array().square();
      const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(adam.step));
      const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(adam.step));
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double mhat = adam.m[i] / c1;
        const double vhat = adam.v[i] / c2;
        const double coord_lr = lr / (std::sqrt(vhat) + kAdamEps);
        x[i] -= coord_lr * mhat;
        if (i >= static_cast<Eigen::Index>(m) * n)
          x[i] = soft_threshold(x[i], coord_lr * spec.kappa);
      }
      break;
    }
  }
  p = from_flat(x, m, n);
}

}  // namespace

Minimum train(const Dataset& ds, int width, const LossSpec& spec,
              const TrainConfig& cfg) {
  if (width < 1) throw std::invalid_argument("train: width must be >= 1");
  if (cfg.step_size <= 0.0) throw std::invalid_argument("train: step_size must be > 0");
  if (cfg.max_epochs < 1) throw std::invalid_argument("train: max_epochs must be >= 1");
  if (cfg.grad_tol < 0.0) throw std::invalid_argument("train: grad_tol must be >= 0");
  ds.validate();

  Params p = init_params(width, static_cast<int>(ds.dim()), cfg.seed);
  const Eigen::Index dim = static_cast<Eigen::Index>(width) * ds.dim() + width;
  AdamState adam(dim);
  FlatVector velocity = FlatVector::Zero(dim);

  Rng batch_rng(stream_seed(cfg.seed, "batches"));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ds.size()));
  for (Eigen::Index i = 0; i < ds.size(); ++i) order[static_cast<std::size_t>(i)] = i;

  bool converged = false;
  double residual = 0.0;
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const FlatVector g_full = data_grad(p, ds, spec);
    if (!g_full.allFinite())
      throw TrainingDiverged(epoch, "training diverged: non-finite gradient at epoch " +
                                        std::to_string(epoch));
    residual = composite_residual(p, g_full, spec.kappa);
    if (residual <= cfg.grad_tol) {
      converged = true;
      break;
    }
    if (cfg.batch <= 0 || cfg.batch >= ds.size()) {
      if (cfg.optimizer == OptimizerKind::GD) {
        // halving line search on the composite total keeps GD monotone;
        // if no step length descends we are numerically stationary and stay put
        const double f0 = risk(p, ds, spec).total;
        double lr = cfg.step_size;
        for (int bt = 0; bt < 40; ++bt) {
          Params cand = prox_gd_step(p, g_full, lr, spec.kappa);
          const double f1 = risk(cand, ds, spec).total;
          if (std::isfinite(f1) && f1 <= f0) {
            p = std::move(cand);
            break;
          }
          lr *= 0.5;
        }
      } else {
        apply_step(p, g_full, cfg, spec, adam, velocity);
      }
    } else {
      // deterministic per-epoch shuffle, then contiguous mini-batches
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(batch_rng.below(i + 1));
        std::swap(order[i], order[j]);
      }
      for (std::size_t begin = 0; begin < order.size();
           begin += static_cast<std::size_t>(cfg.batch)) {
        const std::size_t end =
            std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch));
        const Dataset sub = take_rows(ds, order, begin, end);
        const FlatVector g = data_grad(p, sub, spec);
        if (!g.allFinite())
          throw TrainingDiverged(epoch, "training diverged: non-finite mini-batch gradient");
        apply_step(p, g, cfg, spec, adam, velocity);
      }
    }
  }

  if (!converged) {
    const FlatVector g_full = data_grad(p, ds, spec);
    if (g_full.allFinite())
      residual = composite_residual(p, g_full, spec.kappa);
  }

  Minimum out;
  out.params = normalize_rows(p);
  const RiskReport final_report = risk(out.params, ds, spec);
  if (!std::isfinite(final_report.total))
    throw TrainingDiverged(cfg.max_epochs, "training diverged: non-finite final risk");
  out.final_risk = final_report.total;
  out.grad_norm = residual;
  out.seed = cfg.seed;
  out.width = width;
  out.converged = converged;
  return out;
}

std::vector<Minimum> train_pool(const Dataset& ds, int width,
                                const LossSpec& spec,
                                const TrainConfig& cfg_base, int count,
                                std::uint64_t seed0, int workers,
                                int* failures_out) {
  if (count < 2) throw std::invalid_argument("train_pool: count must be >= 2");
  std::vector<Minimum> pool(static_cast<std::size_t>(count));
  std::vector<int> failures(static_cast<std::size_t>(count), 0);

  parallel_for(static_cast<std::size_t>(count), workers, [&](std::size_t i) {
    TrainConfig cfg = cfg_base;
    cfg.seed = seed0 + i;
    for (int attempt = 0;; ++attempt) {
      try {
        pool[i] = train(ds, width, spec, cfg);
        return;
      } catch (const TrainingDiverged&) {
        ++failures[i];
        if (attempt >= 3) throw;
        cfg.seed = seed0 + i + 1000000ull * static_cast<std::uint64_t>(attempt + 1);
      }
    }
  });

  int total_failures = 0;
  for (int f : failures) total_failures += f;
  if (failures_out) *failures_out = total_failures;
  if (total_failures * 10 > count)
    throw PoolDegenerate("train_pool: " + std::to_string(total_failures) +
                         " diverged attempts out of " + std::to_string(count) +
                         " runs");
  return pool;
}

L1BoundCheck check_l1_bound(const Minimum& min, const LossSpec& spec) {
  if (spec.kappa <= 0.0)
    throw std::invalid_argument("check_l1_bound: kappa must be > 0");
  L1BoundCheck out;
  out.l1 = min.params.theta.lpNorm<1>();
  out.bound = spec.lipschitz / spec.kappa;
  out.pass = out.l1 <= out.bound * (1.0 + 1e-6);
  return out;
}

}  // namespace egap
