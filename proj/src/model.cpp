#include "egap/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "egap/errors.hpp"
#include "egap/rng.hpp"

namespace egap {

Eigen::VectorXd forward(const Params& p, const Eigen::MatrixXd& X) {
  if (X.cols() != p.w1.cols())
    throw std::invalid_argument("forward: input dim mismatch");
  if (p.theta.size() != p.w1.rows())
    throw std::invalid_argument("forward: theta length != width");
  // relu(X w1^T) theta; materialize the activations so every caller
  // (including segment evaluators that blend preactivations) reproduces
  // the exact same arithmetic
  const Eigen::MatrixXd acts = (X * p.w1.transpose()).cwiseMax(0.0);
  return acts * p.theta;
}

Params normalize_rows(const Params& p) {
  Params out = p;
  for (Eigen::Index i = 0; i < p.w1.rows(); ++i) {
    const double norm = p.w1.row(i).norm();
    if (norm > 0.0) {
      out.w1.row(i) /= norm;
      out.theta[i] *= norm;
    }
  }
  out.normalized = true;
  return out;
}

Params interpolate(const Params& a, const Params& b, double t) {
  if (!a.same_shape(b))
    throw std::invalid_argument("interpolate: shape mismatch");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  Params out;
  out.w1 = (1.0 - t) * a.w1 + t * b.w1;
  out.theta = (1.0 - t) * a.theta + t * b.theta;
  return out;
}

Params init_params(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("init_params: m and n must be >= 1");
  Rng rng(stream_seed(seed, "init"));
  Params p;
  p.w1.resize(m, n);
  p.theta.resize(m);
  for (int i = 0; i < m; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < n; ++j) p.w1(i, j) = rng.normal();
      norm2 = p.w1.row(i).squaredNorm();
    } while (norm2 == 0.0);
    p.w1.row(i) /= std::sqrt(norm2);
  }
  const double theta_std = 1.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < m; ++i) p.theta[i] = theta_std * rng.normal();
  p.normalized = true;
  return p;
}

FlatVector to_flat(const Params& p) {
  const int m = p.width();
  const int n = p.input_dim();
  FlatVector v(m * n + m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) v[i * n + j] = p.w1(i, j);
  v.tail(m) = p.theta;
  return v;
}

Params from_flat(const FlatVector& v, int m, int n) {
  if (v.size() != static_cast<Eigen::Index>(m) * n + m)
    throw std::invalid_argument("from_flat: length != m*n + m");
  Params p;
  p.w1.resize(m, n);
  p.theta.resize(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) p.w1(i, j) = v[i * n + j];
  p.theta = v.tail(m);
  return p;
}

void save_checkpoint(const Params& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out << p.width() << " " << p.input_dim() << "\n";
  const FlatVector v = to_flat(p);
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    out << buf << "\n";
  }
  if (!out) throw IoError("checkpoint write failed: " + path);
}

Params load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  int m = 0, n = 0;
  if (!(in >> m >> n) || m < 1 || n < 1)
    throw ParseError("checkpoint header must be `m n`: " + path);
  FlatVector v(static_cast<Eigen::Index>(m) * n + m);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(in >> v[i]))
      throw ParseError("checkpoint truncated at value " + std::to_string(i) +
                       ": " + path);
  }
  return from_flat(v, m, n);
}

}  // namespace egap
