#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace egap {

/// Flattened parameter vector: row-major w1 followed by theta
/// (length m*n + m). Round trips through Params are bit-exact.
using FlatVector = Eigen::VectorXd;

/// One-hidden-layer ReLU network x -> theta^T relu(w1 x).
/// Rows of w1 are the hidden weights; theta is the readout.
struct Params {
  Eigen::MatrixXd w1;     // m x n
  Eigen::VectorXd theta;  // m
  bool normalized = false;  // every w1 row has unit l2 norm or is zero

  int width() const { return static_cast<int>(w1.rows()); }
  int input_dim() const { return static_cast<int>(w1.cols()); }

  bool same_shape(const Params& other) const {
    return w1.rows() == other.w1.rows() && w1.cols() == other.w1.cols();
  }
};

/// output_i = sum_k theta_k * max(0, <w_k, x_i>). X is one sample per row.
Eigen::VectorXd forward(const Params& p, const Eigen::MatrixXd& X);

/// Rescales each nonzero row to unit norm and multiplies its theta by the
/// old norm; zero rows (and their theta) are left untouched. The network
/// function is preserved by positive homogeneity of the ReLU.
Params normalize_rows(const Params& p);

/// Elementwise (1-t)*a + t*b. Endpoints are returned bit-exactly.
Params interpolate(const Params& a, const Params& b, double t);

/// Rows uniform on the unit sphere S^{n-1}; theta i.i.d. normal with
/// std 1/sqrt(m).
Params init_params(int m, int n, std::uint64_t seed);

FlatVector to_flat(const Params& p);
Params from_flat(const FlatVector& v, int m, int n);

/// Text checkpoint: first line `m n`, then one value per line with
/// 17 significant digits, in FlatVector order.
void save_checkpoint(const Params& p, const std::string& path);
Params load_checkpoint(const std::string& path);

}  // namespace egap
