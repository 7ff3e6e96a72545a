#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace egap {

enum class Task { Regression, BinaryClassification };

/// An immutable, fully materialized dataset. Features are row-per-sample;
/// targets are regression values in [0,1] or class labels {0,1}.
struct Dataset {
  Eigen::MatrixXd features;  // N x n
  Eigen::VectorXd targets;   // N
  Task task = Task::Regression;
  std::vector<std::string> feature_names;  // optional, may be empty

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }

  /// Throws std::invalid_argument on NaN/Inf entries, empty data, or
  /// non-{0,1} targets under BinaryClassification.
  void validate() const;
};

/// Two interleaved half-circles: class 0 on the upper unit half-circle,
/// class 1 on the reflected half-circle shifted right by 1 and down by 0.5
/// (the de facto standard generator). Gaussian noise with the given std is
/// added per coordinate. Targets stay real {0,1}; task = Regression (the
/// dataset is fit with squared error).
Dataset make_moons(int n_samples, double noise, std::uint64_t seed);

/// Wisconsin Diagnostic Breast Cancer file: comma-separated, no header,
/// 32 columns (id, diagnosis M/B, 30 floats). The id column is dropped,
/// diagnosis maps M -> 1, B -> 0, task = BinaryClassification.
Dataset load_wdbc(const std::string& path);

/// Per-column z-scoring; columns with std < 1e-12 become all-zero.
/// Targets are untouched.
Dataset standardize(const Dataset& ds);

/// Deterministic row permutation given seed when `shuffle` is set;
/// identity otherwise (experiments use the full set by default).
Dataset train_split(const Dataset& ds, std::uint64_t seed, bool shuffle);

/// CSV with header `y,x1,...,xn`, floats with 17 significant digits.
void export_csv(const Dataset& ds, const std::string& path);

/// Reads the export_csv format back. Features round-trip bit-exactly.
Dataset import_csv(const std::string& path, Task task);

}  // namespace egap
