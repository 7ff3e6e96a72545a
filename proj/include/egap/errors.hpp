#pragma once

#include <stdexcept>
#include <string>

namespace egap {

// File could not be opened/read.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message names the offending row or column.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Risk became non-finite during optimization; carries the epoch.
struct TrainingDiverged : std::runtime_error {
  int epoch;
  TrainingDiverged(int epoch_, const std::string& msg)
      : std::runtime_error(msg), epoch(epoch_) {}
};

// More than 10% of a training pool failed even after seed retries.
struct PoolDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A DSS midpoint relaxation diverged; carries the segment index.
struct PathRelaxFailed : std::runtime_error {
  int segment;
  PathRelaxFailed(int segment_, const std::string& msg)
      : std::runtime_error(msg), segment(segment_) {}
};

}  // namespace egap
