#include "egap/dataset.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "egap/errors.hpp"
#include "egap/rng.hpp"

namespace egap {

namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& field, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid numeric field '" + field + "' in " + where);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() < 1 || features.cols() < 1)
    throw std::invalid_argument("dataset must have N >= 1 and n >= 1");
  if (targets.size() != features.rows())
    throw std::invalid_argument("targets length must match feature rows");
  if (!features.allFinite() || !targets.allFinite())
    throw std::invalid_argument("dataset contains NaN/Inf entries");
  if (task == Task::BinaryClassification) {
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      if (targets[i] != 0.0 && targets[i] != 1.0)
        throw std::invalid_argument("classification targets must be 0 or 1");
    }
  }
}

Dataset make_moons(int n_samples, double noise, std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("make_moons requires n_samples >= 2");
  const int n_outer = n_samples / 2;
  const int n_inner = n_samples - n_outer;

  Dataset ds;
  ds.features.resize(n_samples, 2);
  ds.targets.resize(n_samples);
  ds.task = Task::Regression;
  ds.feature_names = {"x1", "x2"};

  const double pi = std::numbers::pi;
  for (int i = 0; i < n_outer; ++i) {
    const double t = n_outer == 1 ? 0.0 : pi * i / (n_outer - 1);
    ds.features(i, 0) = std::cos(t);
    ds.features(i, 1) = std::sin(t);
    ds.targets[i] = 0.0;
  }
  for (int i = 0; i < n_inner; ++i) {
    const double t = n_inner == 1 ? 0.0 : pi * i / (n_inner - 1);
    ds.features(n_outer + i, 0) = 1.0 - std::cos(t);
    ds.features(n_outer + i, 1) = 1.0 - std::sin(t) - 0.5;
    ds.targets[n_outer + i] = 1.0;
  }

  if (noise > 0.0) {
    Rng rng(stream_seed(seed, "moons"));
    for (int i = 0; i < n_samples; ++i)
      for (int j = 0; j < 2; ++j) ds.features(i, j) += noise * rng.normal();
  }
  ds.validate();
  return ds;
}

Dataset load_wdbc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open WDBC file: " + path);

  constexpr int kFeatures = 30;
  std::vector<std::array<double, kFeatures>> rows;
  std::vector<double> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != kFeatures + 2)
      throw ParseError("WDBC row " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) +
                       " columns, expected 32");
    const std::string& diag = fields[1];
    double label = 0.0;
    if (diag == "M")
      label = 1.0;
    else if (diag == "B")
      label = 0.0;
    else
      throw ParseError("WDBC row " + std::to_string(lineno) +
                       " has diagnosis '" + diag + "', expected M or B");
    std::array<double, kFeatures> feats{};
    for (int j = 0; j < kFeatures; ++j)
      feats[j] = parse_double(fields[j + 2],
                              "WDBC row " + std::to_string(lineno));
    rows.push_back(feats);
    labels.push_back(label);
  }
  if (rows.empty()) throw ParseError("WDBC file is empty: " + path);

  Dataset ds;
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), kFeatures);
  ds.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < kFeatures; ++j) ds.features(static_cast<Eigen::Index>(i), j) = rows[i][j];
    ds.targets[static_cast<Eigen::Index>(i)] = labels[i];
  }
  ds.task = Task::BinaryClassification;
  ds.validate();
  return ds;
}

Dataset standardize(const Dataset& ds) {
  Dataset out = ds;
  const Eigen::Index n = ds.size();
  for (Eigen::Index j = 0; j < ds.dim(); ++j) {
    const double mean = ds.features.col(j).mean();
    const double var =
        (ds.features.col(j).array() - mean).square().sum() / static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (sd < 1e-12) {
      out.features.col(j).setZero();
    } else {
      out.features.col(j) = (ds.features.col(j).array() - mean) / sd;
    }
  }
  out.validate();
  return out;
}

Dataset train_split(const Dataset& ds, std::uint64_t seed, bool shuffle) {
  if (!shuffle) return ds;
  const Eigen::Index n = ds.size();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng rng(stream_seed(seed, "split"));
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  Dataset out = ds;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.features.row(i) = ds.features.row(perm[static_cast<std::size_t>(i)]);
    out.targets[i] = ds.targets[perm[static_cast<std::size_t>(i)]];
  }
  return out;
}

void export_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "y";
  for (Eigen::Index j = 0; j < ds.dim(); ++j) out << ",x" << (j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    out << format_g17(ds.targets[i]);
    for (Eigen::Index j = 0; j < ds.dim(); ++j)
      out << "," << format_g17(ds.features(i, j));
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Dataset import_csv(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("dataset file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "y")
    throw ParseError("dataset header must start with column 'y' in " + path);
  const std::size_t ncols = header.size();
  if (ncols < 2) throw ParseError("dataset has no feature columns in " + path);

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != ncols)
      throw ParseError("dataset row " + std::to_string(lineno) +
                       " has wrong column count");
    std::vector<double> row(ncols);
    for (std::size_t j = 0; j < ncols; ++j)
      row[j] = parse_double(fields[j], "dataset row " + std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("dataset has no rows: " + path);

  Dataset ds;
  ds.task = task;
  ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(ncols - 1));
  ds.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ds.targets[static_cast<Eigen::Index>(i)] = rows[i][0];
    for (std::size_t j = 1; j < ncols; ++j)
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = rows[i][j];
  }
  ds.feature_names.assign(header.begin() + 1, header.end());
  ds.validate();
  return ds;
}

}  // namespace egap
