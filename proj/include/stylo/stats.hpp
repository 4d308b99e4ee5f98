#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stylo::stats {

struct ZScoreResult {
  Eigen::MatrixXd normalized;
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population std; 0 for constant columns
  std::vector<int> constant_columns;
};

// Per-column z-scoring with population standard deviation. Constant columns
// are zeroed and flagged rather than rejected.
ZScoreResult zscore_columns(const Eigen::MatrixXd& x);

// Mean-center each column without scaling.
ZScoreResult center_columns(const Eigen::MatrixXd& x);

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;  // sample std / sqrt(n); 0 when n == 1
  bool single_sample = false;
};

MeanStderr mean_stderr(std::span<const double> samples);

struct RatioEntry {
  double ratio = 0.0;
  double ratio_stderr = 0.0;
  double log10_ratio = 0.0;
  bool smoothed = false;
};

// Group-over-baseline usage ratios with epsilon smoothing when the baseline
// mean falls below eps. ratio_stderr propagates the group's stderr through
// the (smoothed) baseline.
std::vector<RatioEntry> usage_ratio(std::span<const MeanStderr> group,
                                    std::span<const double> baseline_mean,
                                    double eps = 1e-3);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// Stratified train/validation/test split over row indices. Deterministic for
// a fixed seed. Throws if any stratum has fewer than 3 rows or the fractions
// do not sum to 1.
SplitIndices stratified_split(std::span<const int> labels, double f_train,
                              double f_val, double f_test, std::uint64_t seed);

}  // namespace stylo::stats
