#include "stylo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "stylo/rng.hpp"

namespace stylo::stats {

namespace {

ZScoreResult normalize_columns(const Eigen::MatrixXd& x, bool scale) {
  if (x.rows() < 2) throw std::invalid_argument("normalization needs >= 2 rows");
  ZScoreResult r;
  const auto n = static_cast<double>(x.rows());
  r.mean = x.colwise().mean();
  r.normalized = x.rowwise() - r.mean.transpose();
  r.stddev = (r.normalized.array().square().colwise().sum() / n).sqrt();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (r.stddev(c) == 0.0) {
      r.constant_columns.push_back(static_cast<int>(c));
      r.normalized.col(c).setZero();
    } else if (scale) {
      r.normalized.col(c) /= r.stddev(c);
    }
  }
  return r;
}

}  // namespace

ZScoreResult zscore_columns(const Eigen::MatrixXd& x) { return normalize_columns(x, true); }

ZScoreResult center_columns(const Eigen::MatrixXd& x) { return normalize_columns(x, false); }

MeanStderr mean_stderr(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean_stderr: empty input");
  MeanStderr r;
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double v : samples) sum += v;
  r.mean = sum / n;
  if (samples.size() == 1) {
    r.single_sample = true;
    return r;
  }
  double ss = 0.0;
  for (double v : samples) ss += (v - r.mean) * (v - r.mean);
  const double sample_var = ss / (n - 1.0);
  r.stderr_of_mean = std::sqrt(sample_var / n);
  return r;
}

std::vector<RatioEntry> usage_ratio(std::span<const MeanStderr> group,
                                    std::span<const double> baseline_mean,
                                    double eps) {
  if (group.size() != baseline_mean.size())
    throw std::invalid_argument("usage_ratio: feature count mismatch");
  std::vector<RatioEntry> out(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    double num = group[i].mean;
    double den = baseline_mean[i];
    RatioEntry& e = out[i];
    if (den < eps) {
      num += eps;
      den += eps;
      e.smoothed = true;
    }
    e.ratio = num / den;
    e.ratio_stderr = group[i].stderr_of_mean / den;
    e.log10_ratio = std::log10(e.ratio);
  }
  return out;
}

SplitIndices stratified_split(std::span<const int> labels, double f_train,
                              double f_val, double f_test, std::uint64_t seed) {
  if (f_train <= 0 || f_val <= 0 || f_test <= 0)
    throw std::invalid_argument("split fractions must be positive");
  if (std::abs(f_train + f_val + f_test - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");

  std::map<int, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < labels.size(); ++i) strata[labels[i]].push_back(i);

  SplitIndices out;
  Rng rng(seed);
  for (auto& [label, idx] : strata) {
    if (idx.size() < 3)
      throw std::runtime_error("stratum for label " + std::to_string(label) +
                               " has fewer than 3 rows");
    rng.shuffle(idx);
    const auto n = idx.size();
    const auto n_train = static_cast<std::size_t>(std::llround(f_train * static_cast<double>(n)));
    auto n_val = static_cast<std::size_t>(
        std::llround((f_train + f_val) * static_cast<double>(n))) - n_train;
    if (n_train + n_val > n) n_val = n - n_train;
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
    out.validation.insert(out.validation.end(), idx.begin() + static_cast<long>(n_train),
                          idx.begin() + static_cast<long>(n_train + n_val));
    out.test.insert(out.test.end(), idx.begin() + static_cast<long>(n_train + n_val), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace stylo::stats
