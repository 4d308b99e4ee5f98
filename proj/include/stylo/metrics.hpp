#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace stylo::stats {

struct MetricReport {
  double f1_positive = 0.0;  // "machine" class
  double f1_negative = 0.0;  // "human" class
  std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr)
  double auc = 0.0;
  bool auc_defined = true;
  // Confusion at threshold 0.5: [tn, fp, fn, tp].
  std::array<long, 4> confusion{0, 0, 0, 0};
};

// Binary classification metrics from probability scores. Positive label = 1
// ("machine"). ROC sweeps unique scores descending, grouping ties into one
// step; AUC is the trapezoidal area. F1 uses threshold 0.5.
MetricReport evaluate_metrics(std::span<const double> scores, std::span<const int> labels);

}  // namespace stylo::stats
