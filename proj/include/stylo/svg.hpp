#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "stylo/cluster.hpp"
#include "stylo/pca.hpp"

namespace stylo::svg {

// All emitters produce standalone SVG 1.1 documents with the source numbers
// embedded as data-* attributes, so tests can check values without rendering.
// Output is byte-deterministic for a fixed input.

std::string format_number(double v);  // shortest round-trip decimal

struct BarDatum {
  std::string label;
  double value = 0.0;
  double error = 0.0;  // 0 disables the error whisker
};

std::string bar_chart(const std::vector<BarDatum>& bars, const std::string& title);

// Dot plot on a log10 x-axis with symmetric error bars; used for usage
// ratios. Values must be positive.
std::string dot_plot_log(const std::vector<BarDatum>& dots, const std::string& title);

std::string heatmap(const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const Eigen::MatrixXd& values,
                    const std::string& title);

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
  std::string color_key;   // e.g. model
  std::string marker_key;  // e.g. decoding config
};

struct ScatterEllipse {
  stats::EllipseParams params;
  std::string label;
};

std::string scatter_plot(const std::vector<ScatterPoint>& points,
                         const std::vector<ScatterEllipse>& ellipses, const std::string& title);

std::string dendrogram_chart(const stats::Dendrogram& tree, const std::string& title);

// Consensus clades as a nested bracket diagram with support annotations.
std::string consensus_chart(const stats::ConsensusTree& tree, const std::string& title);

struct RocCurve {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (fpr, tpr)
  double auc = 0.0;
};

std::string roc_chart(const std::vector<RocCurve>& curves, const std::string& title);

std::string histogram(const std::vector<double>& values, int bins, const std::string& title);

}  // namespace stylo::svg
