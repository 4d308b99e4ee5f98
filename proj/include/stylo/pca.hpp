#pragma once

#include <Eigen/Dense>
#include <variant>

namespace stylo::stats {

struct RetainTopK {
  int k;
};
struct RetainVarianceFraction {
  double fraction;  // in (0, 1]
};
using Retain = std::variant<RetainTopK, RetainVarianceFraction>;

struct PcaResult {
  // Retained components as rows, orthonormal.
  Eigen::MatrixXd components;
  // Full spectrum, descending; variances use the (n-1) divisor.
  Eigen::VectorXd explained_variance;
  Eigen::VectorXd explained_ratio;  // normalized to sum 1
  Eigen::VectorXd means;
  // Projections of the input rows onto the retained components.
  Eigen::MatrixXd scores;
  int retained = 0;
};

// SVD of the column-centered matrix. Sign convention: the largest-magnitude
// entry of each component is positive.
PcaResult pca(const Eigen::MatrixXd& x, const Retain& retain);

struct EllipseParams {
  Eigen::Vector2d center;
  Eigen::Vector2d axis_major;
  Eigen::Vector2d axis_minor;
  double semi_major = 0.0;  // 2 x std along the major axis
  double semi_minor = 0.0;
};

// Covariance-oriented confidence ellipse over 2-D points; semi-axis lengths
// are twice the standard deviation along each principal direction. With
// axis_aligned the axes are fixed to the coordinate axes.
EllipseParams confidence_ellipse(const Eigen::MatrixXd& points, bool axis_aligned = false);

}  // namespace stylo::stats
