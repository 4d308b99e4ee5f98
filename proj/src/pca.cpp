#include "stylo/pca.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace stylo::stats {

PcaResult pca(const Eigen::MatrixXd& x, const Retain& retain) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2 || d < 1) throw std::invalid_argument("pca: need >= 2 rows and >= 1 column");
  if (!x.allFinite()) throw std::invalid_argument("pca: non-finite input");

  PcaResult r;
  r.means = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - r.means.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index m = sv.size();

  r.explained_variance.resize(m);
  for (Eigen::Index i = 0; i < m; ++i)
    r.explained_variance(i) = sv(i) * sv(i) / static_cast<double>(n - 1);
  const double total = r.explained_variance.sum();
  r.explained_ratio = total > 0.0 ? Eigen::VectorXd(r.explained_variance / total)
                                  : Eigen::VectorXd::Zero(m);

  Eigen::MatrixXd components = svd.matrixV().transpose();  // m x d
  // Fix signs so each component's largest-magnitude loading is positive.
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index arg = 0;
    components.row(i).cwiseAbs().maxCoeff(&arg);
    if (components(i, arg) < 0.0) components.row(i) = -components.row(i);
  }

  int k = 0;
  if (const auto* topk = std::get_if<RetainTopK>(&retain)) {
    if (topk->k < 1) throw std::invalid_argument("pca: retain k must be >= 1");
    k = static_cast<int>(std::min<Eigen::Index>(topk->k, m));
  } else {
    const double frac = std::get<RetainVarianceFraction>(retain).fraction;
    if (frac <= 0.0 || frac > 1.0)
      throw std::invalid_argument("pca: variance fraction must be in (0,1]");
    double cum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      cum += r.explained_ratio(i);
      ++k;
      if (cum >= frac - 1e-12) break;
    }
  }

  r.retained = k;
  r.components = components.topRows(k);
  r.scores = centered * r.components.transpose();
  return r;
}

EllipseParams confidence_ellipse(const Eigen::MatrixXd& points, bool axis_aligned) {
  if (points.cols() != 2) throw std::invalid_argument("confidence_ellipse: need 2 columns");
  if (points.rows() < 2) throw std::invalid_argument("confidence_ellipse: need >= 2 points");

  EllipseParams e;
  e.center = points.colwise().mean();
  Eigen::MatrixXd centered = points.rowwise() - e.center.transpose();
  const double n = static_cast<double>(points.rows());

  if (axis_aligned) {
    e.axis_major = Eigen::Vector2d(1, 0);
    e.axis_minor = Eigen::Vector2d(0, 1);
    double sx = std::sqrt(centered.col(0).squaredNorm() / n);
    double sy = std::sqrt(centered.col(1).squaredNorm() / n);
    if (sy > sx) {
      std::swap(sx, sy);
      e.axis_major = Eigen::Vector2d(0, 1);
      e.axis_minor = Eigen::Vector2d(1, 0);
    }
    e.semi_major = 2.0 * sx;
    e.semi_minor = 2.0 * sy;
    return e;
  }

  Eigen::Matrix2d cov = centered.transpose() * centered / n;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  // Eigenvalues ascending: index 1 is the major axis.
  Eigen::Vector2d major = es.eigenvectors().col(1);
  Eigen::Vector2d minor = es.eigenvectors().col(0);
  if (std::abs(major(0)) >= std::abs(major(1)) ? major(0) < 0 : major(1) < 0) major = -major;
  if (std::abs(minor(0)) >= std::abs(minor(1)) ? minor(0) < 0 : minor(1) < 0) minor = -minor;
  e.axis_major = major;
  e.axis_minor = minor;
  e.semi_major = 2.0 * std::sqrt(std::max(0.0, es.eigenvalues()(1)));
  e.semi_minor = 2.0 * std::sqrt(std::max(0.0, es.eigenvalues()(0)));
  return e;
}

}  // namespace stylo::stats
