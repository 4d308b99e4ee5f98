#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stylo/pca.hpp"
#include "stylo/rng.hpp"

using namespace stylo;
using namespace stylo::stats;

TEST_CASE("pca on collinear points") {
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, -1, -1, 2, 2, -2, -2;
  auto r = pca(x, RetainTopK{2});
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(r.components(0, 0) - s) < 1e-12);
  CHECK(std::abs(r.components(0, 1) - s) < 1e-12);
  CHECK(r.explained_variance(1) < 1e-12);
}

TEST_CASE("pca reconstruction and energy conservation") {
  Rng rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd x(12, 7);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
    auto r = pca(x, RetainTopK{7});
    // Reconstruction with all components.
    Eigen::MatrixXd rec = (r.scores * r.components).rowwise() + r.means.transpose();
    CHECK((rec - x).cwiseAbs().maxCoeff() < 1e-9);
    // Energy: total eigenvalue mass equals total column variance (n-1 divisor).
    Eigen::MatrixXd centered = x.rowwise() - r.means.transpose();
    double total_var = centered.array().square().sum() / (x.rows() - 1);
    CHECK(std::abs(r.explained_variance.sum() - total_var) < 1e-9);
    // Orthonormality.
    Eigen::MatrixXd gram = r.components * r.components.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-9);
    // Ratios sum to 1, spectrum non-increasing.
    CHECK(r.explained_ratio.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < r.explained_variance.size(); ++i)
      CHECK(r.explained_variance(i) <= r.explained_variance(i - 1) + 1e-12);
  }
}

TEST_CASE("pca variance-fraction retention matches cumulative ratios") {
  Rng rng(5);
  Eigen::MatrixXd x(12, 67);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  auto r = pca(x, RetainVarianceFraction{0.95});
  double cum = 0.0;
  int expect = 0;
  for (int i = 0; i < r.explained_ratio.size(); ++i) {
    cum += r.explained_ratio(i);
    ++expect;
    if (cum >= 0.95) break;
  }
  CHECK(r.retained == expect);
  CHECK(r.components.rows() == expect);
  CHECK(r.scores.cols() == expect);
}

TEST_CASE("pca sign convention is deterministic") {
  Rng rng(9);
  Eigen::MatrixXd x(10, 4);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  auto r = pca(x, RetainTopK{4});
  for (int i = 0; i < r.components.rows(); ++i) {
    Eigen::Index arg = 0;
    r.components.row(i).cwiseAbs().maxCoeff(&arg);
    CHECK(r.components(i, arg) > 0.0);
  }
}

TEST_CASE("pca rejects non-finite input") {
  Eigen::MatrixXd x(3, 2);
  x.setZero();
  x(1, 1) = std::nan("");
  CHECK_THROWS(pca(x, RetainTopK{1}));
}

TEST_CASE("confidence ellipse on axis-aligned data") {
  Eigen::MatrixXd p(4, 2);
  p << 0, 0, 2, 0, -2, 0, 0, 0;
  auto e = confidence_ellipse(p);
  CHECK(e.center(0) == doctest::Approx(0.0));
  CHECK(e.center(1) == doctest::Approx(0.0));
  CHECK(std::abs(e.axis_major(0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.axis_major(1)) == doctest::Approx(0.0));
  const double std_x = std::sqrt((4.0 + 4.0) / 4.0);
  CHECK(e.semi_major == doctest::Approx(2.0 * std_x).epsilon(1e-12));
  CHECK(e.semi_minor == doctest::Approx(0.0));
}

TEST_CASE("confidence ellipse is near-isotropic on an isotropic cloud") {
  Rng rng(31);
  Eigen::MatrixXd p(5000, 2);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    p(i, 0) = rng.normal();
    p(i, 1) = rng.normal();
  }
  auto e = confidence_ellipse(p);
  CHECK(e.semi_minor / e.semi_major > 0.95);
}

TEST_CASE("confidence ellipse rejects a single point") {
  Eigen::MatrixXd p(1, 2);
  p << 1, 2;
  CHECK_THROWS(confidence_ellipse(p));
}
