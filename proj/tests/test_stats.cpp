#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "stylo/rng.hpp"
#include "stylo/stats.hpp"

using namespace stylo;
using namespace stylo::stats;

TEST_CASE("zscore basic column") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  auto r = zscore_columns(x);
  CHECK(r.normalized(0, 0) == doctest::Approx(-1.2247448713915890).epsilon(1e-9));
  CHECK(r.normalized(1, 0) == doctest::Approx(0.0));
  CHECK(r.normalized(2, 0) == doctest::Approx(1.2247448713915890).epsilon(1e-9));
  CHECK(r.constant_columns.empty());
}

TEST_CASE("zscore constant column zeroed and flagged") {
  Eigen::MatrixXd x(3, 2);
  x << 5, 1, 5, 2, 5, 3;
  auto r = zscore_columns(x);
  CHECK(r.normalized.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.constant_columns == std::vector<int>{0});
}

TEST_CASE("zscore output has mean 0 and population std 1") {
  Rng rng(7);
  Eigen::MatrixXd x(40, 5);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal() * (1.0 + j) + j;
  auto r = zscore_columns(x);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    CHECK(std::abs(r.normalized.col(j).mean()) < 1e-10);
    double var = r.normalized.col(j).squaredNorm() / x.rows();
    CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
  }
  // Idempotence on already standardized data.
  auto r2 = zscore_columns(r.normalized);
  CHECK((r2.normalized - r.normalized).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("mean_stderr formula") {
  std::vector<double> v{2, 4, 6};
  auto r = mean_stderr(v);
  CHECK(r.mean == doctest::Approx(4.0));
  CHECK(r.stderr_of_mean == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(!r.single_sample);
}

TEST_CASE("mean_stderr single sample flagged") {
  std::vector<double> v{7};
  auto r = mean_stderr(v);
  CHECK(r.mean == 7.0);
  CHECK(r.stderr_of_mean == 0.0);
  CHECK(r.single_sample);
}

TEST_CASE("mean_stderr empty input throws") {
  std::vector<double> v;
  CHECK_THROWS(mean_stderr(v));
}

TEST_CASE("mean_stderr covers the true mean on seeded draws") {
  Rng rng(42);
  std::vector<double> v(10000);
  for (auto& x : v) x = rng.normal();
  auto r = mean_stderr(v);
  CHECK(std::abs(r.mean) < 4 * r.stderr_of_mean);
}

TEST_CASE("usage_ratio arithmetic") {
  std::vector<MeanStderr> group{{2.0, 0.1, false}, {1.0, 0.2, false}};
  std::vector<double> baseline{1.0, 1.0};
  auto r = usage_ratio(group, baseline);
  CHECK(r[0].ratio == doctest::Approx(2.0));
  CHECK(r[0].log10_ratio == doctest::Approx(0.30102999566398120).epsilon(1e-12));
  CHECK(!r[0].smoothed);
  CHECK(r[1].ratio == doctest::Approx(1.0));
  CHECK(r[1].log10_ratio == doctest::Approx(0.0));
}

TEST_CASE("usage_ratio zero baseline smoothed") {
  std::vector<MeanStderr> group{{0.5, 0.0, false}};
  std::vector<double> baseline{0.0};
  auto r = usage_ratio(group, baseline, 1e-3);
  CHECK(r[0].smoothed);
  CHECK(r[0].ratio == doctest::Approx((0.5 + 1e-3) / 1e-3));
}

TEST_CASE("stratified split 60/20/20 on balanced 100 rows") {
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) labels[i] = i % 2;
  auto s = stratified_split(labels, 0.6, 0.2, 0.2, 11);
  CHECK(s.train.size() == 60);
  CHECK(s.validation.size() == 20);
  CHECK(s.test.size() == 20);
  auto count_label = [&](const std::vector<std::size_t>& idx, int l) {
    return std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return labels[i] == l; });
  };
  CHECK(count_label(s.train, 0) == 30);
  CHECK(count_label(s.validation, 1) == 10);
  CHECK(count_label(s.test, 0) == 10);

  // Determinism and partition property.
  auto s2 = stratified_split(labels, 0.6, 0.2, 0.2, 11);
  CHECK(s2.train == s.train);
  CHECK(s2.test == s.test);
  std::set<std::size_t> all;
  for (auto* part : {&s.train, &s.validation, &s.test}) all.insert(part->begin(), part->end());
  CHECK(all.size() == 100);
}

TEST_CASE("stratified split rejects tiny strata and bad fractions") {
  std::vector<int> labels{0, 0, 0, 1, 1};
  CHECK_THROWS(stratified_split(labels, 0.6, 0.2, 0.2, 1));
  std::vector<int> ok(30, 0);
  for (int i = 0; i < 10; ++i) ok.push_back(1);
  CHECK_THROWS(stratified_split(ok, 0.5, 0.2, 0.2, 1));
}
