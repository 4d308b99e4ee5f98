#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "stylo/svg.hpp"

using namespace stylo;
using namespace stylo::svg;

namespace {

int count_of(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto p = haystack.find(needle); p != std::string::npos; p = haystack.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("format_number emits shortest round-trip decimals") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-2.25) == "-2.25");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("bar chart embeds labels and values") {
  auto s = bar_chart({{"f_29", 0.25, 0.01}, {"f_59", 0.125, 0.0}}, "t");
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("data-label=\"f_29\"") != std::string::npos);
  CHECK(s.find("data-value=\"0.25\"") != std::string::npos);
  CHECK(count_of(s, "class=\"bar\"") == 2);
}

TEST_CASE("bar chart output is byte deterministic") {
  std::vector<BarDatum> bars{{"a", 1.5, 0.1}, {"b", 2.5, 0.2}};
  CHECK(bar_chart(bars, "x") == bar_chart(bars, "x"));
}

TEST_CASE("log dot plot rejects non-positive values") {
  CHECK_THROWS_AS(dot_plot_log({{"a", 0.0, 0.0}}, "t"), std::invalid_argument);
  auto s = dot_plot_log({{"a", 2.0, 0.1}, {"b", 0.5, 0.0}}, "t");
  CHECK(s.find("data-value=\"2\"") != std::string::npos);
  CHECK(s.find("data-stderr=\"0.1\"") != std::string::npos);
}

TEST_CASE("heatmap emits one cell per matrix entry") {
  Eigen::MatrixXd m(2, 3);
  m << -1, 0, 1, 0.5, -0.5, 0;
  auto s = heatmap({"r1", "r2"}, {"c1", "c2", "c3"}, m, "t");
  CHECK(count_of(s, "class=\"cell\"") == 6);
  CHECK(s.find("data-row=\"r2\"") != std::string::npos);
  CHECK(s.find("data-col=\"c3\"") != std::string::npos);
  CHECK(s.find("data-value=\"-0.5\"") != std::string::npos);
}

TEST_CASE("scatter plot embeds point coordinates and ellipse parameters") {
  std::vector<ScatterPoint> pts;
  pts.push_back({1.0, 2.0, "p1", "news", "human"});
  pts.push_back({-1.0, 0.5, "p2", "news", "model"});
  ScatterEllipse e;
  e.label = "news";
  e.params.center = {0.0, 1.25};
  e.params.axis_major = {1.0, 0.0};
  e.params.axis_minor = {0.0, 1.0};
  e.params.semi_major = 2.0;
  e.params.semi_minor = 1.0;
  auto s = scatter_plot(pts, {e}, "t");
  CHECK(count_of(s, "class=\"point\"") == 2);
  CHECK(s.find("data-x=\"-1\"") != std::string::npos);
  CHECK(s.find("data-color-key=\"news\"") != std::string::npos);
  CHECK(s.find("data-center-y=\"1.25\"") != std::string::npos);
  CHECK(s.find("data-semi-major=\"2\"") != std::string::npos);
}

TEST_CASE("xml special characters are escaped") {
  auto s = bar_chart({{"a<b>&\"c\"", 1.0, 0.0}}, "t");
  CHECK(s.find("a<b>") == std::string::npos);
  CHECK(s.find("a&lt;b&gt;&amp;&quot;c&quot;") != std::string::npos);
}

TEST_CASE("dendrogram renders n-1 merges with heights") {
  stats::Dendrogram d;
  d.leaves = {"a", "b", "c"};
  d.merges = {{0, 1, 1.0, 2}, {3, 2, 2.5, 3}};
  auto s = dendrogram_chart(d, "t");
  CHECK(count_of(s, "class=\"merge\"") == 2);
  CHECK(s.find("data-height=\"2.5\"") != std::string::npos);
  CHECK(s.find(">a<") != std::string::npos);

  stats::Dendrogram bad;
  bad.leaves = {"a"};
  CHECK_THROWS_AS(dendrogram_chart(bad, "t"), std::invalid_argument);
}

TEST_CASE("consensus chart lists clades with supports") {
  stats::ConsensusTree t;
  t.leaves = {"x", "y", "z"};
  t.threshold = 0.4;
  t.clades = {{{"x", "y"}, 0.75}};
  auto s = consensus_chart(t, "t");
  CHECK(s.find("data-support=\"0.75\"") != std::string::npos);
  CHECK(s.find("data-members=\"x, y\"") != std::string::npos);
  CHECK(s.find("threshold p = 0.4") != std::string::npos);
}

TEST_CASE("roc chart embeds auc per curve") {
  RocCurve c;
  c.name = "base";
  c.auc = 0.875;
  c.points = {{0, 0}, {0, 1}, {1, 1}};
  auto s = roc_chart({c}, "t");
  CHECK(s.find("data-auc=\"0.875\"") != std::string::npos);
  CHECK(s.find("data-name=\"base\"") != std::string::npos);
  CHECK_THROWS_AS(roc_chart({}, "t"), std::invalid_argument);
}

TEST_CASE("histogram bins all values") {
  auto s = histogram({0.0, 0.1, 0.2, 0.9, 1.0}, 2, "t");
  CHECK(count_of(s, "class=\"bin\"") == 2);
  CHECK(s.find("data-count=\"3\"") != std::string::npos);
  CHECK(s.find("data-count=\"2\"") != std::string::npos);
}
