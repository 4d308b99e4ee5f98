#include "stylo/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stylo/metrics.hpp"
#include "stylo/rng.hpp"

namespace stylo::forest {

double Tree::predict(std::span<const double> x) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const TreeNode& n = nodes[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].p1;
}

std::vector<int> Tree::used_features() const {
  std::set<int> s;
  for (const auto& n : nodes)
    if (n.feature >= 0) s.insert(n.feature);
  return {s.begin(), s.end()};
}

DownsampleResult downsample(std::span<const int> labels, double ratio, std::uint64_t seed) {
  if (ratio < 1.0) throw std::invalid_argument("downsample: ratio must be >= 1");
  std::vector<std::size_t> cls0, cls1;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? cls1 : cls0).push_back(i);
  if (cls0.empty() || cls1.empty())
    throw std::invalid_argument("downsample: both classes must be present");

  auto* minority = &cls0;
  auto* majority = &cls1;
  if (cls0.size() > cls1.size()) std::swap(minority, majority);

  DownsampleResult r;
  const auto target = static_cast<std::size_t>(ratio * static_cast<double>(minority->size()));
  r.indices = *minority;
  if (majority->size() <= target) {
    r.majority_exhausted = majority->size() < target;
    r.indices.insert(r.indices.end(), majority->begin(), majority->end());
  } else {
    Rng rng(seed);
    for (std::size_t k : rng.sample_without_replacement(majority->size(), target))
      r.indices.push_back((*majority)[k]);
  }
  std::sort(r.indices.begin(), r.indices.end());
  return r;
}

namespace {

struct TreeBuilder {
  const Eigen::MatrixXd& x;
  std::span<const int> y;
  const ForestConfig& cfg;
  int max_features;
  Rng rng;
  Tree tree;

  int build(std::vector<std::size_t>& idx) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::size_t n = idx.size();
    std::size_t n1 = 0;
    for (std::size_t i : idx) n1 += static_cast<std::size_t>(y[i]);
    tree.nodes[static_cast<std::size_t>(node_id)].p1 =
        static_cast<double>(n1) / static_cast<double>(n);
    tree.nodes[static_cast<std::size_t>(node_id)].n_samples = static_cast<double>(n);

    if (n1 == 0 || n1 == n || n < 2 * static_cast<std::size_t>(cfg.min_leaf)) return node_id;

    const int d = static_cast<int>(x.cols());
    auto candidates = rng.sample_without_replacement(static_cast<std::size_t>(d),
                                                     static_cast<std::size_t>(max_features));
    std::sort(candidates.begin(), candidates.end());

    // Parent Gini; we maximize the impurity decrease.
    const double p = static_cast<double>(n1) / static_cast<double>(n);
    const double parent_gini = 2.0 * p * (1.0 - p);

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_gain = -1.0;

    std::vector<std::pair<double, int>> vals;
    for (std::size_t f : candidates) {
      vals.clear();
      for (std::size_t i : idx) vals.emplace_back(x(static_cast<Eigen::Index>(i),
                                                    static_cast<Eigen::Index>(f)),
                                                  y[i]);
      std::sort(vals.begin(), vals.end());
      std::size_t left_n = 0, left_n1 = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_n;
        left_n1 += static_cast<std::size_t>(vals[i].second);
        if (vals[i].first == vals[i + 1].first) continue;
        if (left_n < static_cast<std::size_t>(cfg.min_leaf) ||
            n - left_n < static_cast<std::size_t>(cfg.min_leaf))
          continue;
        const double ln = static_cast<double>(left_n);
        const double rn = static_cast<double>(n - left_n);
        const double lp = static_cast<double>(left_n1) / ln;
        const double rp = static_cast<double>(n1 - left_n1) / rn;
        const double child_gini =
            (ln * 2.0 * lp * (1.0 - lp) + rn * 2.0 * rp * (1.0 - rp)) / static_cast<double>(n);
        const double gain = parent_gini - child_gini;
        const double threshold = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
        if (gain > best_gain ||
            (gain == best_gain &&
             (static_cast<int>(f) < best_feature ||
              (static_cast<int>(f) == best_feature && threshold < best_threshold)))) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = threshold;
        }
      }
    }

    if (best_feature < 0) return node_id;  // all candidate columns constant

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (x(static_cast<Eigen::Index>(i), best_feature) <= best_threshold ? left_idx : right_idx)
          .push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    const int left = build(left_idx);
    const int right = build(right_idx);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    return node_id;
  }
};

}  // namespace

Forest fit_forest(const Eigen::MatrixXd& x, std::span<const int> y, const ForestConfig& config) {
  const auto n = static_cast<std::size_t>(x.rows());
  const int d = static_cast<int>(x.cols());
  if (n != y.size()) throw std::invalid_argument("fit_forest: row/label count mismatch");
  if (!x.allFinite()) throw std::invalid_argument("fit_forest: non-finite features");
  if (config.n_trees < 1) throw std::invalid_argument("fit_forest: n_trees must be >= 1");
  std::size_t n1 = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw std::invalid_argument("fit_forest: labels must be 0/1");
    n1 += static_cast<std::size_t>(v);
  }
  if (n1 == 0 || n1 == n) throw std::invalid_argument("fit_forest: single-class labels");

  Forest forest;
  forest.config = config;
  forest.class_prior = static_cast<double>(n1) / static_cast<double>(n);
  forest.feature_names.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) forest.feature_names[static_cast<std::size_t>(j)] = "x" + std::to_string(j);

  const int max_features =
      config.max_features > 0
          ? std::min(config.max_features, d)
          : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

  Rng base(config.seed);
  forest.trees.resize(static_cast<std::size_t>(config.n_trees));
  for (int t = 0; t < config.n_trees; ++t) {
    Rng tree_rng = base.fork(static_cast<std::uint64_t>(t));
    std::vector<std::size_t> idx;
    if (config.bootstrap) {
      idx.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        idx.push_back(static_cast<std::size_t>(tree_rng.uniform_index(n)));
      // A bootstrap draw can miss a class entirely; redraw until both appear.
      auto has_both = [&] {
        bool any0 = false, any1 = false;
        for (std::size_t i : idx) (y[i] == 1 ? any1 : any0) = true;
        return any0 && any1;
      };
      while (!has_both()) {
        for (auto& i : idx) i = static_cast<std::size_t>(tree_rng.uniform_index(n));
      }
    } else {
      idx.resize(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
    }
    TreeBuilder builder{x, y, config, max_features, std::move(tree_rng), {}};
    builder.build(idx);
    forest.trees[static_cast<std::size_t>(t)] = std::move(builder.tree);
  }
  return forest;
}

double predict_proba(const Forest& forest, std::span<const double> x) {
  if (static_cast<int>(x.size()) != forest.n_features())
    throw std::invalid_argument("predict_proba: feature count mismatch");
  double sum = 0.0;
  for (const auto& t : forest.trees) sum += t.predict(x);
  return sum / static_cast<double>(forest.trees.size());
}

std::vector<double> predict_proba(const Forest& forest, const Eigen::MatrixXd& x) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(i, j);
    out.push_back(predict_proba(forest, row));
  }
  return out;
}

namespace {

double metric_value(ImportanceMetric metric, std::span<const double> scores,
                    std::span<const int> labels) {
  const auto report = stats::evaluate_metrics(scores, labels);
  switch (metric) {
    case ImportanceMetric::auc:
      if (!report.auc_defined) throw std::runtime_error("importance metric: AUC undefined");
      return report.auc;
    case ImportanceMetric::f1_human:
      return report.f1_negative;
    case ImportanceMetric::f1_machine:
      return report.f1_positive;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<FeatureImportance> permutation_importance(const Forest& forest,
                                                      const Eigen::MatrixXd& x,
                                                      std::span<const int> y,
                                                      ImportanceMetric metric, int repeats,
                                                      std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("permutation_importance: repeats must be >= 1");
  const auto baseline_scores = predict_proba(forest, x);
  const double baseline = metric_value(metric, baseline_scores, y);

  const int d = static_cast<int>(x.cols());
  std::vector<FeatureImportance> out(static_cast<std::size_t>(d));
  Rng base(seed);
  Eigen::MatrixXd shuffled = x;
  for (int j = 0; j < d; ++j) {
    std::vector<double> drops;
    for (int r = 0; r < repeats; ++r) {
      Rng rng = base.fork(static_cast<std::uint64_t>(j) * 1000003ULL +
                          static_cast<std::uint64_t>(r));
      std::vector<double> col(static_cast<std::size_t>(x.rows()));
      for (Eigen::Index i = 0; i < x.rows(); ++i) col[static_cast<std::size_t>(i)] = x(i, j);
      rng.shuffle(col);
      for (Eigen::Index i = 0; i < x.rows(); ++i) shuffled(i, j) = col[static_cast<std::size_t>(i)];
      const auto scores = predict_proba(forest, shuffled);
      drops.push_back(baseline - metric_value(metric, scores, y));
    }
    shuffled.col(j) = x.col(j);
    double mean = 0.0;
    for (double v : drops) mean += v;
    mean /= static_cast<double>(drops.size());
    double var = 0.0;
    for (double v : drops) var += (v - mean) * (v - mean);
    var /= static_cast<double>(drops.size());
    out[static_cast<std::size_t>(j)] = {j, mean, std::sqrt(var)};
  }
  std::sort(out.begin(), out.end(), [](const FeatureImportance& a, const FeatureImportance& b) {
    if (a.mean != b.mean) return a.mean > b.mean;
    return a.feature < b.feature;
  });
  return out;
}

nlohmann::json forest_to_json(const Forest& forest) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "random-forest";
  j["config"] = {{"n_trees", forest.config.n_trees},
                 {"max_features", forest.config.max_features},
                 {"min_leaf", forest.config.min_leaf},
                 {"bootstrap", forest.config.bootstrap},
                 {"seed", forest.config.seed},
                 {"downsample_ratio", forest.config.downsample_ratio}};
  j["feature_names"] = forest.feature_names;
  j["class_prior"] = forest.class_prior;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : forest.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes)
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.p1, n.n_samples});
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j;
}

Forest forest_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != 1 || j.value("kind", "") != "random-forest")
    throw std::runtime_error("forest_from_json: unrecognized document");
  Forest f;
  const auto& c = j.at("config");
  f.config.n_trees = c.at("n_trees").get<int>();
  f.config.max_features = c.at("max_features").get<int>();
  f.config.min_leaf = c.at("min_leaf").get<int>();
  f.config.bootstrap = c.at("bootstrap").get<bool>();
  f.config.seed = c.at("seed").get<std::uint64_t>();
  f.config.downsample_ratio = c.at("downsample_ratio").get<double>();
  f.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  f.class_prior = j.at("class_prior").get<double>();
  for (const auto& tj : j.at("trees")) {
    Tree t;
    for (const auto& nj : tj) {
      TreeNode n;
      n.feature = nj.at(0).get<int>();
      n.threshold = nj.at(1).get<double>();
      n.left = nj.at(2).get<int>();
      n.right = nj.at(3).get<int>();
      n.p1 = nj.at(4).get<double>();
      n.n_samples = nj.at(5).get<double>();
      t.nodes.push_back(n);
    }
    f.trees.push_back(std::move(t));
  }
  return f;
}

}  // namespace stylo::forest
