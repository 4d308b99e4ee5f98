#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace stylo::forest {

struct ForestConfig {
  int n_trees = 200;
  int max_features = 0;  // 0 means ceil(sqrt(d))
  int min_leaf = 1;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  // Majority:minority downsampling ratio; 0 disables, 4.0 is the tuned default.
  double downsample_ratio = 0.0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double p1 = 0.0;       // probability of class 1 at this node
  double n_samples = 0;  // training rows reaching the node (cover)
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0

  double predict(std::span<const double> x) const;
  std::vector<int> used_features() const;  // sorted, unique
};

struct Forest {
  std::vector<Tree> trees;
  ForestConfig config;
  std::vector<std::string> feature_names;
  double class_prior = 0.0;  // fraction of class 1 in training data

  int n_features() const { return static_cast<int>(feature_names.size()); }
};

struct DownsampleResult {
  std::vector<std::size_t> indices;  // sorted
  bool majority_exhausted = false;   // majority was already below the target
};

// Keep every minority row; sample majority rows without replacement down to
// floor(ratio * minority count). Deterministic per seed.
DownsampleResult downsample(std::span<const int> labels, double ratio, std::uint64_t seed);

// Gini-impurity trees on bootstrap samples, thresholds at midpoints of sorted
// distinct values, max_features random candidates per split. Per-tree
// randomness derives from seed + tree index, so results do not depend on
// scheduling.
Forest fit_forest(const Eigen::MatrixXd& x, std::span<const int> y, const ForestConfig& config);

double predict_proba(const Forest& forest, std::span<const double> x);
std::vector<double> predict_proba(const Forest& forest, const Eigen::MatrixXd& x);

enum class ImportanceMetric { auc, f1_human, f1_machine };

struct FeatureImportance {
  int feature = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Mean metric drop over `repeats` seeded shuffles of each column, evaluated
// on (x, y); sorted descending by mean drop.
std::vector<FeatureImportance> permutation_importance(const Forest& forest,
                                                      const Eigen::MatrixXd& x,
                                                      std::span<const int> y,
                                                      ImportanceMetric metric, int repeats,
                                                      std::uint64_t seed);

nlohmann::json forest_to_json(const Forest& forest);
Forest forest_from_json(const nlohmann::json& j);

}  // namespace stylo::forest
