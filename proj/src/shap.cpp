#include "stylo/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace stylo::forest {

namespace {

// ---------------------------------------------------------------------------
// Exact interventional attribution: enumerate coalitions over the features a
// tree actually splits on, valuing each coalition against the background set.
// ---------------------------------------------------------------------------

double eval_masked(const Tree& tree, std::span<const double> x, const Eigen::MatrixXd& background,
                   Eigen::Index bg_row, const std::unordered_map<int, int>& feature_pos,
                   std::uint64_t mask) {
  int i = 0;
  while (tree.nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(i)];
    const int pos = feature_pos.at(n.feature);
    const double v = (mask >> pos) & 1ULL ? x[static_cast<std::size_t>(n.feature)]
                                          : background(bg_row, n.feature);
    i = v <= n.threshold ? n.left : n.right;
  }
  return tree.nodes[static_cast<std::size_t>(i)].p1;
}

void exact_tree_attribution(const Tree& tree, std::span<const double> x,
                            const Eigen::MatrixXd& background, const std::vector<int>& used,
                            bool interactions, Eigen::VectorXd& phi, Eigen::MatrixXd& phi_int,
                            double& base) {
  const int u = static_cast<int>(used.size());
  std::unordered_map<int, int> feature_pos;
  for (int i = 0; i < u; ++i) feature_pos[used[static_cast<std::size_t>(i)]] = i;

  const std::uint64_t n_masks = 1ULL << u;
  std::vector<double> value(n_masks, 0.0);
  const auto n_bg = static_cast<double>(background.rows());
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    double sum = 0.0;
    for (Eigen::Index b = 0; b < background.rows(); ++b)
      sum += eval_masked(tree, x, background, b, feature_pos, mask);
    value[mask] = sum / n_bg;
  }
  base += value[0];

  std::vector<double> fact(static_cast<std::size_t>(u) + 1, 1.0);
  for (int i = 1; i <= u; ++i)
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;

  // phi_i = sum over S not containing i of |S|!(u-|S|-1)!/u! * (v(S+i) - v(S))
  for (int i = 0; i < u; ++i) {
    const std::uint64_t bit_i = 1ULL << i;
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
      if (mask & bit_i) continue;
      const int s = std::popcount(mask);
      const double w = fact[static_cast<std::size_t>(s)] *
                       fact[static_cast<std::size_t>(u - s - 1)] / fact[static_cast<std::size_t>(u)];
      acc += w * (value[mask | bit_i] - value[mask]);
    }
    phi(used[static_cast<std::size_t>(i)]) += acc;
  }

  if (!interactions || u < 2) return;
  for (int i = 0; i < u; ++i) {
    for (int j = i + 1; j < u; ++j) {
      const std::uint64_t bi = 1ULL << i, bj = 1ULL << j;
      double acc = 0.0;
      for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
        if (mask & (bi | bj)) continue;
        const int s = std::popcount(mask);
        const double w = fact[static_cast<std::size_t>(s)] *
                         fact[static_cast<std::size_t>(u - s - 2)] /
                         fact[static_cast<std::size_t>(u - 1)];
        acc += w * (value[mask | bi | bj] - value[mask | bi] - value[mask | bj] + value[mask]);
      }
      // The pairwise interaction splits evenly between (i,j) and (j,i).
      phi_int(used[static_cast<std::size_t>(i)], used[static_cast<std::size_t>(j)]) += acc / 2.0;
      phi_int(used[static_cast<std::size_t>(j)], used[static_cast<std::size_t>(i)]) += acc / 2.0;
    }
  }
}

// ---------------------------------------------------------------------------
// Path-dependent attribution for trees above the enumeration cap, with
// conditioning support for interaction values. Follows the published
// extend/unwind recursion over the unique split path.
// ---------------------------------------------------------------------------

struct PathElement {
  int feature_index = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void extend_path(PathElement* path, int depth, double zero_fraction, double one_fraction,
                 int feature_index) {
  path[depth] = {feature_index, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight * (i + 1) / static_cast<double>(depth + 1);
    path[i].pweight = zero_fraction * path[i].pweight * (depth - i) / static_cast<double>(depth + 1);
  }
}

void unwind_path(PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one_portion * (depth + 1) / ((i + 1) * one_fraction);
      next_one_portion = tmp - path[i].pweight * zero_fraction * (depth - i) /
                                   static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * (depth + 1) / (zero_fraction * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature_index = path[i + 1].feature_index;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double unwound_path_sum(const PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  double total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = next_one_portion * (depth + 1) / ((i + 1) * one_fraction);
      total += tmp;
      next_one_portion = path[i].pweight -
                         tmp * zero_fraction * ((depth - i) / static_cast<double>(depth + 1));
    } else {
      total += (path[i].pweight / zero_fraction) / ((depth - i) / static_cast<double>(depth + 1));
    }
  }
  return total;
}

void path_recurse(const Tree& tree, std::span<const double> x, double* phi, int node_index,
                  int depth, PathElement* parent_path, double parent_zero_fraction,
                  double parent_one_fraction, int parent_feature_index, int condition,
                  int condition_feature, double condition_fraction) {
  if (condition_fraction == 0.0) return;
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_index)];

  PathElement* path = parent_path + depth + 1;
  std::copy(parent_path, parent_path + depth + 1, path);
  if (condition == 0 || condition_feature != parent_feature_index)
    extend_path(path, depth, parent_zero_fraction, parent_one_fraction, parent_feature_index);

  if (node.feature < 0) {
    for (int i = 1; i <= depth; ++i) {
      const double w = unwound_path_sum(path, depth, i);
      const PathElement& el = path[i];
      phi[el.feature_index] += w * (el.one_fraction - el.zero_fraction) * node.p1 *
                               condition_fraction;
    }
    return;
  }

  const int split = node.feature;
  const bool go_left = x[static_cast<std::size_t>(split)] <= node.threshold;
  const int hot = go_left ? node.left : node.right;
  const int cold = go_left ? node.right : node.left;
  const double hot_zero_fraction =
      tree.nodes[static_cast<std::size_t>(hot)].n_samples / node.n_samples;
  const double cold_zero_fraction =
      tree.nodes[static_cast<std::size_t>(cold)].n_samples / node.n_samples;
  double incoming_zero_fraction = 1.0;
  double incoming_one_fraction = 1.0;

  int index = 0;
  for (; index <= depth; ++index)
    if (path[index].feature_index == split) break;
  if (index != depth + 1) {
    incoming_zero_fraction = path[index].zero_fraction;
    incoming_one_fraction = path[index].one_fraction;
    unwind_path(path, depth, index);
    depth -= 1;
  }

  double hot_condition_fraction = condition_fraction;
  double cold_condition_fraction = condition_fraction;
  if (condition > 0 && split == condition_feature) {
    cold_condition_fraction = 0.0;
    depth -= 1;
  } else if (condition < 0 && split == condition_feature) {
    hot_condition_fraction *= hot_zero_fraction;
    cold_condition_fraction *= cold_zero_fraction;
    depth -= 1;
  }

  path_recurse(tree, x, phi, hot, depth + 1, path, hot_zero_fraction * incoming_zero_fraction,
               incoming_one_fraction, split, condition, condition_feature, hot_condition_fraction);
  path_recurse(tree, x, phi, cold, depth + 1, path, cold_zero_fraction * incoming_zero_fraction,
               0.0, split, condition, condition_feature, cold_condition_fraction);
}

int tree_depth(const Tree& tree, int node, int depth) {
  const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
  if (n.feature < 0) return depth;
  return std::max(tree_depth(tree, n.left, depth + 1), tree_depth(tree, n.right, depth + 1));
}

void run_path(const Tree& tree, std::span<const double> x, int n_features, int condition,
              int condition_feature, Eigen::VectorXd& out) {
  const int max_depth = tree_depth(tree, 0, 0) + 2;
  std::vector<PathElement> buffer(static_cast<std::size_t>((max_depth + 1) * (max_depth + 2)) / 2 +
                                  static_cast<std::size_t>(max_depth) + 2);
  std::vector<double> phi(static_cast<std::size_t>(n_features), 0.0);
  path_recurse(tree, x, phi.data(), 0, 0, buffer.data(), 1.0, 1.0, -1, condition,
               condition_feature, 1.0);
  for (int i = 0; i < n_features; ++i) out(i) = phi[static_cast<std::size_t>(i)];
}

double cover_expectation(const Tree& tree) {
  const double root = tree.nodes[0].n_samples;
  double acc = 0.0;
  for (const auto& n : tree.nodes)
    if (n.feature < 0) acc += n.n_samples / root * n.p1;
  return acc;
}

void path_tree_attribution(const Tree& tree, std::span<const double> x, int n_features,
                           bool interactions, Eigen::VectorXd& phi, Eigen::MatrixXd& phi_int,
                           double& base) {
  Eigen::VectorXd tree_phi = Eigen::VectorXd::Zero(n_features);
  run_path(tree, x, n_features, 0, -1, tree_phi);
  phi += tree_phi;
  base += cover_expectation(tree);

  if (!interactions) return;
  Eigen::VectorXd on(n_features), off(n_features);
  for (int i : tree.used_features()) {
    run_path(tree, x, n_features, +1, i, on);
    run_path(tree, x, n_features, -1, i, off);
    for (int j = 0; j < n_features; ++j) {
      if (j == i) continue;
      phi_int(i, j) += (on(j) - off(j)) / 2.0;
    }
  }
}

}  // namespace

Attribution shap_explain(const Forest& forest, std::span<const double> x,
                         const Eigen::MatrixXd& background, const ShapOptions& options) {
  const int d = forest.n_features();
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("shap_explain: instance dimension mismatch");
  if (background.rows() < 1 || background.cols() != d)
    throw std::invalid_argument("shap_explain: background must be non-empty with matching columns");

  Attribution a;
  a.phi = Eigen::VectorXd::Zero(d);
  a.phi_interaction = Eigen::MatrixXd::Zero(d, d);

  for (const auto& tree : forest.trees) {
    const auto used = tree.used_features();
    if (used.empty()) {
      a.base_value += tree.nodes[0].p1;
      continue;
    }
    if (static_cast<int>(used.size()) <= options.exact_cap) {
      exact_tree_attribution(tree, x, background, used, options.compute_interactions, a.phi,
                             a.phi_interaction, a.base_value);
    } else if (options.allow_path) {
      path_tree_attribution(tree, x, d, options.compute_interactions, a.phi, a.phi_interaction,
                            a.base_value);
    } else {
      throw std::runtime_error(
          "shap_explain: tree uses " + std::to_string(used.size()) +
          " features, above the exact-enumeration cap of " + std::to_string(options.exact_cap) +
          "; raise exact_cap or enable the path algorithm");
    }
  }

  const double n_trees = static_cast<double>(forest.trees.size());
  a.phi /= n_trees;
  a.phi_interaction /= n_trees;
  a.base_value /= n_trees;

  // Symmetrize and set the diagonal so each row sums to phi.
  a.phi_interaction = ((a.phi_interaction + a.phi_interaction.transpose()) / 2.0).eval();
  for (int i = 0; i < d; ++i) {
    double off_sum = a.phi_interaction.row(i).sum() - a.phi_interaction(i, i);
    a.phi_interaction(i, i) = a.phi(i) - off_sum;
  }
  return a;
}

}  // namespace stylo::forest
