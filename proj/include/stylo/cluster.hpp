#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <vector>

namespace stylo::stats {

struct Merge {
  // Cluster ids: 0..n-1 are leaves, n+t is the cluster created by merge t.
  int a = 0;
  int b = 0;
  double height = 0.0;
  int size = 0;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;  // exactly leaves-1 entries

  // Leaf-index sets of all internal nodes, in merge order.
  std::vector<std::set<int>> clades() const;
};

// Agglomerative Ward clustering. Heights follow the Lance-Williams convention
// h = sqrt(2 * delta-SSE), matching the usual Euclidean-initialized update.
// Ties broken by the lexicographically smallest pair of sorted leaf-label sets.
Dendrogram ward_cluster(const Eigen::MatrixXd& points, const std::vector<std::string>& labels);

struct Clade {
  std::vector<std::string> leaves;  // sorted
  double support = 0.0;
};

struct ConsensusTree {
  std::vector<std::string> leaves;
  std::vector<Clade> clades;
  double threshold = 0.0;
};

// Majority-style consensus over dendrogram clades at relaxed threshold p.
// Clades are retained greedily in descending support, skipping any clade
// incompatible (neither nested nor disjoint) with those already kept.
ConsensusTree consensus_tree(const std::vector<Dendrogram>& trees, double p);

}  // namespace stylo::stats
