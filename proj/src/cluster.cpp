#include "stylo/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stylo::stats {

std::vector<std::set<int>> Dendrogram::clades() const {
  const int n = static_cast<int>(leaves.size());
  std::vector<std::set<int>> node_leaves(static_cast<std::size_t>(n) + merges.size());
  for (int i = 0; i < n; ++i) node_leaves[static_cast<std::size_t>(i)] = {i};
  std::vector<std::set<int>> out;
  for (std::size_t t = 0; t < merges.size(); ++t) {
    std::set<int> s = node_leaves[static_cast<std::size_t>(merges[t].a)];
    s.insert(node_leaves[static_cast<std::size_t>(merges[t].b)].begin(),
             node_leaves[static_cast<std::size_t>(merges[t].b)].end());
    node_leaves[static_cast<std::size_t>(n) + t] = s;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

struct ActiveCluster {
  int id;  // dendrogram node id
  Eigen::VectorXd centroid;
  int size;
  std::vector<std::string> sorted_labels;
};

double ward_cost(const ActiveCluster& a, const ActiveCluster& b) {
  const double na = a.size, nb = b.size;
  return na * nb / (na + nb) * (a.centroid - b.centroid).squaredNorm();
}

}  // namespace

Dendrogram ward_cluster(const Eigen::MatrixXd& points, const std::vector<std::string>& labels) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) throw std::invalid_argument("ward_cluster: need >= 2 rows");
  if (!points.allFinite()) throw std::invalid_argument("ward_cluster: non-finite input");
  if (labels.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("ward_cluster: label count mismatch");

  Dendrogram d;
  d.leaves = labels;

  std::vector<ActiveCluster> active;
  active.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    active.push_back({i, points.row(i).transpose(), 1, {labels[static_cast<std::size_t>(i)]}});

  int next_id = n;
  while (active.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    double best_cost = std::numeric_limits<double>::infinity();
    std::pair<const std::vector<std::string>*, const std::vector<std::string>*> best_key{nullptr,
                                                                                         nullptr};
    for (std::size_t i = 0; i + 1 < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double c = ward_cost(active[i], active[j]);
        const auto* la = &active[i].sorted_labels;
        const auto* lb = &active[j].sorted_labels;
        if (*lb < *la) std::swap(la, lb);
        bool better = c < best_cost;
        if (!better && c == best_cost) {
          better = std::tie(*la, *lb) < std::tie(*best_key.first, *best_key.second);
        }
        if (better) {
          best_cost = c;
          best_i = i;
          best_j = j;
          best_key = {la, lb};
        }
      }
    }

    ActiveCluster& a = active[best_i];
    ActiveCluster& b = active[best_j];
    Merge m;
    m.a = std::min(a.id, b.id);
    m.b = std::max(a.id, b.id);
    m.height = std::sqrt(2.0 * best_cost);
    m.size = a.size + b.size;
    d.merges.push_back(m);

    ActiveCluster merged;
    merged.id = next_id++;
    merged.size = a.size + b.size;
    merged.centroid = (a.centroid * a.size + b.centroid * b.size) / merged.size;
    merged.sorted_labels = a.sorted_labels;
    merged.sorted_labels.insert(merged.sorted_labels.end(), b.sorted_labels.begin(),
                                b.sorted_labels.end());
    std::sort(merged.sorted_labels.begin(), merged.sorted_labels.end());

    active.erase(active.begin() + static_cast<long>(best_j));
    active.erase(active.begin() + static_cast<long>(best_i));
    active.push_back(std::move(merged));
  }
  return d;
}

namespace {

bool compatible(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  if (inter.empty()) return true;
  return inter.size() == a.size() || inter.size() == b.size();
}

}  // namespace

ConsensusTree consensus_tree(const std::vector<Dendrogram>& trees, double p) {
  if (trees.size() < 2) throw std::invalid_argument("consensus_tree: need >= 2 dendrograms");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("consensus_tree: p must be in (0,1]");

  std::vector<std::string> leaves = trees.front().leaves;
  std::vector<std::string> leaves_sorted = leaves;
  std::sort(leaves_sorted.begin(), leaves_sorted.end());
  for (const auto& t : trees) {
    std::vector<std::string> s = t.leaves;
    std::sort(s.begin(), s.end());
    if (s != leaves_sorted)
      throw std::invalid_argument("consensus_tree: dendrograms have mismatched leaf sets");
  }

  std::map<std::vector<std::string>, int> counts;
  for (const auto& t : trees) {
    for (const auto& clade : t.clades()) {
      std::vector<std::string> names;
      for (int i : clade) names.push_back(t.leaves[static_cast<std::size_t>(i)]);
      std::sort(names.begin(), names.end());
      ++counts[names];
    }
  }

  std::vector<Clade> candidates;
  for (const auto& [names, c] : counts) {
    const double support = static_cast<double>(c) / static_cast<double>(trees.size());
    if (support + 1e-12 >= p) candidates.push_back({names, support});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Clade& a, const Clade& b) {
    if (a.support != b.support) return a.support > b.support;
    if (a.leaves.size() != b.leaves.size()) return a.leaves.size() < b.leaves.size();
    return a.leaves < b.leaves;
  });

  ConsensusTree out;
  out.leaves = leaves_sorted;
  out.threshold = p;
  for (const auto& cand : candidates) {
    bool ok = true;
    for (const auto& kept : out.clades) {
      if (!compatible(cand.leaves, kept.leaves)) {
        ok = false;
        break;
      }
    }
    if (ok) out.clades.push_back(cand);
  }
  return out;
}

}  // namespace stylo::stats
