// End-to-end acceptance checks for the workbench. Each criterion prints one
// PASS/FAIL line; the process exits non-zero if any criterion fails. The
// full-scale corpus reproduction (criterion 9) needs the external RAID
// download and hours of runtime, so it is reported as skipped here.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylo/biber.hpp"
#include "stylo/cluster.hpp"
#include "stylo/corpus.hpp"
#include "stylo/forest.hpp"
#include "stylo/lingcore.hpp"
#include "stylo/metrics.hpp"
#include "stylo/pca.hpp"
#include "stylo/pipelines.hpp"
#include "stylo/rng.hpp"
#include "stylo/shap.hpp"

using namespace stylo;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

void criterion(int num, const std::string& title, const std::function<void()>& body) {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << "criterion " << num << ": PASS — " << title << " (" << ms << " ms)\n";
  } catch (const std::exception& e) {
    ++g_failures;
    std::cout << "criterion " << num << ": FAIL — " << title << ": " << e.what() << "\n";
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criterion 1: hand-annotated gold counts ------------------------------

void check_micro_gold() {
  const fs::path root = STYLO_SOURCE_DIR;
  const std::string text = read_file(root / "data" / "micro_corpus.txt");

  long gold_words = -1;
  std::map<int, double> gold;  // feature index -> expected raw count/value
  std::istringstream lines(read_file(root / "data" / "micro_gold.tsv"));
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    require(tab != std::string::npos, "gold line without tab: " + line);
    const std::string key = line.substr(0, tab);
    const std::string val = line.substr(tab + 1);
    if (key == "word_count") {
      gold_words = std::stol(val);
      continue;
    }
    const int idx = biber::feature_index(key);
    require(idx >= 0, "gold references unknown feature " + key);
    const auto slash = val.find('/');
    gold[idx] = slash == std::string::npos
                    ? std::stod(val)
                    : std::stod(val.substr(0, slash)) / std::stod(val.substr(slash + 1));
  }
  require(gold_words > 0, "gold word_count missing");
  require(gold.size() == 67, "gold must cover all 67 features");
  for (const auto& [idx, v] : gold)
    require(v > 0.0, "feature " + biber::feature_catalog()[static_cast<std::size_t>(idx)].name +
                         " not instantiated in the micro-corpus");

  const auto t0 = std::chrono::steady_clock::now();
  const auto doc = lingcore::analyze(text);
  std::array<double, 67> got{};
  for (int f = 0; f < 67; ++f) got[static_cast<std::size_t>(f)] = biber::count_feature(doc, f);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  require(doc.sentence_bounds.size() >= 50, "micro-corpus has fewer than 50 sentences");
  require(doc.word_count == gold_words,
          "word_count " + std::to_string(doc.word_count) + " != gold " +
              std::to_string(gold_words));
  for (const auto& [idx, v] : gold) {
    const double g = got[static_cast<std::size_t>(idx)];
    const bool fractional = idx == 42 || idx == 43;
    const bool ok = fractional ? std::abs(g - v) < 1e-12 : g == v;
    require(ok, biber::feature_catalog()[static_cast<std::size_t>(idx)].name + ": extracted " +
                    std::to_string(g) + " != gold " + std::to_string(v));
  }
  require(secs < 1.0, "extraction took " + std::to_string(secs) + " s");
}

// ---- criterion 2: rate formula + duplication invariance -------------------

std::string fuzz_document(Rng& rng, int min_words, int max_words) {
  static const char* kVocab[] = {
      "the",  "dog",      "ran",   "quickly", "because", "it",    "was",   "raining",
      "and",  "nobody",   "can't", "believe", "that",    "although", "which", "there",
      "is",   "no",       "time",  "creation", "he",     "said",  "they",  "must",
      "have", "been",     "seen",  "by",      "someone", "who",   "really", "cares"};
  std::string text;
  const int len = min_words + static_cast<int>(rng.uniform_index(
                                  static_cast<std::uint64_t>(max_words - min_words)));
  for (int k = 0; k < len; ++k) {
    text += kVocab[rng.uniform_index(std::size(kVocab))];
    text += rng.uniform_index(9) == 0 ? ". " : " ";
  }
  text += ".";
  return text;
}

void check_rate_formula() {
  Rng rng(4242);
  for (int iter = 0; iter < 1000; ++iter) {
    const std::string text = fuzz_document(rng, 8, 80);
    const auto doc = lingcore::analyze(text);
    const auto fv = biber::extract_features(doc, 1);
    for (int f = 0; f < 67; ++f) {
      const double v = fv.values[static_cast<std::size_t>(f)];
      require(v >= 0.0, "negative feature value");
      if (f == 42 || f == 43) continue;
      const double expect = biber::count_feature(doc, f) * 1000.0 / doc.word_count;
      require(std::abs(v - expect) < 1e-9, "rate formula violated for feature " +
                                               std::to_string(f + 1) + " on doc " +
                                               std::to_string(iter));
    }
    if (iter % 10 == 0) {
      const auto twice = biber::extract_features(lingcore::analyze(text + " " + text), 1);
      for (int f = 0; f < 67; ++f) {
        if (f == 42) continue;  // windowed ratio is exempt
        require(std::abs(twice.values[static_cast<std::size_t>(f)] -
                         fv.values[static_cast<std::size_t>(f)]) < 1e-9,
                "duplication invariance violated for feature " + std::to_string(f + 1));
      }
    }
  }
}

// ---- criterion 3: pca oracle ----------------------------------------------

void check_pca_oracle() {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 5 + static_cast<int>(rng.uniform_index(26));  // 5..30
    Eigen::MatrixXd x(rows, 67);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
    const auto r = stats::pca(x, stats::RetainTopK{67});
    const Eigen::MatrixXd rec = (r.scores * r.components).rowwise() + r.means.transpose();
    require((rec - x).cwiseAbs().maxCoeff() < 1e-9, "reconstruction error too large");
    const Eigen::MatrixXd centered = x.rowwise() - r.means.transpose();
    const double total_var = centered.array().square().sum() / (rows - 1);
    require(std::abs(r.explained_variance.sum() - total_var) < 1e-9,
            "variance energy not conserved");
  }
  // 95%-retention rule on per-genre-sized 12x67 fixtures.
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::MatrixXd x(12, 67);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
    const auto r = stats::pca(x, stats::RetainVarianceFraction{0.95});
    double cum = 0.0;
    int expect = 0;
    for (int i = 0; i < r.explained_ratio.size(); ++i) {
      cum += r.explained_ratio(i);
      ++expect;
      if (cum >= 0.95) break;
    }
    require(r.retained == expect, "retention rule disagrees with cumulative ratios");
  }
}

// ---- criterion 4: ward oracle ---------------------------------------------

double cluster_sse(const Eigen::MatrixXd& points, const std::vector<int>& members) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(points.cols());
  for (int i : members) c += points.row(i).transpose();
  c /= static_cast<double>(members.size());
  double s = 0.0;
  for (int i : members) s += (points.row(i).transpose() - c).squaredNorm();
  return s;
}

void check_ward_oracle() {
  Rng rng(313);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(7));  // 4..10
    const int dims = 1 + static_cast<int>(rng.uniform_index(4));
    Eigen::MatrixXd x(n, dims);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < dims; ++j) x(i, j) = rng.normal() * 3.0;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("L" + std::to_string(100 + i));

    const auto d = stats::ward_cluster(x, labels);
    require(static_cast<int>(d.merges.size()) == n - 1, "wrong merge count");

    // Brute-force recomputation from raw points, step by step.
    std::vector<std::vector<int>> active;
    for (int i = 0; i < n; ++i) active.push_back({i});
    std::vector<std::set<int>> node_sets(static_cast<std::size_t>(2 * n - 1));
    for (int i = 0; i < n; ++i) node_sets[static_cast<std::size_t>(i)] = {i};

    double prev_height = 0.0;
    for (std::size_t t = 0; t < d.merges.size(); ++t) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < active.size(); ++i) {
        for (std::size_t j = i + 1; j < active.size(); ++j) {
          std::vector<int> both = active[i];
          both.insert(both.end(), active[j].begin(), active[j].end());
          best = std::min(best, cluster_sse(x, both) - cluster_sse(x, active[i]) -
                                    cluster_sse(x, active[j]));
        }
      }
      const auto& m = d.merges[t];
      const auto& sa = node_sets[static_cast<std::size_t>(m.a)];
      const auto& sb = node_sets[static_cast<std::size_t>(m.b)];
      std::vector<int> both(sa.begin(), sa.end());
      both.insert(both.end(), sb.begin(), sb.end());
      const double impl_delta =
          cluster_sse(x, both) -
          cluster_sse(x, std::vector<int>(sa.begin(), sa.end())) -
          cluster_sse(x, std::vector<int>(sb.begin(), sb.end()));
      require(std::abs(impl_delta - best) < 1e-9, "merge is not the minimum-delta pair");
      require(std::abs(m.height * m.height / 2.0 - impl_delta) < 1e-9,
              "height inconsistent with SSE increase");
      require(m.height >= prev_height - 1e-9, "heights decrease");
      prev_height = m.height;

      std::set<int> merged(both.begin(), both.end());
      std::erase_if(active, [&](const std::vector<int>& c) {
        return std::set<int>(c.begin(), c.end()) == sa ||
               std::set<int>(c.begin(), c.end()) == sb;
      });
      active.emplace_back(both);
      node_sets[static_cast<std::size_t>(n) + t] = merged;
    }
  }
}

// ---- criterion 5: consensus correctness -----------------------------------

stats::Dendrogram chain_dendrogram(const std::vector<std::string>& leaves,
                                   const std::vector<int>& order) {
  stats::Dendrogram d;
  d.leaves = leaves;
  const int n = static_cast<int>(leaves.size());
  int current = order[0];
  for (int t = 1; t < n; ++t) {
    stats::Merge m;
    m.a = std::min(current, order[static_cast<std::size_t>(t)]);
    m.b = std::max(current, order[static_cast<std::size_t>(t)]);
    m.height = t;
    m.size = t + 1;
    d.merges.push_back(m);
    current = n + t - 1;
  }
  return d;
}

void check_consensus() {
  const std::vector<std::string> leaves{"a", "b", "c", "d"};
  const auto d1 = chain_dendrogram(leaves, {0, 1, 2, 3});  // {a,b} {a,b,c}
  const auto d2 = chain_dendrogram(leaves, {2, 3, 0, 1});  // {c,d} {a,c,d}
  const auto d3 = chain_dendrogram(leaves, {2, 3, 1, 0});  // {c,d} {b,c,d}
  // Hand supports: root {a,b,c,d}=1, {c,d}=2/3, every other clade 1/3.
  for (const double p : {0.4, 0.6}) {
    const auto c = stats::consensus_tree({d1, d2, d3}, p);
    require(c.clades.size() == 2, "expected root plus {c,d} at p=" + std::to_string(p));
    bool saw_cd = false;
    for (const auto& clade : c.clades) {
      if (clade.leaves == std::vector<std::string>({"c", "d"})) {
        saw_cd = true;
        require(std::abs(clade.support - 2.0 / 3.0) < 1e-12, "wrong support for {c,d}");
      } else {
        require(clade.leaves == leaves, "unexpected clade retained");
        require(std::abs(clade.support - 1.0) < 1e-12, "wrong root support");
      }
    }
    require(saw_cd, "{c,d} missing");
  }
  {
    const auto c = stats::consensus_tree({d1, d2, d3}, 1.0);
    require(c.clades.size() == 1 && c.clades[0].leaves == leaves,
            "p=1.0 must retain only the root here");
  }
  // Identical trees keep every clade at support 1 for any p.
  for (const double p : {0.4, 0.6, 1.0}) {
    const auto c = stats::consensus_tree({d1, d1, d1}, p);
    require(c.clades.size() == 3, "identical trees must keep all proper clades");
    for (const auto& clade : c.clades)
      require(std::abs(clade.support - 1.0) < 1e-12, "support must be 1");
  }
  // Compatibility: retained clades nest or are disjoint.
  const auto c = stats::consensus_tree({d1, d2, d3, chain_dendrogram(leaves, {0, 1, 3, 2})}, 0.4);
  for (std::size_t i = 0; i < c.clades.size(); ++i) {
    for (std::size_t j = i + 1; j < c.clades.size(); ++j) {
      std::vector<std::string> inter;
      std::set_intersection(c.clades[i].leaves.begin(), c.clades[i].leaves.end(),
                            c.clades[j].leaves.begin(), c.clades[j].leaves.end(),
                            std::back_inserter(inter));
      require(inter.empty() || inter.size() == c.clades[i].leaves.size() ||
                  inter.size() == c.clades[j].leaves.size(),
              "incompatible clades retained");
    }
  }
}

// ---- criterion 6: forest + metrics ----------------------------------------

void check_forest_metrics() {
  // Separable fixture: threshold at 0, trained and tested on disjoint halves.
  {
    Rng rng(11);
    Eigen::MatrixXd x(400, 2);
    std::vector<int> y;
    for (int i = 0; i < 400; ++i) {
      const int label = i % 2;
      x(i, 0) = label == 1 ? 1.0 + rng.uniform_double() : -1.0 - rng.uniform_double();
      x(i, 1) = rng.normal();
      y.push_back(label);
    }
    forest::ForestConfig cfg;
    cfg.n_trees = 60;
    cfg.seed = 21;
    const auto f = forest::fit_forest(x.topRows(200), {y.begin(), y.begin() + 200}, cfg);
    std::vector<double> scores;
    std::vector<int> labels;
    std::vector<double> row(2);
    for (int i = 200; i < 400; ++i) {
      row[0] = x(i, 0);
      row[1] = x(i, 1);
      scores.push_back(forest::predict_proba(f, row));
      labels.push_back(y[static_cast<std::size_t>(i)]);
    }
    const auto m = stats::evaluate_metrics(scores, labels);
    require(m.auc == 1.0, "separable fixture AUC " + std::to_string(m.auc) + " != 1.0");
  }
  // Shuffled labels: n=10,000, AUC must hover at chance.
  {
    Rng rng(12);
    const int n = 10000, d = 5;
    Eigen::MatrixXd x(n, d);
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
      y.push_back(static_cast<int>(rng.uniform_index(2)));
    }
    forest::ForestConfig cfg;
    cfg.n_trees = 30;
    cfg.min_leaf = 25;
    cfg.seed = 31;
    const auto f = forest::fit_forest(x.topRows(n / 2), {y.begin(), y.begin() + n / 2}, cfg);
    std::vector<double> scores;
    std::vector<int> labels;
    std::vector<double> row(d);
    for (int i = n / 2; i < n; ++i) {
      for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(j)] = x(i, j);
      scores.push_back(forest::predict_proba(f, row));
      labels.push_back(y[static_cast<std::size_t>(i)]);
    }
    const auto m = stats::evaluate_metrics(scores, labels);
    require(m.auc >= 0.45 && m.auc <= 0.55,
            "shuffled-label AUC " + std::to_string(m.auc) + " outside [0.45, 0.55]");
  }
  // Downsampling arithmetic.
  {
    std::vector<int> labels(1100, 1);
    std::fill(labels.begin() + 1000, labels.end(), 0);
    const auto r = forest::downsample(labels, 4.0, 99);
    long n1 = 0, n0 = 0;
    for (std::size_t i : r.indices) (labels[i] == 1 ? n1 : n0)++;
    require(n1 == 400 && n0 == 100, "downsample kept " + std::to_string(n1) + ":" +
                                        std::to_string(n0) + " instead of 400:100");
  }
}

// ---- criterion 7: shapley oracle ------------------------------------------

Eigen::VectorXd brute_force_shapley(const forest::Forest& f, std::span<const double> x,
                                    const Eigen::MatrixXd& background) {
  const int d = f.n_features();
  const std::uint64_t n_masks = 1ULL << d;
  std::vector<double> value(n_masks, 0.0);
  std::vector<double> composite(static_cast<std::size_t>(d));
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < background.rows(); ++b) {
      for (int j = 0; j < d; ++j)
        composite[static_cast<std::size_t>(j)] =
            (mask >> j) & 1ULL ? x[static_cast<std::size_t>(j)] : background(b, j);
      acc += forest::predict_proba(f, composite);
    }
    value[mask] = acc / static_cast<double>(background.rows());
  }
  std::vector<double> fact(static_cast<std::size_t>(d) + 1, 1.0);
  for (int i = 1; i <= d; ++i)
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = 1ULL << i;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
      if (mask & bit) continue;
      const int s = std::popcount(mask);
      const double w = fact[static_cast<std::size_t>(s)] *
                       fact[static_cast<std::size_t>(d - s - 1)] / fact[static_cast<std::size_t>(d)];
      phi(i) += w * (value[mask | bit] - value[mask]);
    }
  }
  return phi;
}

forest::Forest single_stump(int feature, double threshold, double left_p, double right_p, int d) {
  forest::Forest f;
  f.feature_names.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) f.feature_names[static_cast<std::size_t>(j)] = "x" + std::to_string(j);
  forest::Tree t;
  t.nodes.resize(3);
  t.nodes[0] = {feature, threshold, 1, 2, (left_p + right_p) / 2, 2};
  t.nodes[1] = {-1, 0, -1, -1, left_p, 1};
  t.nodes[2] = {-1, 0, -1, -1, right_p, 1};
  f.trees.push_back(t);
  return f;
}

void check_shapley_oracle() {
  Rng rng(606);
  int done = 0;
  while (done < 30) {
    const int d = 2 + static_cast<int>(rng.uniform_index(7));  // 2..8
    const int n = 40;
    Eigen::MatrixXd x(n, d);
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
      y.push_back(x(i, 0) + 0.5 * x(i, d - 1) + 0.2 * rng.normal() > 0 ? 1 : 0);
    }
    bool both = false;
    for (int i = 1; i < n; ++i) both |= (y[static_cast<std::size_t>(i)] != y[0]);
    if (!both) continue;
    ++done;

    forest::ForestConfig cfg;
    cfg.n_trees = 4;
    cfg.seed = 2000 + static_cast<std::uint64_t>(done);
    cfg.max_features = d;
    const auto f = forest::fit_forest(x, y, cfg);

    Eigen::MatrixXd bg(8, d);
    for (Eigen::Index i = 0; i < bg.rows(); ++i)
      for (int j = 0; j < d; ++j) bg(i, j) = rng.normal();
    std::vector<double> probe(static_cast<std::size_t>(d));
    for (auto& v : probe) v = rng.normal();

    const auto a = forest::shap_explain(f, probe, bg);
    const auto oracle = brute_force_shapley(f, probe, bg);
    require((a.phi - oracle).cwiseAbs().maxCoeff() < 1e-9, "phi disagrees with coalition oracle");
    require(std::abs(a.phi.sum() - (forest::predict_proba(f, probe) - a.base_value)) < 1e-9,
            "efficiency violated");
    for (int i = 0; i < d; ++i)
      require(std::abs(a.phi_interaction.row(i).sum() - a.phi(i)) < 1e-9,
              "interaction rows do not sum to phi");
  }
  // Additive model: independent stumps must have zero interaction.
  forest::Forest add = single_stump(0, 0.5, 0.0, 1.0, 2);
  add.trees.push_back(single_stump(1, 0.5, 0.0, 1.0, 2).trees[0]);
  Eigen::MatrixXd bg(4, 2);
  bg << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<double> probe{1.0, 1.0};
  const auto a = forest::shap_explain(add, probe, bg);
  require(std::abs(a.phi_interaction(0, 1)) < 1e-9, "additive model has nonzero interaction");
}

// ---- criterion 8: pipeline shapes -----------------------------------------

table::FeatureTable factorial_table() {
  Rng rng(5);
  table::FeatureTable t;
  int next_id = 0;
  const auto add_row = [&](const std::string& s, const std::string& g, const std::string& d,
                           const std::string& p, int si, int gi) {
    table::Row r;
    r.id = "doc-" + std::to_string(next_id++);
    r.source = s;
    r.genre = g;
    r.decoding = d;
    r.repetition_penalty = p;
    r.token_count = 200 + static_cast<long>(rng.uniform_index(100));
    for (int f = 0; f < biber::kFeatureCount; ++f)
      r.features[static_cast<std::size_t>(f)] = 5.0 + 0.1 * rng.normal();
    r.features[0] = (s == "human" ? 1.0 : 6.0) + 0.05 * rng.normal();
    r.features[1] = 2.0 + 0.5 * si + 0.1 * rng.normal();
    r.features[2] = 3.0 + 0.7 * gi + 0.1 * rng.normal();
    t.rows.push_back(std::move(r));
  };
  int gi = 0;
  for (const auto& g : corpus::known_genres()) {
    int si = 0;
    for (const auto& s : corpus::known_sources()) {
      if (s == "human") {
        for (int k = 0; k < 4; ++k)
          add_row(s, g, corpus::kNotApplicable, corpus::kNotApplicable, si, gi);
      } else {
        for (const char* d : {"greedy", "sampling"})
          for (const char* p : {"no", "yes"}) add_row(s, g, d, p, si, gi);
      }
      ++si;
    }
    ++gi;
  }
  return t;
}

void check_pipeline_shapes() {
  const auto t = factorial_table();
  const auto pca_report = pipelines::run_genre_source_pca(t);
  require(pca_report["results"]["matrix_shape"][0] == 96 &&
              pca_report["results"]["matrix_shape"][1] == 67,
          "genre-source aggregate is not 96x67");

  pipelines::ClassificationConfig cfg;
  cfg.n_trees = 30;
  cfg.shap_sample = 8;
  cfg.shap_background = 20;
  cfg.importance_repeats = 3;
  const auto cls = pipelines::run_classification(t, cfg);
  require(cls["results"]["importance"].size() == 15, "importance list is not 15 entries");

  const auto clu = pipelines::run_clustering_consensus(t);
  require(clu["results"]["genres"].size() == 8, "expected 8 per-genre dendrograms");
  for (const auto& g : clu["results"]["genres"])
    require(g["merges"].size() == 11, "dendrogram does not have 11 merges");
}

// ---- criterion 10: byte determinism across --threads ----------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STYLO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

void check_determinism() {
  const fs::path dir = fs::temp_directory_path() / "stylo_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Small mixed corpus, enough rows per class for the classifier split.
  std::ostringstream csv;
  csv << "id,model,domain,decoding,repetition_penalty,attack,title,generation\n";
  Rng rng(9001);
  for (int i = 0; i < 60; ++i) {
    const bool human = i % 2 == 0;
    csv << "d" << i << "," << (human ? "human" : "gpt4") << ",news,"
        << (human ? "," : "greedy,no") << ",none,t" << i << ","
        << "\"" << fuzz_document(rng, 30, 60) << "\"\n";
  }
  const fs::path corpus_path = dir / "corpus.csv";
  std::ofstream(corpus_path) << csv.str();

  const auto extract_to = [&](const fs::path& out, int threads) {
    require(run_cli("extract " + corpus_path.string() + " -o " + out.string() +
                    " --threads " + std::to_string(threads)) == 0,
            "extract failed");
  };
  extract_to(dir / "a.csv", 1);
  extract_to(dir / "b.csv", 4);
  extract_to(dir / "c.csv", 1);  // rerun with identical flags
  require(read_file(dir / "a.csv") == read_file(dir / "b.csv"),
          "extract output differs across --threads");
  require(read_file(dir / "a.csv") == read_file(dir / "c.csv"),
          "extract output differs across reruns");

  const auto analyze_to = [&](const fs::path& out, int threads) {
    require(run_cli("analyze " + (dir / "a.csv").string() +
                    " -p classify --trees 30 --shap-sample 8 --shap-background 20"
                    " --importance-repeats 3 --out-dir " +
                    out.string() + " --threads " + std::to_string(threads)) == 0,
            "analyze failed");
  };
  analyze_to(dir / "r1", 1);
  analyze_to(dir / "r2", 8);
  require(read_file(dir / "r1" / "report.json") == read_file(dir / "r2" / "report.json"),
          "analyze report differs across --threads");
}

// ---- criterion 11: throughput ---------------------------------------------

void check_throughput() {
  Rng rng(2468);
  std::vector<std::string> docs;
  docs.reserve(10000);
  for (int i = 0; i < 10000; ++i) docs.push_back(fuzz_document(rng, 290, 310));

  const auto t0 = std::chrono::steady_clock::now();
  double sink = 0.0;
  for (const auto& text : docs) {
    const auto fv = biber::extract_features(lingcore::analyze(text));
    sink += fv.values[0];
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(sink >= 0.0, "unreachable");
  require(secs < 60.0,
          "10,000 documents took " + std::to_string(secs) + " s single-threaded");
}

}  // namespace

int main() {
  criterion(1, "micro-corpus gold counts match exactly", check_micro_gold);
  criterion(2, "rate formula and duplication invariance on 1,000 fuzz documents",
            check_rate_formula);
  criterion(3, "pca reconstruction, energy conservation and 95% retention", check_pca_oracle);
  criterion(4, "ward merges match brute-force recomputation on 50 instances", check_ward_oracle);
  criterion(5, "consensus clades match hand-computed supports at p in {0.4, 0.6, 1.0}",
            check_consensus);
  criterion(6, "forest AUC extremes and 4:1 downsampling arithmetic", check_forest_metrics);
  criterion(7, "shapley values match coalition enumeration on 30 forests", check_shapley_oracle);
  criterion(8, "pipeline shapes on the full-factorial fixture", check_pipeline_shapes);
  std::cout << "criterion 9: SKIP — full-scale reproduction needs the external RAID corpus "
               "(hundreds of thousands of documents, hours of runtime); not run here\n";
  criterion(10, "byte-identical CLI outputs across --threads and reruns", check_determinism);
  criterion(11, "10,000 ~300-word documents extracted in under 60 s", check_throughput);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all runnable criteria passed\n";
  return 0;
}
