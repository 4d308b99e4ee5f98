#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylo/feature_table.hpp"

namespace stylo::pipelines {

inline constexpr int kReportSchemaVersion = 1;

struct ClassificationConfig {
  std::uint64_t seed = 7;
  int n_trees = 200;
  double downsample_ratio = 4.0;
  // Sweep majority:minority ratios 1..10 on validation F1 of the human class
  // instead of using downsample_ratio directly.
  bool sweep_ratio = false;
  int importance_repeats = 5;
  int shap_sample = 2000;
  int shap_background = 100;
  int top_k = 15;
};

// Reports are self-describing JSON documents: schema_version, kind, inputs
// (row count + content digest), config (fully materialized, with seeds) and a
// kind-specific results payload.

nlohmann::json run_classification(const table::FeatureTable& table,
                                  const ClassificationConfig& config = {});

nlohmann::json run_overuse(const table::FeatureTable& table);

nlohmann::json run_genre_source_pca(const table::FeatureTable& table);

nlohmann::json run_clustering_consensus(const table::FeatureTable& table, double p = 0.4,
                                        bool center_only = false);

nlohmann::json run_decoding_pca(const table::FeatureTable& table, const std::string& genre);

// Figure kinds understood per report kind:
//   classification        -> importance, interactions, roc
//   overuse               -> ratio-dots, ratio-dots-all, heatmap
//   genre-source-pca      -> pca-scatter
//   clustering-consensus  -> consensus, dendrogram:<genre>
//   decoding-pca          -> pca-scatter
// A kind the report does not support is an error.
std::string render_figure(const nlohmann::json& report, const std::string& figure_kind);

// All figures a report supports, as (name, svg) pairs.
std::vector<std::pair<std::string, std::string>> render_all_figures(const nlohmann::json& report);

// FNV-1a digest of the table's canonical CSV form; ties a report to its input.
std::string table_digest(const table::FeatureTable& table);

}  // namespace stylo::pipelines
