#include "stylo/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "stylo/corpus.hpp"
#include "stylo/forest.hpp"
#include "stylo/metrics.hpp"
#include "stylo/pca.hpp"
#include "stylo/rng.hpp"
#include "stylo/shap.hpp"
#include "stylo/stats.hpp"
#include "stylo/svg.hpp"

namespace stylo::pipelines {

using nlohmann::json;

namespace {

constexpr double kRatioSmoothingEps = 1e-3;

json report_shell(const std::string& kind, const table::FeatureTable& table, json config) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = kind;
  j["inputs"] = {{"rows", table.rows.size()}, {"digest", table_digest(table)}};
  j["config"] = std::move(config);
  return j;
}

std::vector<int> machine_labels(const table::FeatureTable& table) {
  std::vector<int> y;
  y.reserve(table.rows.size());
  for (const auto& r : table.rows) y.push_back(r.source == "human" ? 0 : 1);
  return y;
}

json metrics_to_json(const stats::MetricReport& m) {
  json roc = json::array();
  for (const auto& [fpr, tpr] : m.roc_points) roc.push_back({fpr, tpr});
  return {{"f1_machine", m.f1_positive},
          {"f1_human", m.f1_negative},
          {"auc", m.auc},
          {"auc_defined", m.auc_defined},
          {"confusion", {m.confusion[0], m.confusion[1], m.confusion[2], m.confusion[3]}},
          {"roc_points", std::move(roc)}};
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

std::vector<int> select_labels(const std::vector<int>& y, const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(y[i]);
  return out;
}

const std::string& feature_name(int index) {
  return biber::feature_catalog()[static_cast<std::size_t>(index)].name;
}

// Sources in canonical order first, then any others alphabetically.
std::vector<std::string> ordered_sources(const std::set<std::string>& present, bool include_human) {
  std::vector<std::string> out;
  for (const auto& s : corpus::known_sources()) {
    if (s == "human" && !include_human) continue;
    if (present.count(s)) out.push_back(s);
  }
  for (const auto& s : present)
    if (std::find(out.begin(), out.end(), s) == out.end() && (include_human || s != "human"))
      out.push_back(s);
  return out;
}

}  // namespace

std::string table_digest(const table::FeatureTable& table) {
  const std::string csv = table::to_csv(table);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : csv) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json run_classification(const table::FeatureTable& table, const ClassificationConfig& config) {
  const auto y = machine_labels(table);
  if (std::set<int>(y.begin(), y.end()).size() != 2)
    throw std::runtime_error("run_classification: table must contain both classes");

  const Eigen::MatrixXd x = table.matrix();
  const auto split = stats::stratified_split(y, 0.6, 0.2, 0.2, config.seed);

  // Tune the majority:minority ratio on validation F1 of the human class.
  double ratio = config.downsample_ratio;
  json sweep = json::array();
  if (config.sweep_ratio) {
    const auto xv = select_rows(x, split.validation);
    const auto yv = select_labels(y, split.validation);
    double best_f1 = -1.0;
    for (int r = 1; r <= 10; ++r) {
      const auto ytr = select_labels(y, split.train);
      const auto ds = forest::downsample(ytr, static_cast<double>(r), config.seed + 11);
      std::vector<std::size_t> rows;
      rows.reserve(ds.indices.size());
      for (auto i : ds.indices) rows.push_back(split.train[i]);
      forest::ForestConfig fc;
      fc.n_trees = config.n_trees;
      fc.seed = config.seed + 12;
      fc.downsample_ratio = static_cast<double>(r);
      const auto model = forest::fit_forest(select_rows(x, rows), select_labels(y, rows), fc);
      const auto scores = forest::predict_proba(model, xv);
      const auto m = stats::evaluate_metrics(scores, yv);
      sweep.push_back({{"ratio", r}, {"f1_human", m.f1_negative}});
      if (m.f1_negative > best_f1) {
        best_f1 = m.f1_negative;
        ratio = static_cast<double>(r);
      }
    }
  }

  // Refit on train + validation; evaluate on the held-out test set.
  std::vector<std::size_t> fit_rows = split.train;
  fit_rows.insert(fit_rows.end(), split.validation.begin(), split.validation.end());
  std::sort(fit_rows.begin(), fit_rows.end());
  const auto x_fit = select_rows(x, fit_rows);
  const auto y_fit = select_labels(y, fit_rows);
  const auto x_test = select_rows(x, split.test);
  const auto y_test = select_labels(y, split.test);

  std::vector<std::string> names;
  for (const auto& s : biber::feature_catalog()) names.push_back(s.name);

  forest::ForestConfig base_cfg;
  base_cfg.n_trees = config.n_trees;
  base_cfg.seed = config.seed + 1;
  auto base = forest::fit_forest(x_fit, y_fit, base_cfg);
  base.feature_names = names;

  const auto ds = forest::downsample(y_fit, ratio, config.seed + 2);
  std::vector<std::size_t> ds_rows;
  ds_rows.reserve(ds.indices.size());
  for (auto i : ds.indices) ds_rows.push_back(i);
  forest::ForestConfig ds_cfg = base_cfg;
  ds_cfg.seed = config.seed + 3;
  ds_cfg.downsample_ratio = ratio;
  auto downsampled =
      forest::fit_forest(select_rows(x_fit, ds_rows), select_labels(y_fit, ds_rows), ds_cfg);
  downsampled.feature_names = names;

  const auto base_metrics = stats::evaluate_metrics(forest::predict_proba(base, x_test), y_test);
  const auto ds_metrics =
      stats::evaluate_metrics(forest::predict_proba(downsampled, x_test), y_test);

  // Permutation importance from the downsampled model on held-out data.
  const auto importance =
      forest::permutation_importance(downsampled, x_test, y_test, forest::ImportanceMetric::auc,
                                     config.importance_repeats, config.seed + 4);
  json imp = json::array();
  for (int i = 0; i < config.top_k && i < static_cast<int>(importance.size()); ++i) {
    const auto& e = importance[static_cast<std::size_t>(i)];
    imp.push_back({{"feature", feature_name(e.feature)},
                   {"importance", e.mean},
                   {"stddev", e.stddev}});
  }

  // SHAP interaction strengths on a seeded test subsample.
  const std::size_t n_explain =
      std::min<std::size_t>(static_cast<std::size_t>(config.shap_sample), split.test.size());
  const std::size_t n_bg =
      std::min<std::size_t>(static_cast<std::size_t>(config.shap_background), fit_rows.size());
  Rng shap_rng{config.seed + 5};
  const auto explain_pick =
      shap_rng.sample_without_replacement(static_cast<std::size_t>(x_test.rows()), n_explain);
  const auto bg_pick =
      shap_rng.sample_without_replacement(static_cast<std::size_t>(x_fit.rows()), n_bg);
  const Eigen::MatrixXd background = select_rows(x_fit, bg_pick);

  Eigen::MatrixXd interaction_abs =
      Eigen::MatrixXd::Zero(biber::kFeatureCount, biber::kFeatureCount);
  Eigen::VectorXd phi_abs = Eigen::VectorXd::Zero(biber::kFeatureCount);
  for (auto row : explain_pick) {
    const Eigen::VectorXd xi = x_test.row(static_cast<Eigen::Index>(row));
    const auto attr = forest::shap_explain(
        downsampled, std::span<const double>(xi.data(), static_cast<std::size_t>(xi.size())),
        background);
    interaction_abs += attr.phi_interaction.cwiseAbs();
    phi_abs += attr.phi.cwiseAbs();
  }
  if (!explain_pick.empty()) {
    interaction_abs /= static_cast<double>(explain_pick.size());
    phi_abs /= static_cast<double>(explain_pick.size());
  }
  struct Pair {
    int a, b;
    double strength;
  };
  std::vector<Pair> pairs;
  for (int a = 0; a < biber::kFeatureCount; ++a)
    for (int b = a + 1; b < biber::kFeatureCount; ++b)
      pairs.push_back({a, b, interaction_abs(a, b)});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& l, const Pair& r) { return l.strength > r.strength; });
  json inter = json::array();
  for (int i = 0; i < config.top_k && i < static_cast<int>(pairs.size()); ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i)];
    inter.push_back({{"feature_a", feature_name(p.a)},
                     {"feature_b", feature_name(p.b)},
                     {"strength", p.strength}});
  }

  json report = report_shell("classification", table,
                             {{"seed", config.seed},
                              {"n_trees", config.n_trees},
                              {"ratio", ratio},
                              {"sweep_ratio", config.sweep_ratio},
                              {"importance_repeats", config.importance_repeats},
                              {"shap_sample", n_explain},
                              {"shap_background", n_bg},
                              {"top_k", config.top_k}});
  report["results"] = {{"base", metrics_to_json(base_metrics)},
                       {"downsampled", metrics_to_json(ds_metrics)},
                       {"ratio_sweep", std::move(sweep)},
                       {"importance", std::move(imp)},
                       {"interactions", std::move(inter)},
                       {"downsampled_model", forest::forest_to_json(downsampled)}};
  return report;
}

json run_overuse(const table::FeatureTable& table) {
  std::vector<std::size_t> human_rows;
  std::set<std::string> model_sources;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].source == "human") human_rows.push_back(i);
    else model_sources.insert(table.rows[i].source);
  }
  if (human_rows.empty()) throw std::runtime_error("run_overuse: no human baseline rows");
  if (model_sources.empty()) throw std::runtime_error("run_overuse: no LLM rows");

  const auto group_stats = [&](const std::vector<std::size_t>& rows) {
    std::vector<stats::MeanStderr> out;
    out.reserve(biber::kFeatureCount);
    std::vector<double> samples(rows.size());
    for (int f = 0; f < biber::kFeatureCount; ++f) {
      for (std::size_t k = 0; k < rows.size(); ++k)
        samples[k] = table.rows[rows[k]].features[static_cast<std::size_t>(f)];
      out.push_back(stats::mean_stderr(samples));
    }
    return out;
  };

  const auto human_stats = group_stats(human_rows);
  std::vector<double> human_mean(biber::kFeatureCount);
  for (int f = 0; f < biber::kFeatureCount; ++f)
    human_mean[static_cast<std::size_t>(f)] = human_stats[static_cast<std::size_t>(f)].mean;

  std::vector<std::size_t> llm_rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].source != "human") llm_rows.push_back(i);
  const auto llm_stats = group_stats(llm_rows);
  const auto ratios = stats::usage_ratio(llm_stats, human_mean, kRatioSmoothingEps);

  json ratio_list = json::array();
  std::vector<std::pair<double, int>> ranked;
  for (int f = 0; f < biber::kFeatureCount; ++f) {
    const auto& r = ratios[static_cast<std::size_t>(f)];
    ratio_list.push_back({{"feature", feature_name(f)},
                          {"ratio", r.ratio},
                          {"ratio_stderr", r.ratio_stderr},
                          {"log10_ratio", r.log10_ratio},
                          {"smoothed", r.smoothed},
                          {"llm_mean", llm_stats[static_cast<std::size_t>(f)].mean},
                          {"llm_stderr", llm_stats[static_cast<std::size_t>(f)].stderr_of_mean},
                          {"human_mean", human_mean[static_cast<std::size_t>(f)]}});
    ranked.emplace_back(r.ratio, f);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  json top_over = json::array(), top_under = json::array();
  for (int i = 0; i < 5 && i < static_cast<int>(ranked.size()); ++i)
    top_over.push_back(feature_name(ranked[static_cast<std::size_t>(i)].second));
  for (int i = 0; i < 5 && i < static_cast<int>(ranked.size()); ++i)
    top_under.push_back(feature_name(ranked[ranked.size() - 1 - static_cast<std::size_t>(i)].second));

  // Per-model log10 ratio matrix for the heatmap.
  const auto models = ordered_sources(model_sources, /*include_human=*/false);
  json heat_rows = json::array();
  Eigen::MatrixXd heat(static_cast<Eigen::Index>(models.size()), biber::kFeatureCount);
  for (std::size_t m = 0; m < models.size(); ++m) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
      if (table.rows[i].source == models[m]) rows.push_back(i);
    const auto mstats = group_stats(rows);
    const auto mratios = stats::usage_ratio(mstats, human_mean, kRatioSmoothingEps);
    for (int f = 0; f < biber::kFeatureCount; ++f)
      heat(static_cast<Eigen::Index>(m), f) = mratios[static_cast<std::size_t>(f)].log10_ratio;
  }
  for (Eigen::Index r = 0; r < heat.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < heat.cols(); ++c) row.push_back(heat(r, c));
    heat_rows.push_back(std::move(row));
  }

  json report = report_shell("overuse", table, {{"smoothing_eps", kRatioSmoothingEps}});
  report["results"] = {{"ratios", std::move(ratio_list)},
                       {"top_overused", std::move(top_over)},
                       {"top_underused", std::move(top_under)},
                       {"heatmap", {{"models", models}, {"log10_ratios", std::move(heat_rows)}}}};
  return report;
}

namespace {

// Aggregate known genre x source cells, erroring on a missing cell; returns
// the 96x67 matrix and the (genre, source) tuples in row order.
std::pair<Eigen::MatrixXd, std::vector<std::pair<std::string, std::string>>>
genre_source_matrix(const table::FeatureTable& table) {
  const auto agg = table::aggregate_by_keys(table, {"genre", "source"});
  std::map<std::pair<std::string, std::string>, Eigen::Index> index;
  for (std::size_t r = 0; r < agg.row_keys.size(); ++r)
    index[{agg.row_keys[r][0], agg.row_keys[r][1]}] = static_cast<Eigen::Index>(r);

  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& g : corpus::known_genres())
    for (const auto& s : corpus::known_sources()) {
      if (!index.count({g, s}))
        throw std::runtime_error("missing genre-source cell " + g + "/" + s);
      keys.emplace_back(g, s);
    }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(keys.size()), biber::kFeatureCount);
  for (std::size_t r = 0; r < keys.size(); ++r)
    x.row(static_cast<Eigen::Index>(r)) = agg.values.row(index.at(keys[r]));
  return {std::move(x), std::move(keys)};
}

json points_json(const Eigen::MatrixXd& scores,
                 const std::vector<std::pair<std::string, std::string>>& keys,
                 const char* first_field, const char* second_field) {
  json points = json::array();
  for (std::size_t r = 0; r < keys.size(); ++r)
    points.push_back({{first_field, keys[r].first},
                      {second_field, keys[r].second},
                      {"x", scores(static_cast<Eigen::Index>(r), 0)},
                      {"y", scores(static_cast<Eigen::Index>(r), 1)}});
  return points;
}

}  // namespace

json run_genre_source_pca(const table::FeatureTable& table) {
  auto [x, keys] = genre_source_matrix(table);
  const auto z = stats::zscore_columns(x);
  const auto p = stats::pca(z.normalized, stats::RetainTopK{2});

  json ellipses = json::array();
  for (const auto& g : corpus::known_genres()) {
    std::vector<Eigen::Index> rows;
    for (std::size_t r = 0; r < keys.size(); ++r)
      if (keys[r].first == g) rows.push_back(static_cast<Eigen::Index>(r));
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), 2);
    for (std::size_t i = 0; i < rows.size(); ++i) pts.row(static_cast<Eigen::Index>(i)) = p.scores.row(rows[i]);
    const auto e = stats::confidence_ellipse(pts);
    ellipses.push_back({{"genre", g},
                        {"center", {e.center.x(), e.center.y()}},
                        {"axis_major", {e.axis_major.x(), e.axis_major.y()}},
                        {"axis_minor", {e.axis_minor.x(), e.axis_minor.y()}},
                        {"semi_major", e.semi_major},
                        {"semi_minor", e.semi_minor}});
  }

  json report = report_shell("genre-source-pca", table,
                             {{"weighting", "token-count"}, {"normalization", "zscore"}});
  report["results"] = {
      {"matrix_shape", {x.rows(), x.cols()}},
      {"explained_ratio", {p.explained_ratio(0), p.explained_ratio(1)}},
      {"points", points_json(p.scores, keys, "genre", "source")},
      {"ellipses", std::move(ellipses)},
      {"constant_columns", stats::zscore_columns(x).constant_columns}};
  return report;
}

json run_clustering_consensus(const table::FeatureTable& table, double p, bool center_only) {
  std::vector<stats::Dendrogram> dendrograms;
  json genres = json::array();
  for (const auto& g : corpus::known_genres()) {
    table::FeatureTable sub;
    for (const auto& r : table.rows)
      if (r.genre == g) sub.rows.push_back(r);
    if (sub.rows.empty()) throw std::runtime_error("run_clustering_consensus: genre " + g + " absent");
    const auto agg = table::aggregate_by_keys(sub, {"source"});
    std::vector<std::string> labels;
    for (const auto& s : corpus::known_sources()) {
      const auto it = std::find_if(agg.row_keys.begin(), agg.row_keys.end(),
                                   [&](const auto& k) { return k[0] == s; });
      if (it == agg.row_keys.end())
        throw std::runtime_error("run_clustering_consensus: source " + s + " absent in genre " + g);
      labels.push_back(s);
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(labels.size()), biber::kFeatureCount);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto it = std::find_if(agg.row_keys.begin(), agg.row_keys.end(),
                                   [&](const auto& k) { return k[0] == labels[i]; });
      x.row(static_cast<Eigen::Index>(i)) =
          agg.values.row(static_cast<Eigen::Index>(it - agg.row_keys.begin()));
    }
    const auto z = center_only ? stats::center_columns(x) : stats::zscore_columns(x);
    const auto pc = stats::pca(z.normalized, stats::RetainVarianceFraction{0.95});
    auto d = stats::ward_cluster(pc.scores, labels);
    json merges = json::array();
    for (const auto& m : d.merges) merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"size", m.size}});
    genres.push_back({{"genre", g},
                      {"components", pc.retained},
                      {"leaves", labels},
                      {"merges", std::move(merges)}});
    dendrograms.push_back(std::move(d));
  }

  const auto consensus = stats::consensus_tree(dendrograms, p);
  json clades = json::array();
  for (const auto& c : consensus.clades)
    clades.push_back({{"members", c.leaves}, {"support", c.support}});

  json report = report_shell(
      "clustering-consensus", table,
      {{"p", p}, {"normalization", center_only ? "center" : "zscore"}, {"variance_retained", 0.95}});
  report["results"] = {{"genres", std::move(genres)},
                       {"consensus", {{"leaves", consensus.leaves}, {"clades", std::move(clades)}}}};
  return report;
}

json run_decoding_pca(const table::FeatureTable& table, const std::string& genre) {
  table::FeatureTable sub;
  for (const auto& r : table.rows)
    if (r.genre == genre) sub.rows.push_back(r);
  if (sub.rows.empty()) throw std::runtime_error("run_decoding_pca: genre " + genre + " absent");

  const auto agg = table::aggregate_by_keys(sub, {"source", "decoding", "repetition_penalty"});
  Eigen::MatrixXd x = agg.values;
  if (x.rows() < 2) throw std::runtime_error("run_decoding_pca: fewer than 2 configurations");
  const auto z = stats::zscore_columns(x);
  const auto p = stats::pca(z.normalized, stats::RetainTopK{std::min<int>(2, static_cast<int>(x.rows()) - 1)});

  json points = json::array();
  for (std::size_t r = 0; r < agg.row_keys.size(); ++r) {
    const auto& k = agg.row_keys[r];
    const bool human = k[0] == "human";
    std::string marker = human ? "human" : k[1] + (k[2] == "yes" ? "+penalty" : "");
    points.push_back({{"source", k[0]},
                      {"decoding", k[1]},
                      {"repetition_penalty", k[2]},
                      {"marker_key", marker},
                      {"x", p.scores(static_cast<Eigen::Index>(r), 0)},
                      {"y", p.scores.cols() > 1 ? p.scores(static_cast<Eigen::Index>(r), 1) : 0.0}});
  }

  json report = report_shell("decoding-pca", table, {{"genre", genre}});
  report["results"] = {{"points", std::move(points)},
                       {"explained_ratio",
                        {p.explained_ratio(0),
                         p.explained_ratio.size() > 1 ? p.explained_ratio(1) : 0.0}}};
  return report;
}

namespace {

std::string figure_importance(const json& report) {
  std::vector<svg::BarDatum> bars;
  for (const auto& e : report.at("results").at("importance"))
    bars.push_back({e.at("feature").get<std::string>(), e.at("importance").get<double>(),
                    e.at("stddev").get<double>()});
  return svg::bar_chart(bars, "Top permutation-importance features");
}

std::string figure_interactions(const json& report) {
  std::vector<svg::BarDatum> bars;
  for (const auto& e : report.at("results").at("interactions"))
    bars.push_back({e.at("feature_a").get<std::string>() + " × " + e.at("feature_b").get<std::string>(),
                    e.at("strength").get<double>(), 0.0});
  return svg::bar_chart(bars, "Top SHAP interaction pairs");
}

std::string figure_roc(const json& report) {
  std::vector<svg::RocCurve> curves;
  for (const char* key : {"base", "downsampled"}) {
    const auto& m = report.at("results").at(key);
    svg::RocCurve c;
    c.name = key;
    c.auc = m.at("auc").get<double>();
    for (const auto& pt : m.at("roc_points"))
      c.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    curves.push_back(std::move(c));
  }
  return svg::roc_chart(curves, "ROC: base vs downsampled model");
}

std::string figure_ratio_dots(const json& report, bool all) {
  const auto& ratios = report.at("results").at("ratios");
  std::set<std::string> selected;
  if (!all) {
    for (const auto& f : report.at("results").at("top_overused")) selected.insert(f.get<std::string>());
    for (const auto& f : report.at("results").at("top_underused")) selected.insert(f.get<std::string>());
  }
  std::vector<svg::BarDatum> dots;
  for (const auto& e : ratios) {
    const auto name = e.at("feature").get<std::string>();
    if (!all && !selected.count(name)) continue;
    dots.push_back({name, e.at("ratio").get<double>(), e.at("ratio_stderr").get<double>()});
  }
  return svg::dot_plot_log(dots, all ? "Feature usage ratio, LLM vs human (all features)"
                                     : "Feature usage ratio, LLM vs human (top features)");
}

std::string figure_heatmap(const json& report) {
  const auto& h = report.at("results").at("heatmap");
  std::vector<std::string> models;
  for (const auto& m : h.at("models")) models.push_back(m.get<std::string>());
  std::vector<std::string> cols;
  for (const auto& s : biber::feature_catalog()) cols.push_back(s.id);
  const auto& rows = h.at("log10_ratios");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(models.size()), biber::kFeatureCount);
  for (std::size_t r = 0; r < models.size(); ++r)
    for (int c = 0; c < biber::kFeatureCount; ++c)
      values(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)].get<double>();
  return svg::heatmap(models, cols, values, "Log10 feature usage ratio per model");
}

std::string figure_pca_scatter(const json& report) {
  std::vector<svg::ScatterPoint> points;
  std::vector<svg::ScatterEllipse> ellipses;
  const auto& res = report.at("results");
  for (const auto& p : res.at("points")) {
    svg::ScatterPoint sp;
    sp.x = p.at("x").get<double>();
    sp.y = p.at("y").get<double>();
    if (p.contains("genre")) {  // genre-source map
      sp.color_key = p.at("genre").get<std::string>();
      sp.marker_key = p.at("source").get<std::string>() == "human" ? "human" : "model";
      sp.label = p.at("source").get<std::string>();
    } else {  // decoding map
      sp.color_key = p.at("source").get<std::string>();
      sp.marker_key = p.at("marker_key").get<std::string>();
      sp.label = sp.color_key + "/" + sp.marker_key;
    }
    points.push_back(std::move(sp));
  }
  if (res.contains("ellipses")) {
    for (const auto& e : res.at("ellipses")) {
      svg::ScatterEllipse se;
      se.label = e.at("genre").get<std::string>();
      se.params.center = {e.at("center")[0].get<double>(), e.at("center")[1].get<double>()};
      se.params.axis_major = {e.at("axis_major")[0].get<double>(), e.at("axis_major")[1].get<double>()};
      se.params.axis_minor = {e.at("axis_minor")[0].get<double>(), e.at("axis_minor")[1].get<double>()};
      se.params.semi_major = e.at("semi_major").get<double>();
      se.params.semi_minor = e.at("semi_minor").get<double>();
      ellipses.push_back(std::move(se));
    }
  }
  return svg::scatter_plot(points, ellipses, "PCA of Biber feature profiles");
}

stats::Dendrogram dendrogram_from_json(const json& g) {
  stats::Dendrogram d;
  for (const auto& l : g.at("leaves")) d.leaves.push_back(l.get<std::string>());
  for (const auto& m : g.at("merges"))
    d.merges.push_back({m.at("a").get<int>(), m.at("b").get<int>(), m.at("height").get<double>(),
                        m.at("size").get<int>()});
  return d;
}

std::string figure_dendrogram(const json& report, const std::string& genre) {
  for (const auto& g : report.at("results").at("genres"))
    if (g.at("genre").get<std::string>() == genre)
      return svg::dendrogram_chart(dendrogram_from_json(g), "Source clustering: " + genre);
  throw std::runtime_error("render_figure: genre " + genre + " not in report");
}

std::string figure_consensus(const json& report) {
  const auto& c = report.at("results").at("consensus");
  stats::ConsensusTree tree;
  tree.threshold = report.at("config").at("p").get<double>();
  for (const auto& l : c.at("leaves")) tree.leaves.push_back(l.get<std::string>());
  for (const auto& cl : c.at("clades")) {
    stats::Clade clade;
    for (const auto& m : cl.at("members")) clade.leaves.push_back(m.get<std::string>());
    clade.support = cl.at("support").get<double>();
    tree.clades.push_back(std::move(clade));
  }
  return svg::consensus_chart(tree, "Consensus of per-genre source clusterings");
}

}  // namespace

std::string render_figure(const json& report, const std::string& figure_kind) {
  const auto kind = report.at("kind").get<std::string>();
  auto fail = [&]() -> std::string {
    throw std::runtime_error("render_figure: report kind '" + kind +
                             "' does not support figure '" + figure_kind + "'");
  };
  if (kind == "classification") {
    if (figure_kind == "importance") return figure_importance(report);
    if (figure_kind == "interactions") return figure_interactions(report);
    if (figure_kind == "roc") return figure_roc(report);
    return fail();
  }
  if (kind == "overuse") {
    if (figure_kind == "ratio-dots") return figure_ratio_dots(report, false);
    if (figure_kind == "ratio-dots-all") return figure_ratio_dots(report, true);
    if (figure_kind == "heatmap") return figure_heatmap(report);
    return fail();
  }
  if (kind == "genre-source-pca" || kind == "decoding-pca") {
    if (figure_kind == "pca-scatter") return figure_pca_scatter(report);
    return fail();
  }
  if (kind == "clustering-consensus") {
    if (figure_kind == "consensus") return figure_consensus(report);
    if (figure_kind.rfind("dendrogram:", 0) == 0)
      return figure_dendrogram(report, figure_kind.substr(11));
    return fail();
  }
  throw std::runtime_error("render_figure: unknown report kind '" + kind + "'");
}

std::vector<std::pair<std::string, std::string>> render_all_figures(const json& report) {
  const auto kind = report.at("kind").get<std::string>();
  std::vector<std::string> kinds;
  if (kind == "classification") kinds = {"importance", "interactions", "roc"};
  else if (kind == "overuse") kinds = {"ratio-dots", "ratio-dots-all", "heatmap"};
  else if (kind == "genre-source-pca" || kind == "decoding-pca") kinds = {"pca-scatter"};
  else if (kind == "clustering-consensus") {
    kinds = {"consensus"};
    for (const auto& g : report.at("results").at("genres"))
      kinds.push_back("dendrogram:" + g.at("genre").get<std::string>());
  } else
    throw std::runtime_error("render_all_figures: unknown report kind '" + kind + "'");

  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : kinds) {
    std::string name = k;
    std::replace(name.begin(), name.end(), ':', '_');
    out.emplace_back(name, render_figure(report, k));
  }
  return out;
}

}  // namespace stylo::pipelines
