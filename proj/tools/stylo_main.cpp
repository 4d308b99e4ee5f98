#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stylo/biber.hpp"
#include "stylo/corpus.hpp"
#include "stylo/feature_table.hpp"
#include "stylo/forest.hpp"
#include "stylo/lingcore.hpp"
#include "stylo/metrics.hpp"
#include "stylo/pipelines.hpp"
#include "stylo/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ExtractOptions {
  std::string input;
  std::string output;
  std::string log_path;
  std::string tagger = "builtin";  // builtin | pretagged
  int min_words = stylo::biber::kDefaultMinWords;
  int threads = 1;
  bool json_lines_hint = false;
  stylo::corpus::SchemaMapping schema;
  std::vector<std::string> filters;  // field=value[,value...]
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

stylo::corpus::FilterSpec parse_filters(const std::vector<std::string>& clauses) {
  stylo::corpus::FilterSpec spec;
  for (const auto& clause : clauses) {
    const auto eq = clause.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad --filter clause '" + clause + "', expected field=value[,value]");
    const std::string field = clause.substr(0, eq);
    std::string rest = clause.substr(eq + 1);
    auto& allowed = spec.allow[field];
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const auto end = comma == std::string::npos ? rest.size() : comma;
      if (end > pos) allowed.insert(rest.substr(pos, end - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (allowed.empty())
      throw std::runtime_error("--filter clause '" + clause + "' allows no values");
  }
  return spec;
}

int run_extract(const ExtractOptions& opt) {
  stylo::corpus::LoadReport load_report;
  auto corpus = stylo::corpus::load_corpus(opt.input, opt.schema, &load_report);
  if (!opt.filters.empty()) corpus = stylo::corpus::filter_corpus(corpus, parse_filters(opt.filters));

  const std::size_t n = corpus.records.size();
  struct DocResult {
    std::optional<stylo::table::Row> row;
    std::string note;  // rejection or tagging note
  };
  std::vector<DocResult> results(n);

  const bool pretagged = opt.tagger == "pretagged";
  auto process = [&](std::size_t i) {
    const auto& rec = corpus.records[i];
    try {
      stylo::lingcore::TaggedDocument doc;
      if (pretagged) {
        auto parsed = stylo::lingcore::parse_pretagged(rec.text);
        doc = std::move(parsed.doc);
        if (parsed.unknown_upos > 0)
          results[i].note = "doc '" + rec.id + "': " + std::to_string(parsed.unknown_upos) +
                            " tokens with unmapped UPOS";
      } else {
        doc = stylo::lingcore::analyze(rec.text);
      }
      const auto fv = stylo::biber::extract_features(doc, opt.min_words);
      stylo::table::Row row;
      row.id = rec.id;
      row.source = rec.source;
      row.genre = rec.genre;
      row.decoding = rec.decoding;
      row.repetition_penalty = rec.repetition_penalty;
      row.token_count = fv.word_count;
      row.features = fv.values;
      results[i].row = std::move(row);
    } catch (const std::exception& e) {
      results[i].note = "doc '" + rec.id + "' rejected: " + e.what();
    }
  };

  const int workers = std::max(1, opt.threads);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) process(i);
      });
    for (auto& t : pool) t.join();
  }

  stylo::table::FeatureTable table;
  std::string log;
  for (const auto& w : load_report.warnings) log += "load: " + w + "\n";
  long rejected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].row) table.rows.push_back(std::move(*results[i].row));
    else ++rejected;
    if (!results[i].note.empty()) log += results[i].note + "\n";
  }

  stylo::table::write_feature_table(table, opt.output);
  const std::string log_path = opt.log_path.empty() ? opt.output + ".log" : opt.log_path;
  write_text_file(log_path, log);
  std::cerr << "extracted " << table.rows.size() << " documents, rejected " << rejected
            << " (log: " << log_path << ")\n";
  return 0;
}

struct AnalyzeOptions {
  std::string input;
  std::string pipeline;
  std::string out_dir = ".";
  std::string genre;  // decoding pipeline
  double p = 0.4;
  bool center_only = false;
  int threads = 1;
  std::vector<std::string> figures;  // empty means all
  stylo::pipelines::ClassificationConfig cls;
};

void print_summary(const json& report) {
  const auto kind = report.at("kind").get<std::string>();
  const auto& res = report.at("results");
  std::cout << "pipeline: " << kind << "  rows: " << report.at("inputs").at("rows")
            << "  digest: " << report.at("inputs").at("digest").get<std::string>() << "\n";
  if (kind == "classification") {
    std::cout << "auc base=" << res.at("base").at("auc").get<double>()
              << " downsampled=" << res.at("downsampled").at("auc").get<double>()
              << "  f1(human) base=" << res.at("base").at("f1_human").get<double>()
              << " downsampled=" << res.at("downsampled").at("f1_human").get<double>() << "\n";
    std::cout << "top features:";
    int shown = 0;
    for (const auto& e : res.at("importance")) {
      std::cout << " " << e.at("feature").get<std::string>();
      if (++shown == 5) break;
    }
    std::cout << "\n";
  } else if (kind == "overuse") {
    std::cout << "overused:";
    for (const auto& f : res.at("top_overused")) std::cout << " " << f.get<std::string>();
    std::cout << "\nunderused:";
    for (const auto& f : res.at("top_underused")) std::cout << " " << f.get<std::string>();
    std::cout << "\n";
  } else if (kind == "genre-source-pca") {
    std::cout << "matrix " << res.at("matrix_shape")[0] << "x" << res.at("matrix_shape")[1]
              << "  explained " << res.at("explained_ratio")[0].get<double>() << ", "
              << res.at("explained_ratio")[1].get<double>() << "\n";
  } else if (kind == "clustering-consensus") {
    std::cout << "consensus clades:\n";
    for (const auto& c : res.at("consensus").at("clades")) {
      std::cout << "  {";
      bool first = true;
      for (const auto& m : c.at("members")) {
        if (!first) std::cout << ", ";
        std::cout << m.get<std::string>();
        first = false;
      }
      std::cout << "} support=" << c.at("support").get<double>() << "\n";
    }
  } else if (kind == "decoding-pca") {
    std::cout << res.at("points").size() << " configurations, explained "
              << res.at("explained_ratio")[0].get<double>() << ", "
              << res.at("explained_ratio")[1].get<double>() << "\n";
  }
}

int run_analyze(const AnalyzeOptions& opt) {
  const auto table = stylo::table::read_feature_table(opt.input);

  json report;
  if (opt.pipeline == "classify") report = stylo::pipelines::run_classification(table, opt.cls);
  else if (opt.pipeline == "overuse") report = stylo::pipelines::run_overuse(table);
  else if (opt.pipeline == "genre-pca") report = stylo::pipelines::run_genre_source_pca(table);
  else if (opt.pipeline == "cluster")
    report = stylo::pipelines::run_clustering_consensus(table, opt.p, opt.center_only);
  else if (opt.pipeline == "decoding") {
    if (opt.genre.empty()) throw std::runtime_error("pipeline 'decoding' needs --genre");
    report = stylo::pipelines::run_decoding_pca(table, opt.genre);
  } else {
    std::cerr << "unknown pipeline '" << opt.pipeline
              << "' (expected classify|overuse|genre-pca|cluster|decoding)\n";
    return 2;
  }

  fs::create_directories(opt.out_dir);
  write_text_file((fs::path(opt.out_dir) / "report.json").string(), report.dump(2) + "\n");

  json run_config = {{"command", "analyze"},
                     {"input", opt.input},
                     {"pipeline", opt.pipeline},
                     {"out_dir", opt.out_dir},
                     {"config", report.at("config")}};
  write_text_file((fs::path(opt.out_dir) / "run_config.json").string(), run_config.dump(2) + "\n");

  if (opt.figures.empty()) {
    for (const auto& [name, svg] : stylo::pipelines::render_all_figures(report))
      write_text_file((fs::path(opt.out_dir) / (name + ".svg")).string(), svg);
  } else {
    for (const auto& kind : opt.figures) {
      std::string name = kind;
      std::replace(name.begin(), name.end(), ':', '_');
      write_text_file((fs::path(opt.out_dir) / (name + ".svg")).string(),
                      stylo::pipelines::render_figure(report, kind));
    }
  }

  print_summary(report);
  return 0;
}

int run_catalog(bool as_json) {
  if (as_json) {
    std::cout << stylo::biber::catalog_json().dump(2) << "\n";
    return 0;
  }
  for (const auto& spec : stylo::biber::feature_catalog())
    std::printf("%s  %-28s %-13s %s\n", spec.id.c_str(), spec.name.c_str(),
                std::string(stylo::biber::kind_name(spec.kind)).c_str(), spec.description.c_str());
  return 0;
}

int run_score(const std::string& model_path, const std::string& input,
              const std::string& output) {
  std::ifstream in{model_path};
  if (!in) throw std::runtime_error("cannot open model: " + model_path);
  json mj;
  in >> mj;
  const auto model = stylo::forest::forest_from_json(mj);

  const auto table = stylo::table::read_feature_table(input);
  const auto scores = stylo::forest::predict_proba(model, table.matrix());

  std::string csv = "id,source,score\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    csv += table.rows[i].id + "," + table.rows[i].source + "," +
           stylo::svg::format_number(scores[i]) + "\n";
  write_text_file(output, csv);

  // If sources are present we can report held-out metrics directly.
  bool has_human = false, has_machine = false;
  std::vector<int> labels;
  for (const auto& r : table.rows) {
    const int y = r.source == "human" ? 0 : 1;
    (y ? has_machine : has_human) = true;
    labels.push_back(y);
  }
  if (has_human && has_machine) {
    const auto m = stylo::stats::evaluate_metrics(scores, labels);
    std::cout << "auc=" << m.auc << " f1(human)=" << m.f1_negative
              << " f1(machine)=" << m.f1_positive << "\n";
  } else {
    std::cout << "scored " << scores.size() << " rows\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus stylometry workbench: Biber feature extraction and analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from an INI/TOML file; flags win");

  ExtractOptions ext;
  auto* extract = app.add_subcommand("extract", "Extract a feature table from a corpus");
  extract->add_option("input", ext.input, "Corpus file (.csv or .jsonl)")->required();
  extract->add_option("-o,--output", ext.output, "Feature table CSV to write")->required();
  extract->add_option("--log", ext.log_path, "Extraction log path (default <output>.log)");
  extract->add_option("--tagger", ext.tagger, "builtin | pretagged (text holds CoNLL-U)")
      ->check(CLI::IsMember({"builtin", "pretagged"}));
  extract->add_option("--min-words", ext.min_words, "Reject shorter documents");
  extract->add_option("--threads", ext.threads, "Worker threads (results independent of N)");
  extract->add_option("--filter", ext.filters, "Keep rows matching field=value[,value]; repeatable");
  extract->add_option("--col-id", ext.schema.id, "Column holding the document id");
  extract->add_option("--col-source", ext.schema.source, "Column holding the source/model");
  extract->add_option("--col-genre", ext.schema.genre, "Column holding the genre/domain");
  extract->add_option("--col-decoding", ext.schema.decoding, "Column holding the decoding strategy");
  extract->add_option("--col-penalty", ext.schema.repetition_penalty,
                      "Column holding the repetition penalty flag");
  extract->add_option("--col-attack", ext.schema.attack, "Column holding the attack label");
  extract->add_option("--col-title", ext.schema.title, "Column holding the title");
  extract->add_option("--col-text", ext.schema.text, "Column holding the text");

  AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "Run an analysis pipeline on a feature table");
  analyze->add_option("input", ana.input, "Feature table CSV")->required();
  analyze->add_option("-p,--pipeline", ana.pipeline,
                      "classify | overuse | genre-pca | cluster | decoding")
      ->required();
  analyze->add_option("--out-dir", ana.out_dir, "Directory for report and figures");
  analyze->add_option("--figure", ana.figures, "Figure kind to render; repeatable (default: all)");
  analyze->add_option("--genre", ana.genre, "Genre for the decoding pipeline");
  analyze->add_option("--consensus-p", ana.p, "Consensus clade threshold");
  analyze->add_flag("--center-only", ana.center_only, "Center without scaling before clustering");
  analyze->add_option("--seed", ana.cls.seed, "Classifier seed");
  analyze->add_option("--trees", ana.cls.n_trees, "Number of trees");
  analyze->add_option("--ratio", ana.cls.downsample_ratio, "Majority:minority downsample ratio");
  analyze->add_flag("--sweep-ratio", ana.cls.sweep_ratio, "Tune the ratio on validation F1");
  analyze->add_option("--importance-repeats", ana.cls.importance_repeats,
                      "Shuffles per feature for permutation importance");
  analyze->add_option("--shap-sample", ana.cls.shap_sample, "Test rows to explain with SHAP");
  analyze->add_option("--shap-background", ana.cls.shap_background, "SHAP background rows");
  analyze->add_option("--top-k", ana.cls.top_k, "Entries kept in ranked lists");
  analyze->add_option("--threads", ana.threads, "Worker threads (results independent of N)");

  bool catalog_json_flag = false;
  auto* catalog = app.add_subcommand("catalog", "List the 67-feature catalog");
  catalog->add_flag("--json", catalog_json_flag, "Machine-readable output");

  std::string score_model, score_input, score_output;
  auto* score = app.add_subcommand("score", "Apply a serialized forest to a feature table");
  score->add_option("input", score_input, "Feature table CSV")->required();
  score->add_option("-m,--model", score_model, "Forest JSON file")->required();
  score->add_option("-o,--output", score_output, "Scores CSV to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) return run_extract(ext);
    if (*analyze) return run_analyze(ana);
    if (*catalog) return run_catalog(catalog_json_flag);
    if (*score) return run_score(score_model, score_input, score_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
