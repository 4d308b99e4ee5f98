#include "stylo/feature_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stylo::table {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, long row, const std::string& col) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::runtime_error("format error at row " + std::to_string(row) + ": column '" + col +
                             "' is not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else
          quoted = false;
      } else
        cur.push_back(c);
    } else if (c == '"')
      quoted = true;
    else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else
      cur.push_back(c);
  }
  out.push_back(std::move(cur));
  return out;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

Eigen::MatrixXd FeatureTable::matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), biber::kFeatureCount);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < biber::kFeatureCount; ++c)
      m(static_cast<Eigen::Index>(r), c) = rows[r].features[static_cast<std::size_t>(c)];
  return m;
}

const std::string& csv_header() {
  static const std::string header = [] {
    std::string h = "id,source,genre,decoding,repetition_penalty,token_count";
    for (const auto& spec : biber::feature_catalog()) h += "," + spec.id;
    return h;
  }();
  return header;
}

std::string to_csv(const FeatureTable& table) {
  std::string out = csv_header() + "\n";
  for (const auto& row : table.rows) {
    out += quote_if_needed(row.id) + "," + quote_if_needed(row.source) + "," +
           quote_if_needed(row.genre) + "," + quote_if_needed(row.decoding) + "," +
           quote_if_needed(row.repetition_penalty) + "," + std::to_string(row.token_count);
    for (double v : row.features) {
      if (!std::isfinite(v))
        throw std::runtime_error("non-finite feature value in row '" + row.id + "'");
      out += ",";
      out += format_double(v);
    }
    out += "\n";
  }
  return out;
}

void write_feature_table(const FeatureTable& table, const std::string& path) {
  const std::string csv = to_csv(table);
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot write feature table: " + path);
  out << csv;
}

FeatureTable from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("format error: empty feature table");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv_line(line);
  const std::vector<std::string> meta = {"id",     "source",             "genre",
                                         "decoding", "repetition_penalty", "token_count"};
  const auto& catalog = biber::feature_catalog();
  std::vector<std::string> expected = meta;
  for (const auto& s : catalog) expected.push_back(s.id);

  for (const auto& col : expected)
    if (std::find(header.begin(), header.end(), col) == header.end())
      throw std::runtime_error("format error: missing column " + col);
  for (const auto& col : header)
    if (std::find(expected.begin(), expected.end(), col) == expected.end())
      throw std::runtime_error("format error: unexpected extra column " + col);
  if (header != expected)
    throw std::runtime_error("format error: column order differs from canonical header");

  FeatureTable table;
  long row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != expected.size())
      throw std::runtime_error("format error at row " + std::to_string(row_no) + ": expected " +
                               std::to_string(expected.size()) + " fields, got " +
                               std::to_string(fields.size()));
    Row row;
    row.id = fields[0];
    row.source = fields[1];
    row.genre = fields[2];
    row.decoding = fields[3];
    row.repetition_penalty = fields[4];
    row.token_count = static_cast<long>(parse_double(fields[5], row_no, "token_count"));
    if (row.token_count <= 0)
      throw std::runtime_error("format error at row " + std::to_string(row_no) +
                               ": token_count must be positive");
    for (int c = 0; c < biber::kFeatureCount; ++c)
      row.features[static_cast<std::size_t>(c)] =
          parse_double(fields[static_cast<std::size_t>(6 + c)], row_no, catalog[static_cast<std::size_t>(c)].id);
    table.rows.push_back(std::move(row));
  }
  return table;
}

FeatureTable read_feature_table(const std::string& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) throw std::runtime_error("cannot open feature table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv(buf.str());
}

AggregatedMatrix aggregate_by_keys(const FeatureTable& table, const std::vector<std::string>& keys,
                                   Weighting weighting) {
  if (keys.empty()) throw std::invalid_argument("aggregate_by_keys: empty key list");
  if (table.rows.empty()) throw std::invalid_argument("aggregate_by_keys: empty table");

  auto field_of = [](const Row& r, const std::string& key) -> const std::string& {
    if (key == "source") return r.source;
    if (key == "genre") return r.genre;
    if (key == "decoding") return r.decoding;
    if (key == "repetition_penalty") return r.repetition_penalty;
    throw std::invalid_argument("aggregate_by_keys: unknown key field '" + key + "'");
  };

  struct Group {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(biber::kFeatureCount);
    double weight = 0.0;
  };
  std::map<std::vector<std::string>, Group> groups;
  for (const auto& row : table.rows) {
    std::vector<std::string> tuple;
    tuple.reserve(keys.size());
    for (const auto& k : keys) tuple.push_back(field_of(row, k));
    const double w =
        weighting == Weighting::token_count ? static_cast<double>(row.token_count) : 1.0;
    auto& g = groups[tuple];
    for (int c = 0; c < biber::kFeatureCount; ++c)
      g.sum(c) += w * row.features[static_cast<std::size_t>(c)];
    g.weight += w;
  }

  AggregatedMatrix out;
  out.key_fields = keys;
  out.weights_used = weighting == Weighting::token_count ? "token-count" : "uniform";
  out.values.resize(static_cast<Eigen::Index>(groups.size()), biber::kFeatureCount);
  Eigen::Index r = 0;
  for (const auto& [tuple, g] : groups) {
    if (g.weight <= 0.0) {
      std::string name;
      for (const auto& part : tuple) name += (name.empty() ? "" : "/") + part;
      throw std::runtime_error("aggregate_by_keys: group '" + name + "' has zero total weight");
    }
    out.row_keys.push_back(tuple);
    out.values.row(r++) = (g.sum / g.weight).transpose();
  }
  return out;
}

}  // namespace stylo::table
