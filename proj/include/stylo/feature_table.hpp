#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/biber.hpp"

namespace stylo::table {

struct Row {
  std::string id;
  std::string source;
  std::string genre;
  std::string decoding;
  std::string repetition_penalty;
  long token_count = 0;
  std::array<double, biber::kFeatureCount> features{};

  bool operator==(const Row&) const = default;
};

struct FeatureTable {
  std::vector<Row> rows;

  bool operator==(const FeatureTable&) const = default;

  // Feature values as a rows x 67 matrix.
  Eigen::MatrixXd matrix() const;
};

// "id,source,genre,decoding,repetition_penalty,token_count,f_01,...,f_67".
const std::string& csv_header();

// Values are rendered with shortest round-trip decimal digits (<= 17
// significant), so read(write(t)) == t exactly. Throws on non-finite values.
std::string to_csv(const FeatureTable& table);
void write_feature_table(const FeatureTable& table, const std::string& path);

// Strict header check: a missing or extra feature column is a format error
// naming the column.
FeatureTable from_csv(std::string_view text);
FeatureTable read_feature_table(const std::string& path);

enum class Weighting { token_count, uniform };

struct AggregatedMatrix {
  std::vector<std::string> key_fields;
  std::vector<std::vector<std::string>> row_keys;  // one tuple per row, sorted
  Eigen::MatrixXd values;                          // row_keys.size() x 67
  std::string weights_used;
};

// Weighted per-group feature means. Key fields come from {source, genre,
// decoding, repetition_penalty}; rows are sorted by key tuple. A group whose
// total weight is zero is an error naming the group.
AggregatedMatrix aggregate_by_keys(const FeatureTable& table,
                                   const std::vector<std::string>& keys,
                                   Weighting weighting = Weighting::token_count);

}  // namespace stylo::table
