#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stylo/lingcore.hpp"

namespace stylo::biber {

inline constexpr int kFeatureCount = 67;
inline constexpr int kDefaultMinWords = 5;
// Evaluation window for the type-token ratio.
inline constexpr int kTypeTokenWindow = 400;

enum class Kind { rate_per_1000, ratio, mean_length };

std::string_view kind_name(Kind k);

struct FeatureSpec {
  int index = 0;        // 0-based position, id = f_{index+1:02d}
  std::string id;       // "f_01".."f_67"
  std::string name;     // "f_29_that_subj"
  Kind kind = Kind::rate_per_1000;
  std::string description;
};

// The 67 detectors in id order; stable across runs.
const std::vector<FeatureSpec>& feature_catalog();

// Index for "f_29" or "f_29_that_subj"; -1 if unknown.
int feature_index(std::string_view id_or_name);

// Raw count (integral, returned as double) for rate features; the raw measure
// for f_43 (type-token ratio) and f_44 (mean word length). Throws on an
// unknown index.
double count_feature(const lingcore::TaggedDocument& doc, int index);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  int word_count = 0;
};

// Rate features are scaled to occurrences per 1000 words; f_43/f_44 are kept
// as raw measures. Throws if the document is shorter than min_words.
FeatureVector extract_features(const lingcore::TaggedDocument& doc,
                               int min_words = kDefaultMinWords);

// Machine-readable catalog (id, name, kind, description) for report labeling.
nlohmann::json catalog_json();

}  // namespace stylo::biber
