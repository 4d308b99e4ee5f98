#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylo/biber.hpp"
#include "stylo/rng.hpp"

using namespace stylo;
using namespace stylo::biber;

namespace {

double raw(const std::string& text, const char* id) {
  return count_feature(lingcore::analyze(text), feature_index(id));
}

}  // namespace

TEST_CASE("catalog has 67 entries with stable ids") {
  const auto& cat = feature_catalog();
  REQUIRE(cat.size() == 67);
  CHECK(cat[0].id == "f_01");
  CHECK(cat[0].name == "f_01_past_tense");
  CHECK(cat[66].id == "f_67");
  CHECK(cat[42].kind == Kind::ratio);
  CHECK(cat[43].kind == Kind::mean_length);
  for (int i = 0; i < 67; ++i) CHECK(cat[static_cast<std::size_t>(i)].index == i);
}

TEST_CASE("feature_index resolves ids and names") {
  CHECK(feature_index("f_29") == 28);
  CHECK(feature_index("f_29_that_subj") == 28);
  CHECK(feature_index("f_43_type_token") == 42);
  CHECK(feature_index("bogus") == -1);
}

TEST_CASE("count_feature rejects unknown indices") {
  auto doc = lingcore::analyze("A test sentence here.");
  CHECK_THROWS_AS(count_feature(doc, 67), std::out_of_range);
  CHECK_THROWS_AS(count_feature(doc, -1), std::out_of_range);
}

TEST_CASE("contractions counted, possessive 's excluded") {
  CHECK(raw("I can't and I won't.", "f_59") == 2);
  CHECK(raw("The dog's bone is old.", "f_59") == 0);
  CHECK(raw("It's here and there's more.", "f_59") == 2);
}

TEST_CASE("nominalization suffixes") {
  CHECK(raw("The creation of the government caused happiness.", "f_14") == 3);
  CHECK(raw("The foundation thanked the management.", "f_14") == 2);
  // too-short stems do not count
  CHECK(raw("The ration was tiny.", "f_14") == 0);
}

TEST_CASE("concessive subordinators") {
  CHECK(raw("Although it rained, we left.", "f_36") == 1);
  CHECK(raw("Though tired, he smiled, although late.", "f_36") == 2);
}

TEST_CASE("that relatives split by gap position") {
  const std::string s = "That's the dog that bit the man that I saw.";
  CHECK(raw(s, "f_29") == 1);
  CHECK(raw(s, "f_30") == 1);
}

TEST_CASE("pied piping and sentence relatives") {
  CHECK(raw("The house in which they lived was old.", "f_33") == 1);
  CHECK(raw("The letter, which was lost, pleased nobody.", "f_34") == 1);
}

TEST_CASE("passives split by agent") {
  CHECK(raw("The window was broken by the storm.", "f_18") == 1);
  CHECK(raw("The window was broken by the storm.", "f_17") == 0);
  CHECK(raw("The song was sung loudly.", "f_17") == 1);
}

TEST_CASE("because of does not count as causative subordination") {
  CHECK(raw("We left because of the storm.", "f_35") == 0);
  CHECK(raw("We left because it rained.", "f_35") == 1);
}

TEST_CASE("type token ratio over a short document") {
  auto doc = lingcore::analyze("The dog saw the dog.");
  CHECK(count_feature(doc, 42) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("type token ratio caps at the 400-word window") {
  std::string text;
  for (int i = 0; i < 450; ++i) text += "w" + std::to_string(i) + " ";
  auto doc = lingcore::analyze(text);
  CHECK(count_feature(doc, 42) == doctest::Approx(1.0));
  auto fv = extract_features(doc);
  CHECK(fv.values[42] == doctest::Approx(1.0));
}

TEST_CASE("mean word length ignores punctuation") {
  auto doc = lingcore::analyze("ab cdef.");
  CHECK(count_feature(doc, 43) == doctest::Approx(3.0));
}

TEST_CASE("extract_features applies the per-1000-word scale") {
  const std::string text = "Although it rained, we left early and we stayed calm.";
  auto doc = lingcore::analyze(text);
  auto fv = extract_features(doc);
  CHECK(fv.word_count == doc.word_count);
  for (int f = 0; f < 67; ++f) {
    if (f == 42 || f == 43) continue;
    const double expect = count_feature(doc, f) * 1000.0 / doc.word_count;
    CHECK(fv.values[static_cast<std::size_t>(f)] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("rate features are invariant under text duplication") {
  const std::string text =
      "Although it rained, we left. The creation of the government caused happiness. "
      "I can't believe that she won.";
  auto once = extract_features(lingcore::analyze(text));
  auto twice = extract_features(lingcore::analyze(text + " " + text));
  for (int f = 0; f < 67; ++f) {
    if (f == 42) continue;  // window-based ratio may differ
    CHECK(twice.values[static_cast<std::size_t>(f)] ==
          doctest::Approx(once.values[static_cast<std::size_t>(f)]).epsilon(1e-9));
  }
}

TEST_CASE("documents below the length threshold are rejected") {
  auto doc = lingcore::analyze("Too short here.");
  CHECK_THROWS_AS(extract_features(doc), std::invalid_argument);
  CHECK_NOTHROW(extract_features(doc, 3));
}

TEST_CASE("fuzzed documents: counts non-negative, rates consistent") {
  static const char* kVocab[] = {"the",  "dog",     "ran",   "quickly", "because", "it",
                                 "was",  "raining", "and",   "nobody",  "can't",   "believe",
                                 "that", "although", "which", "there",  "is",      "no",
                                 "time", "creation"};
  Rng rng(99);
  for (int iter = 0; iter < 60; ++iter) {
    std::string text;
    const int len = 6 + static_cast<int>(rng.uniform_index(60));
    for (int k = 0; k < len; ++k) {
      text += kVocab[rng.uniform_index(std::size(kVocab))];
      text += rng.uniform_index(8) == 0 ? ". " : " ";
    }
    text += ".";
    auto doc = lingcore::analyze(text);
    auto fv = extract_features(doc, 1);
    for (int f = 0; f < 67; ++f) {
      const double v = fv.values[static_cast<std::size_t>(f)];
      CHECK(v >= 0.0);
      if (f == 42 || f == 43) continue;
      const double expect = count_feature(doc, f) * 1000.0 / doc.word_count;
      CHECK(std::abs(v - expect) < 1e-9);
    }
  }
}

TEST_CASE("catalog json round trip") {
  auto j = catalog_json();
  REQUIRE(j.size() == 67);
  CHECK(j[42]["id"] == "f_43");
  CHECK(std::string(j[42]["description"]).find("ratio") != std::string::npos);
}
