#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stylo::corpus {

// Canonical enum values; anything else is preserved as "other:<raw>".
const std::vector<std::string>& known_sources();  // human + 11 models
const std::vector<std::string>& known_genres();   // 8 genres
inline constexpr const char* kNotApplicable = "not-applicable";

// Canonicalize a raw field value (RAID spellings included); unknown values
// come back as "other:<raw>".
std::string canonical_source(std::string_view raw);
std::string canonical_genre(std::string_view raw);
std::string canonical_decoding(std::string_view raw);
std::string canonical_penalty(std::string_view raw);

struct CorpusRecord {
  std::string id;
  std::string source;
  std::string genre;
  std::string decoding;            // greedy | sampling | not-applicable
  std::string repetition_penalty;  // yes | no | not-applicable
  std::string attack;              // "none" for the analysis subset
  std::string title;
  std::string text;
};

struct Corpus {
  std::vector<CorpusRecord> records;
  std::string provenance;
};

// Logical field -> physical column. Defaults follow the RAID distribution.
struct SchemaMapping {
  std::string id = "id";
  std::string source = "model";
  std::string genre = "domain";
  std::string decoding = "decoding";
  std::string repetition_penalty = "repetition_penalty";
  std::string attack = "attack";
  std::string title = "title";
  std::string text = "generation";
};

struct LoadReport {
  long rows = 0;
  // Unknown enum values and invariant violations, with row numbers. Rows are
  // kept; flagging is the caller's signal to inspect.
  std::vector<std::string> warnings;
};

// Format auto-detected by extension: .jsonl/.ndjson/.json -> JSON lines,
// anything else -> RFC-4180 CSV. Throws on missing columns (naming the
// column), malformed rows (with row number) and invalid UTF-8 (with byte
// offset).
Corpus load_corpus(const std::string& path, const SchemaMapping& schema = {},
                   LoadReport* report = nullptr);

// Same, from in-memory text.
Corpus load_corpus_text(std::string_view text, bool json_lines, const SchemaMapping& schema = {},
                        LoadReport* report = nullptr, std::string provenance = "<memory>");

// Conjunction of per-field allowed-value sets. Fields are the logical names
// (source, genre, decoding, repetition_penalty, attack).
struct FilterSpec {
  std::map<std::string, std::set<std::string>> allow;
};

// Records satisfying every clause; throws on an unknown field name.
Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec);

}  // namespace stylo::corpus
