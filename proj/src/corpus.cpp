#include "stylo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace stylo::corpus {

namespace {

std::string lower(std::string_view s) {
  std::string out{s};
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string{s.substr(a, b - a + 1)};
}

// First invalid UTF-8 byte offset, or -1 when the text is well formed.
long long first_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len;
    if (b < 0x80) len = 1;
    else if ((b & 0xE0) == 0xC0) len = 2;
    else if ((b & 0xF0) == 0xE0) len = 3;
    else if ((b & 0xF8) == 0xF0) len = 4;
    else return static_cast<long long>(i);
    if (i + len > s.size()) return static_cast<long long>(i);
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80)
        return static_cast<long long>(i + k);
    i += len;
  }
  return -1;
}

const std::unordered_map<std::string, std::string>& source_aliases() {
  static const std::unordered_map<std::string, std::string> map = {
      {"human", "human"},
      {"gpt2", "gpt2-xl"},
      {"gpt2-xl", "gpt2-xl"},
      {"gpt3", "gpt3"},
      {"gpt4", "gpt4"},
      {"chatgpt", "chatgpt"},
      {"mistral", "mistral-7b"},
      {"mistral-7b", "mistral-7b"},
      {"mistral-chat", "mistral-7b-chat"},
      {"mistral-7b-chat", "mistral-7b-chat"},
      {"mpt", "mpt-30b"},
      {"mpt-30b", "mpt-30b"},
      {"mpt-chat", "mpt-30b-chat"},
      {"mpt-30b-chat", "mpt-30b-chat"},
      {"llama-chat", "llama2-70b-chat"},
      {"llama2-70b-chat", "llama2-70b-chat"},
      {"cohere", "cohere"},
      {"cohere-chat", "cohere-chat"},
  };
  return map;
}

const std::unordered_map<std::string, std::string>& genre_aliases() {
  static const std::unordered_map<std::string, std::string> map = {
      {"abstracts", "abstracts"}, {"books", "books"},   {"news", "news"},
      {"poetry", "poetry"},       {"recipes", "recipes"}, {"reddit", "reddit"},
      {"reviews", "reviews"},     {"wiki", "wikipedia"}, {"wikipedia", "wikipedia"},
  };
  return map;
}

std::string canonical_or_other(const std::unordered_map<std::string, std::string>& aliases,
                               std::string_view raw) {
  const std::string key = lower(trim(raw));
  const auto it = aliases.find(key);
  return it != aliases.end() ? it->second : "other:" + std::string(raw);
}

}  // namespace

const std::vector<std::string>& known_sources() {
  static const std::vector<std::string> v = {
      "human",       "gpt2-xl",         "gpt3",    "gpt4",
      "chatgpt",     "mistral-7b",      "mistral-7b-chat",
      "mpt-30b",     "mpt-30b-chat",    "llama2-70b-chat",
      "cohere",      "cohere-chat"};
  return v;
}

const std::vector<std::string>& known_genres() {
  static const std::vector<std::string> v = {"abstracts", "books",   "news",    "poetry",
                                             "recipes",   "reddit",  "reviews", "wikipedia"};
  return v;
}

std::string canonical_source(std::string_view raw) {
  return canonical_or_other(source_aliases(), raw);
}

std::string canonical_genre(std::string_view raw) { return canonical_or_other(genre_aliases(), raw); }

std::string canonical_decoding(std::string_view raw) {
  const std::string key = lower(trim(raw));
  if (key.empty() || key == "na" || key == "n/a" || key == "none" || key == kNotApplicable)
    return kNotApplicable;
  if (key == "greedy") return "greedy";
  if (key == "sampling" || key == "random" || key == "random_sampling") return "sampling";
  return "other:" + std::string(raw);
}

std::string canonical_penalty(std::string_view raw) {
  const std::string key = lower(trim(raw));
  if (key.empty() || key == "na" || key == "n/a" || key == "none" || key == kNotApplicable)
    return kNotApplicable;
  if (key == "yes" || key == "true" || key == "1") return "yes";
  if (key == "no" || key == "false" || key == "0") return "no";
  return "other:" + std::string(raw);
}

namespace {

// RFC-4180 field split of one logical record starting at `pos`. Returns false
// at end of input.
bool next_csv_record(std::string_view text, std::size_t& pos, std::vector<std::string>& fields,
                     long row_for_errors) {
  fields.clear();
  if (pos >= text.size()) return false;
  std::string cur;
  bool quoted = false;
  bool any = false;
  while (pos < text.size()) {
    const char ch = text[pos];
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          cur.push_back('"');
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        cur.push_back(ch);
        ++pos;
      }
      continue;
    }
    if (ch == '"') {
      if (!cur.empty())
        throw std::runtime_error("malformed row " + std::to_string(row_for_errors) +
                                 ": quote inside unquoted field");
      quoted = true;
      ++pos;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      ++pos;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      break;
    } else {
      cur.push_back(ch);
      ++pos;
    }
  }
  if (quoted)
    throw std::runtime_error("malformed row " + std::to_string(row_for_errors) +
                             ": unterminated quoted field");
  if (!any) return false;
  fields.push_back(std::move(cur));
  return true;
}

struct FieldIndex {
  int id, source, genre, decoding, penalty, attack, title, text;
};

FieldIndex resolve_schema(const std::vector<std::string>& header, const SchemaMapping& schema) {
  auto find = [&](const std::string& col, bool required) {
    const auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end()) {
      if (required)
        throw std::runtime_error("schema error: missing required column '" + col + "'");
      return -1;
    }
    return static_cast<int>(it - header.begin());
  };
  FieldIndex idx{};
  idx.id = find(schema.id, true);
  idx.source = find(schema.source, true);
  idx.genre = find(schema.genre, true);
  idx.text = find(schema.text, true);
  idx.decoding = find(schema.decoding, false);
  idx.penalty = find(schema.repetition_penalty, false);
  idx.attack = find(schema.attack, false);
  idx.title = find(schema.title, false);
  return idx;
}

bool whitespace_only(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void finalize_record(CorpusRecord& rec, long row, LoadReport* report) {
  auto flag_other = [&](const std::string& value, const char* field) {
    if (report && value.rfind("other:", 0) == 0)
      report->warnings.push_back("row " + std::to_string(row) + ": unknown " + field + " '" +
                                 value.substr(6) + "' kept as " + value);
  };
  rec.source = canonical_source(rec.source);
  rec.genre = canonical_genre(rec.genre);
  rec.decoding = canonical_decoding(rec.decoding);
  rec.repetition_penalty = canonical_penalty(rec.repetition_penalty);
  if (rec.attack.empty()) rec.attack = "none";
  flag_other(rec.source, "source");
  flag_other(rec.genre, "genre");
  flag_other(rec.decoding, "decoding");
  flag_other(rec.repetition_penalty, "repetition_penalty");
  if (report) {
    if (rec.source == "human" &&
        (rec.decoding != kNotApplicable || rec.repetition_penalty != kNotApplicable))
      report->warnings.push_back("row " + std::to_string(row) +
                                 ": human record with decoding/penalty set");
    if (whitespace_only(rec.text))
      report->warnings.push_back("row " + std::to_string(row) + ": empty text");
  }
}

Corpus load_csv(std::string_view text, const SchemaMapping& schema, LoadReport* report,
                std::string provenance) {
  Corpus corpus;
  corpus.provenance = std::move(provenance);
  std::size_t pos = 0;
  std::vector<std::string> fields;
  if (!next_csv_record(text, pos, fields, 0))
    throw std::runtime_error("schema error: empty input, no header row");
  const FieldIndex idx = resolve_schema(fields, schema);
  const auto ncols = fields.size();

  long row = 0;
  while (next_csv_record(text, pos, fields, row + 1)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    if (fields.size() != ncols)
      throw std::runtime_error("malformed row " + std::to_string(row) + ": expected " +
                               std::to_string(ncols) + " fields, got " +
                               std::to_string(fields.size()));
    CorpusRecord rec;
    auto get = [&](int i) { return i >= 0 ? fields[static_cast<std::size_t>(i)] : std::string{}; };
    rec.id = get(idx.id);
    rec.source = get(idx.source);
    rec.genre = get(idx.genre);
    rec.decoding = get(idx.decoding);
    rec.repetition_penalty = get(idx.penalty);
    rec.attack = get(idx.attack);
    rec.title = get(idx.title);
    rec.text = get(idx.text);
    finalize_record(rec, row, report);
    corpus.records.push_back(std::move(rec));
  }
  if (report) report->rows = row;
  return corpus;
}

Corpus load_jsonl(std::string_view text, const SchemaMapping& schema, LoadReport* report,
                  std::string provenance) {
  Corpus corpus;
  corpus.provenance = std::move(provenance);
  std::istringstream in{std::string(text)};
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (whitespace_only(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("malformed row " + std::to_string(row) + ": " + e.what());
    }
    auto get = [&](const std::string& col, bool required) -> std::string {
      if (!j.contains(col) || j[col].is_null()) {
        if (required)
          throw std::runtime_error("schema error: missing required column '" + col +
                                   "' at row " + std::to_string(row));
        return "";
      }
      const auto& v = j[col];
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
      return v.dump();
    };
    CorpusRecord rec;
    rec.id = get(schema.id, true);
    rec.source = get(schema.source, true);
    rec.genre = get(schema.genre, true);
    rec.text = get(schema.text, true);
    rec.decoding = get(schema.decoding, false);
    rec.repetition_penalty = get(schema.repetition_penalty, false);
    rec.attack = get(schema.attack, false);
    rec.title = get(schema.title, false);
    finalize_record(rec, row, report);
    corpus.records.push_back(std::move(rec));
  }
  if (report) report->rows = row;
  return corpus;
}

}  // namespace

Corpus load_corpus_text(std::string_view text, bool json_lines, const SchemaMapping& schema,
                        LoadReport* report, std::string provenance) {
  const auto bad = first_invalid_utf8(text);
  if (bad >= 0)
    throw std::runtime_error("undecodable bytes: invalid UTF-8 at byte offset " +
                             std::to_string(bad));
  return json_lines ? load_jsonl(text, schema, report, std::move(provenance))
                    : load_csv(text, schema, report, std::move(provenance));
}

Corpus load_corpus(const std::string& path, const SchemaMapping& schema, LoadReport* report) {
  std::ifstream in{path, std::ios::binary};
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
  const bool jsonl = ext == "jsonl" || ext == "ndjson" || ext == "json";
  return load_corpus_text(buf.str(), jsonl, schema, report, path);
}

Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec) {
  static const std::set<std::string> kFields = {"source", "genre", "decoding",
                                                "repetition_penalty", "attack"};
  for (const auto& [field, _] : spec.allow)
    if (!kFields.count(field)) throw std::runtime_error("filter on unknown field '" + field + "'");

  Corpus out;
  std::string desc = "filter:";
  for (const auto& [field, values] : spec.allow) {
    desc += " " + field + "∈{";
    bool first = true;
    for (const auto& v : values) {
      if (!first) desc += ",";
      desc += v;
      first = false;
    }
    desc += "}";
  }
  if (spec.allow.empty()) desc += " (empty predicate)";
  out.provenance = corpus.provenance + " | " + desc;

  for (const auto& rec : corpus.records) {
    bool keep = true;
    for (const auto& [field, values] : spec.allow) {
      const std::string* v = nullptr;
      if (field == "source") v = &rec.source;
      else if (field == "genre") v = &rec.genre;
      else if (field == "decoding") v = &rec.decoding;
      else if (field == "repetition_penalty") v = &rec.repetition_penalty;
      else v = &rec.attack;
      if (!values.count(*v)) {
        keep = false;
        break;
      }
    }
    if (keep) out.records.push_back(rec);
  }
  return out;
}

}  // namespace stylo::corpus
