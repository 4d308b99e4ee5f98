#include "stylo/lingcore.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "stylo/wordlists.hpp"

namespace stylo::lingcore {

std::string_view pos_name(Pos p) {
  switch (p) {
    case Pos::noun: return "noun";
    case Pos::proper_noun: return "proper-noun";
    case Pos::verb: return "verb";
    case Pos::aux: return "aux";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
    case Pos::pronoun: return "pronoun";
    case Pos::determiner: return "determiner";
    case Pos::preposition: return "preposition";
    case Pos::conjunction: return "conjunction";
    case Pos::subordinator: return "subordinator";
    case Pos::wh_word: return "wh-word";
    case Pos::number: return "number";
    case Pos::particle: return "particle";
    case Pos::punctuation: return "punctuation";
    case Pos::other: return "other";
  }
  return "other";
}

int TaggedDocument::sentence_of(int i) const {
  for (std::size_t s = 0; s < sentence_bounds.size(); ++s)
    if (i >= sentence_bounds[s].first && i < sentence_bounds[s].second)
      return static_cast<int>(s);
  return -1;
}

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::string to_lower_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

bool all_punctuation(std::string_view s) {
  for (unsigned char c : s)
    if (is_word_byte(c)) return false;
  return !s.empty();
}

bool looks_numeric(std::string_view s) {
  bool digit = false;
  for (unsigned char c : s) {
    if (std::isdigit(c)) digit = true;
    else if (c != '.' && c != ',' && c != '-' && c != '%') return false;
  }
  return digit;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  // Normalize the curly apostrophe so contraction handling sees one form.
  std::string norm;
  norm.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      norm.push_back('\'');
      i += 2;
    } else {
      norm.push_back(text[i]);
    }
  }

  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };

  for (std::size_t i = 0; i < norm.size(); ++i) {
    const auto c = static_cast<unsigned char>(norm[i]);
    if (std::isspace(c)) {
      flush();
      continue;
    }
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(c));
      continue;
    }
    const bool prev_word = !cur.empty() && is_word_byte(static_cast<unsigned char>(cur.back()));
    const bool next_word =
        i + 1 < norm.size() && is_word_byte(static_cast<unsigned char>(norm[i + 1]));
    const bool next_digit = i + 1 < norm.size() && std::isdigit(static_cast<unsigned char>(norm[i + 1]));
    const bool prev_digit = !cur.empty() && std::isdigit(static_cast<unsigned char>(cur.back()));
    if ((c == '\'' || c == '-') && prev_word && next_word) {
      cur.push_back(static_cast<char>(c));  // contraction or hyphenated compound
      continue;
    }
    if ((c == '.' || c == ',') && prev_digit && next_digit) {
      cur.push_back(static_cast<char>(c));  // decimal / thousands separator
      continue;
    }
    flush();
    out.emplace_back(1, static_cast<char>(c));
  }
  flush();
  return out;
}

std::vector<std::pair<int, int>> split_sentences(const std::vector<std::string>& surfaces) {
  std::vector<std::pair<int, int>> bounds;
  const int n = static_cast<int>(surfaces.size());
  int start = 0;
  for (int i = 0; i < n; ++i) {
    const std::string& t = surfaces[static_cast<std::size_t>(i)];
    const bool terminal = t == "." || t == "!" || t == "?";
    if (!terminal) continue;
    if (t == "." && i > 0) {
      const std::string prev = to_lower_ascii(surfaces[static_cast<std::size_t>(i - 1)]);
      const bool initial = prev.size() == 1 && std::isalpha(static_cast<unsigned char>(prev[0]));
      if (abbreviations().count(prev) || initial) continue;
    }
    const bool run_continues =
        i + 1 < n && (surfaces[static_cast<std::size_t>(i + 1)] == "." ||
                      surfaces[static_cast<std::size_t>(i + 1)] == "!" ||
                      surfaces[static_cast<std::size_t>(i + 1)] == "?");
    if (run_continues) continue;
    bounds.emplace_back(start, i + 1);
    start = i + 1;
  }
  if (start < n) bounds.emplace_back(start, n);
  return bounds;
}

std::string_view contraction_suffix(std::string_view w) {
  auto ends = [&](std::string_view suf) {
    return w.size() > suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("n't")) return "n't";
  for (std::string_view suf : {"'ll", "'re", "'ve", "'m", "'d", "'s"})
    if (ends(suf)) return suf;
  return "";
}

std::string contraction_head(std::string_view w) {
  const auto suf = contraction_suffix(w);
  std::string head{w.substr(0, w.size() - suf.size())};
  if (suf == "n't") {
    if (head == "wo") return "will";
    if (head == "sha") return "shall";
    if (head == "ca") return "can";
    if (head == "ai") return "be";
  }
  return head;
}

namespace {

bool has_suffix(std::string_view w, std::string_view suf) {
  return w.size() > suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

bool noun_suffix(std::string_view w) {
  if (w.size() < 5) return false;
  for (std::string_view s : {"tion", "tions", "sion", "sions", "ment", "ments", "ness", "nesses",
                             "ity", "ities"})
    if (has_suffix(w, s)) return true;
  return false;
}

bool adjective_suffix(std::string_view w) {
  if (w.size() < 5) return false;
  for (std::string_view s : {"ous", "ful", "ive", "less", "ish"})
    if (has_suffix(w, s)) return true;
  // -able/-ible need a real stem ("table", "cable" are not adjectives)
  for (std::string_view s : {"able", "ible"})
    if (w.size() >= s.size() + 3 && has_suffix(w, s)) return true;
  return false;
}

const WordSet& number_words() {
  static const WordSet set = parse_wordlist(
      "zero one two three four five six seven eight nine ten eleven twelve "
      "twenty thirty forty fifty hundred thousand million billion");
  return set;
}

bool is_adverb_lexeme(const std::string& w) {
  return misc_adverbs().count(w) || place_adverbials().count(w) || time_adverbials().count(w) ||
         conjuncts().count(w) || downtoners().count(w) || amplifiers().count(w) ||
         discourse_particles().count(w);
}

bool is_pronoun_lexeme(const std::string& w) {
  return pronouns_first().count(w) || pronouns_second().count(w) || pronouns_third().count(w) ||
         pronouns_indefinite().count(w) || w == "it" || w == "its" || w == "itself";
}

// Previous non-adverb, non-"not" token index within lookback steps, or -1.
int prev_content(const std::vector<Token>& tokens, int i, int sentence_start, int steps) {
  int j = i - 1;
  while (j >= sentence_start && steps-- > 0) {
    const Token& t = tokens[static_cast<std::size_t>(j)];
    if (t.pos == Pos::adverb || t.lower == "not") {
      --j;
      continue;
    }
    return j;
  }
  return -1;
}

}  // namespace

TaggedDocument tag_tokens(const std::vector<std::string>& surfaces,
                          const std::vector<std::pair<int, int>>& sentence_bounds) {
  TaggedDocument doc;
  doc.sentence_bounds = sentence_bounds;
  doc.tokens.reserve(surfaces.size());

  std::vector<int> sentence_start(surfaces.size(), 0);
  for (const auto& [s, e] : sentence_bounds)
    for (int i = s; i < e; ++i) sentence_start[static_cast<std::size_t>(i)] = s;

  for (int i = 0; i < static_cast<int>(surfaces.size()); ++i) {
    Token tok;
    tok.surface = surfaces[static_cast<std::size_t>(i)];
    tok.lower = to_lower_ascii(tok.surface);
    tok.index = i;
    const std::string& w = tok.lower;
    const int sent_start = sentence_start[static_cast<std::size_t>(i)];

    auto finish = [&](Pos p, std::string fine = "") {
      tok.pos = p;
      tok.fine = std::move(fine);
      doc.tokens.push_back(tok);
    };

    if (all_punctuation(w)) {
      finish(Pos::punctuation);
      continue;
    }
    if (looks_numeric(w) || number_words().count(w)) {
      finish(Pos::number);
      continue;
    }

    const std::string head = contraction_head(w);
    const auto csuf = contraction_suffix(w);

    // Closed-class lexicon on the contraction head.
    if (be_forms().count(head) || have_forms().count(head) || do_forms().count(head)) {
      finish(Pos::aux);
      continue;
    }
    if (modals().count(head)) {
      finish(Pos::aux, "md");
      continue;
    }
    if (is_pronoun_lexeme(head)) {
      finish(Pos::pronoun);
      continue;
    }
    if (wh_words().count(head)) {
      finish(Pos::wh_word);
      continue;
    }
    if (determiners().count(head)) {
      finish(Pos::determiner);
      continue;
    }
    if (prepositions().count(w)) {
      finish(Pos::preposition);
      continue;
    }
    if (conjunctions().count(w)) {
      finish(Pos::conjunction);
      continue;
    }
    if (subordinators().count(w)) {
      finish(Pos::subordinator);
      continue;
    }
    if (is_adverb_lexeme(head)) {
      finish(Pos::adverb);
      continue;
    }
    if (!csuf.empty() && csuf != "n't") {
      // Unrecognized contraction head ("sally's"): treat as noun-ish.
      finish(i > sent_start && std::isupper(static_cast<unsigned char>(tok.surface[0]))
                 ? Pos::proper_noun
                 : Pos::noun);
      continue;
    }

    // Verb lexicons; fine tag from morphology and left context.
    auto vbd_or_vbn = [&]() -> std::string {
      const int p = prev_content(doc.tokens, i, sent_start, 3);
      if (p >= 0) {
        const Token& pt = doc.tokens[static_cast<std::size_t>(p)];
        if (pt.pos == Pos::aux && pt.fine != "md") return "vbn";
        if ((pt.pos == Pos::noun || pt.pos == Pos::proper_noun) &&
            i + 1 < static_cast<int>(surfaces.size()) &&
            prepositions().count(to_lower_ascii(surfaces[static_cast<std::size_t>(i + 1)])))
          return "vbn";  // postnominal participle ("the solution produced by ...")
      }
      return "vbd";
    };
    const bool past = irregular_past().count(w) != 0;
    const bool part = irregular_participle().count(w) != 0;
    if (past || part) {
      std::string fine;
      if (past && part) fine = vbd_or_vbn();
      else fine = part ? "vbn" : "vbd";
      finish(Pos::verb, fine);
      continue;
    }
    if (verbs_base().count(w)) {
      // An -ed form only reads as past if stripping the suffix recovers a
      // listed base ("need", "feed" keep their base reading).
      auto ed_inflection = [&] {
        if (!has_suffix(w, "ed")) return false;
        const auto& base = verbs_base();
        if (base.count(w.substr(0, w.size() - 1)) || base.count(w.substr(0, w.size() - 2)))
          return true;
        if (w.size() > 3 && base.count(w.substr(0, w.size() - 3)))  // doubled consonant
          return true;
        return has_suffix(w, "ied") && base.count(w.substr(0, w.size() - 3) + "y");
      };
      std::string fine = "vb";
      if (verbs_third().count(w)) fine = "vbz";
      else if (has_suffix(w, "ing")) fine = "vbg";
      else if (ed_inflection()) fine = vbd_or_vbn();
      finish(Pos::verb, fine);
      continue;
    }

    // Suffix heuristics.
    if (noun_suffix(w)) {
      finish(Pos::noun);
      continue;
    }
    if (has_suffix(w, "ly") && w.size() > 3) {
      finish(Pos::adverb);
      continue;
    }
    if (has_suffix(w, "ing") && w.size() > 4) {
      const Pos prev = i > 0 ? doc.tokens[static_cast<std::size_t>(i - 1)].pos : Pos::other;
      if (prev == Pos::determiner || prev == Pos::preposition || prev == Pos::adjective ||
          prev == Pos::number)
        finish(Pos::noun);
      else
        finish(Pos::verb, "vbg");
      continue;
    }
    if (has_suffix(w, "ed") && w.size() > 3) {
      finish(Pos::verb, vbd_or_vbn());
      continue;
    }
    if (adjective_suffix(w) || adjectives_common().count(w)) {
      finish(Pos::adjective);
      continue;
    }

    if (i > sent_start && std::isupper(static_cast<unsigned char>(tok.surface[0]))) {
      finish(Pos::proper_noun);
      continue;
    }
    finish(Pos::noun);
  }

  doc.word_count = 0;
  for (const auto& t : doc.tokens)
    if (t.pos != Pos::punctuation) ++doc.word_count;
  return doc;
}

namespace {

Pos map_upos(std::string_view upos, bool& known) {
  known = true;
  if (upos == "ADJ") return Pos::adjective;
  if (upos == "ADP") return Pos::preposition;
  if (upos == "ADV") return Pos::adverb;
  if (upos == "AUX") return Pos::aux;
  if (upos == "CCONJ" || upos == "CONJ") return Pos::conjunction;
  if (upos == "DET") return Pos::determiner;
  if (upos == "NOUN") return Pos::noun;
  if (upos == "NUM") return Pos::number;
  if (upos == "PART") return Pos::particle;
  if (upos == "PRON") return Pos::pronoun;
  if (upos == "PROPN") return Pos::proper_noun;
  if (upos == "PUNCT") return Pos::punctuation;
  if (upos == "SCONJ") return Pos::subordinator;
  if (upos == "VERB") return Pos::verb;
  if (upos == "INTJ" || upos == "SYM" || upos == "X") return Pos::other;
  known = false;
  return Pos::other;
}

std::string map_xpos(std::string_view xpos) {
  if (xpos == "VBD") return "vbd";
  if (xpos == "VBN") return "vbn";
  if (xpos == "VBG") return "vbg";
  if (xpos == "VBZ") return "vbz";
  if (xpos == "VBP" || xpos == "VB") return "vb";
  if (xpos == "MD") return "md";
  return "";
}

}  // namespace

ConlluResult parse_pretagged(std::string_view conllu_text) {
  ConlluResult result;
  std::istringstream in{std::string(conllu_text)};
  std::string line;
  int line_no = 0;
  int sent_start = 0;
  int index = 0;

  auto close_sentence = [&] {
    if (index > sent_start) {
      result.doc.sentence_bounds.emplace_back(sent_start, index);
      sent_start = index;
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      close_sentence();
      continue;
    }
    if (line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      cols.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (cols.size() != 10)
      throw std::runtime_error("conllu parse error at line " + std::to_string(line_no) +
                               ": expected 10 tab-separated columns, got " +
                               std::to_string(cols.size()));
    // Skip multiword-token ranges and empty nodes.
    if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos) continue;

    Token tok;
    tok.surface = cols[1];
    tok.lower = to_lower_ascii(cols[1]);
    tok.index = index++;
    bool known = false;
    tok.pos = map_upos(cols[3], known);
    if (!known) ++result.unknown_upos;
    if (wh_words().count(tok.lower)) tok.pos = Pos::wh_word;
    tok.fine = map_xpos(cols[4]);
    result.doc.tokens.push_back(std::move(tok));
  }
  close_sentence();

  result.doc.word_count = 0;
  for (const auto& t : result.doc.tokens)
    if (t.pos != Pos::punctuation) ++result.doc.word_count;
  return result;
}

}  // namespace stylo::lingcore
