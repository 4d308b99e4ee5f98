#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylo::lingcore {

enum class Pos {
  noun,
  proper_noun,
  verb,
  aux,
  adjective,
  adverb,
  pronoun,
  determiner,
  preposition,
  conjunction,
  subordinator,
  wh_word,
  number,
  particle,
  punctuation,
  other
};

std::string_view pos_name(Pos p);

struct Token {
  std::string surface;
  std::string lower;
  Pos pos = Pos::other;
  // Fine verb tag when known: vb, vbz, vbd, vbn, vbg, md. Empty otherwise.
  std::string fine;
  int index = 0;
};

struct TaggedDocument {
  std::vector<Token> tokens;
  std::vector<std::pair<int, int>> sentence_bounds;  // [start, end)
  int word_count = 0;                                // non-punctuation tokens

  // Sentence index containing token i; bounds partition the tokens.
  int sentence_of(int i) const;
};

// Whitespace/punctuation tokenization. Contractions ("can't", "it's") and
// intra-word hyphens ("state-of-the-art") stay single tokens; other
// punctuation marks become one token per character.
std::vector<std::string> tokenize(std::string_view text);

// Boundaries after . ! ? unless the preceding token is a known abbreviation.
// A run of terminal punctuation closes one sentence at its end.
std::vector<std::pair<int, int>> split_sentences(const std::vector<std::string>& surfaces);

// Deterministic heuristic tagger: closed-class lexicon, then suffix rules,
// then local context, defaulting to noun.
TaggedDocument tag_tokens(const std::vector<std::string>& surfaces,
                          const std::vector<std::pair<int, int>>& sentence_bounds);

// "can't" -> "n't", "he'll" -> "'ll", "" when the token has no contraction
// suffix. Operates on lowercased surfaces.
std::string_view contraction_suffix(std::string_view lower);
// Token with the contraction suffix removed; n't heads are expanded
// ("wo" -> "will", "ca" -> "can").
std::string contraction_head(std::string_view lower);

inline TaggedDocument analyze(std::string_view text) {
  auto surfaces = tokenize(text);
  auto bounds = split_sentences(surfaces);
  return tag_tokens(surfaces, bounds);
}

struct ConlluResult {
  TaggedDocument doc;
  int unknown_upos = 0;  // tokens whose UPOS fell back to "other"
};

// 10-column CoNLL-U, blank-line sentence separation, '#' comment lines.
// UPOS is mapped onto the coarse tagset; wh-surface forms keep the wh tag
// the detectors expect.
ConlluResult parse_pretagged(std::string_view conllu_text);

}  // namespace stylo::lingcore
