#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace stylo::lingcore {

using WordSet = std::unordered_set<std::string>;

// Parse the word-list resource format: whitespace-separated lowercase
// entries, '#' starts a comment running to end of line, blank lines ignored.
WordSet parse_wordlist(std::string_view text);

// Embedded closed-class and detector lexicons. Bump WORDLIST_VERSION on any
// list change; feature counts depend on these bit-for-bit.
inline constexpr const char* WORDLIST_VERSION = "1";

const WordSet& abbreviations();

const WordSet& pronouns_first();
const WordSet& pronouns_second();
const WordSet& pronouns_third();
const WordSet& pronouns_indefinite();
const WordSet& determiners();
const WordSet& prepositions();
const WordSet& conjunctions();
const WordSet& subordinators();
const WordSet& wh_words();
const WordSet& be_forms();
const WordSet& have_forms();
const WordSet& do_forms();
const WordSet& modals();
const WordSet& misc_adverbs();
const WordSet& adjectives_common();

const WordSet& place_adverbials();
const WordSet& time_adverbials();
const WordSet& conjuncts();
const WordSet& downtoners();
const WordSet& amplifiers();
const WordSet& discourse_particles();

// All inflected forms (base, -s/-es, -ed, -ing, known irregulars).
const WordSet& public_verbs();
const WordSet& private_verbs();
const WordSet& suasive_verbs();
const WordSet& seem_verbs();

const WordSet& irregular_past();        // stand-alone past forms (went, bit, ...)
const WordSet& irregular_participle();  // participle forms (been, taken, ...)
// Inflected forms of a general verb lexicon, keyed by inflection kind.
const WordSet& verbs_base();   // base and non-3sg present forms
const WordSet& verbs_third();  // -s forms

}  // namespace stylo::lingcore
