#include "stylo/biber.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "stylo/wordlists.hpp"

namespace stylo::biber {

using lingcore::Pos;
using lingcore::TaggedDocument;
using lingcore::Token;
using lingcore::WordSet;

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::rate_per_1000: return "rate-per-1000";
    case Kind::ratio: return "ratio";
    case Kind::mean_length: return "mean-length";
  }
  return "rate-per-1000";
}

namespace {

struct SpecDef {
  const char* name;
  Kind kind;
  const char* description;
};

// Detector inventory in f_01..f_67 order. Rules are documented next to each
// detector below.
constexpr SpecDef kSpecs[kFeatureCount] = {
    {"f_01_past_tense", Kind::rate_per_1000, "Past tense verbs"},
    {"f_02_perfect_aspect", Kind::rate_per_1000, "Perfect aspect (have + past participle)"},
    {"f_03_present_tense", Kind::rate_per_1000, "Present tense verbs"},
    {"f_04_place_adverbials", Kind::rate_per_1000, "Place adverbials"},
    {"f_05_time_adverbials", Kind::rate_per_1000, "Time adverbials"},
    {"f_06_first_person_pronouns", Kind::rate_per_1000, "First person pronouns"},
    {"f_07_second_person_pronouns", Kind::rate_per_1000, "Second person pronouns"},
    {"f_08_third_person_pronouns", Kind::rate_per_1000, "Third person pronouns"},
    {"f_09_pronoun_it", Kind::rate_per_1000, "Pronoun it"},
    {"f_10_demonstrative_pronoun", Kind::rate_per_1000, "Demonstrative pronouns"},
    {"f_11_indefinite_pronouns", Kind::rate_per_1000, "Indefinite pronouns"},
    {"f_12_proverb_do", Kind::rate_per_1000, "Pro-verb do"},
    {"f_13_wh_question", Kind::rate_per_1000, "Direct wh-questions"},
    {"f_14_nominalizations", Kind::rate_per_1000,
     "Nominalizations (-tion, -ment, -ness, -ity nouns)"},
    {"f_15_gerunds", Kind::rate_per_1000, "Gerunds (nominal -ing forms)"},
    {"f_16_other_nouns", Kind::rate_per_1000, "Total other nouns"},
    {"f_17_agentless_passives", Kind::rate_per_1000, "Agentless passives"},
    {"f_18_by_passives", Kind::rate_per_1000, "By-passives"},
    {"f_19_be_main_verb", Kind::rate_per_1000, "Be as main verb"},
    {"f_20_existential_there", Kind::rate_per_1000, "Existential there"},
    {"f_21_that_verb_comp", Kind::rate_per_1000, "That complements to verbs"},
    {"f_22_that_adj_comp", Kind::rate_per_1000, "That complements to adjectives"},
    {"f_23_wh_clause", Kind::rate_per_1000, "Wh-clauses"},
    {"f_24_infinitives", Kind::rate_per_1000, "Infinitives"},
    {"f_25_present_participle", Kind::rate_per_1000, "Present participial clauses"},
    {"f_26_past_participle", Kind::rate_per_1000, "Past participial clauses"},
    {"f_27_past_participle_whiz", Kind::rate_per_1000,
     "Past participial postnominal (whiz deletion) clauses"},
    {"f_28_present_participle_whiz", Kind::rate_per_1000,
     "Present participial postnominal (whiz deletion) clauses"},
    {"f_29_that_subj", Kind::rate_per_1000, "That relative clauses on subject position"},
    {"f_30_that_obj", Kind::rate_per_1000, "That relative clauses on object position"},
    {"f_31_wh_subj", Kind::rate_per_1000, "Wh relative clauses on subject position"},
    {"f_32_wh_obj", Kind::rate_per_1000, "Wh relative clauses on object position"},
    {"f_33_pied_piping", Kind::rate_per_1000, "Pied-piping relative clauses"},
    {"f_34_sentence_relatives", Kind::rate_per_1000, "Sentence relatives"},
    {"f_35_because", Kind::rate_per_1000, "Causative subordinator because"},
    {"f_36_though", Kind::rate_per_1000, "Concessive subordinators though, although"},
    {"f_37_if", Kind::rate_per_1000, "Conditional subordinators if, unless"},
    {"f_38_other_adv_sub", Kind::rate_per_1000, "Other adverbial subordinators"},
    {"f_39_prepositions", Kind::rate_per_1000, "Total prepositional phrases"},
    {"f_40_adj_attr", Kind::rate_per_1000, "Attributive adjectives"},
    {"f_41_adj_pred", Kind::rate_per_1000, "Predicative adjectives"},
    {"f_42_adverbs", Kind::rate_per_1000, "Total other adverbs"},
    {"f_43_type_token", Kind::ratio, "Type-token ratio over the first 400 words"},
    {"f_44_mean_word_length", Kind::mean_length, "Mean word length in characters"},
    {"f_45_conjuncts", Kind::rate_per_1000, "Conjuncts"},
    {"f_46_downtoners", Kind::rate_per_1000, "Downtoners"},
    {"f_47_hedges", Kind::rate_per_1000, "Hedges"},
    {"f_48_amplifiers", Kind::rate_per_1000, "Amplifiers"},
    {"f_49_emphatics", Kind::rate_per_1000, "Emphatics"},
    {"f_50_discourse_particles", Kind::rate_per_1000,
     "Discourse particles in sentence-initial position"},
    {"f_51_demonstratives", Kind::rate_per_1000, "Demonstrative determiners"},
    {"f_52_modal_possibility", Kind::rate_per_1000, "Possibility modals"},
    {"f_53_modal_necessity", Kind::rate_per_1000, "Necessity modals"},
    {"f_54_modal_predictive", Kind::rate_per_1000, "Predictive modals"},
    {"f_55_verb_public", Kind::rate_per_1000, "Public verbs"},
    {"f_56_verb_private", Kind::rate_per_1000, "Private verbs"},
    {"f_57_verb_suasive", Kind::rate_per_1000, "Suasive verbs"},
    {"f_58_verb_seem", Kind::rate_per_1000, "Seem and appear"},
    {"f_59_contractions", Kind::rate_per_1000, "Contractions"},
    {"f_60_that_deletion", Kind::rate_per_1000, "Subordinator-that deletion"},
    {"f_61_stranded_preposition", Kind::rate_per_1000, "Stranded prepositions"},
    {"f_62_split_infinitive", Kind::rate_per_1000, "Split infinitives"},
    {"f_63_split_auxiliary", Kind::rate_per_1000, "Split auxiliaries"},
    {"f_64_phrasal_coordination", Kind::rate_per_1000, "Phrasal coordination"},
    {"f_65_clausal_coordination", Kind::rate_per_1000, "Non-phrasal (clausal) coordination"},
    {"f_66_neg_synthetic", Kind::rate_per_1000, "Synthetic negation (no, neither, nor)"},
    {"f_67_neg_analytic", Kind::rate_per_1000, "Analytic negation (not)"},
};

const WordSet& demo_words() {
  static const WordSet set = lingcore::parse_wordlist("this that these those");
  return set;
}

const WordSet& modal_possibility() {
  static const WordSet set = lingcore::parse_wordlist("can could may might");
  return set;
}

const WordSet& modal_necessity() {
  static const WordSet set = lingcore::parse_wordlist("ought should must");
  return set;
}

const WordSet& modal_predictive() {
  static const WordSet set = lingcore::parse_wordlist("will would shall");
  return set;
}

const WordSet& other_subordinators() {
  static const WordSet set = lingcore::parse_wordlist("since while whilst whereas whereby");
  return set;
}

bool nominalization_suffix(std::string_view w) {
  auto ends = [&](std::string_view suf) {
    return w.size() >= suf.size() + 3 && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
  };
  for (std::string_view s :
       {"tion", "tions", "ment", "ments", "ness", "nesses", "ity", "ities"})
    if (ends(s)) return true;
  return false;
}

bool gerund_form(std::string_view w) {
  auto ends = [&](std::string_view suf) {
    return w.size() > suf.size() + 2 && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
  };
  return ends("ing") || ends("ings");
}

// Detector context over one document. Everything is precomputed once so the
// 67 passes stay cheap.
struct Ctx {
  const TaggedDocument& doc;
  std::vector<int> sent_begin;  // per token
  std::vector<int> sent_end;

  explicit Ctx(const TaggedDocument& d) : doc(d) {
    sent_begin.assign(doc.tokens.size(), 0);
    sent_end.assign(doc.tokens.size(), static_cast<int>(doc.tokens.size()));
    for (const auto& [s, e] : doc.sentence_bounds)
      for (int i = s; i < e; ++i) {
        sent_begin[static_cast<std::size_t>(i)] = s;
        sent_end[static_cast<std::size_t>(i)] = e;
      }
  }

  int n() const { return static_cast<int>(doc.tokens.size()); }
  const Token& tok(int i) const { return doc.tokens[static_cast<std::size_t>(i)]; }

  bool is_be_aux(int i) const {
    return i >= 0 && i < n() && tok(i).pos == Pos::aux &&
           lingcore::be_forms().count(lingcore::contraction_head(tok(i).lower)) > 0;
  }

  // Next index in the same sentence, skipping up to max_skip adverbs / "not".
  int next_skipping_adverbs(int i, int max_skip = 2) const {
    int j = i + 1;
    while (j < sent_end[static_cast<std::size_t>(i)] && max_skip-- > 0 &&
           (tok(j).pos == Pos::adverb || tok(j).lower == "not"))
      ++j;
    return j < sent_end[static_cast<std::size_t>(i)] ? j : -1;
  }

  int next_in_sentence(int i) const {
    return i + 1 < sent_end[static_cast<std::size_t>(i)] ? i + 1 : -1;
  }

  int prev_in_sentence(int i) const {
    return i - 1 >= sent_begin[static_cast<std::size_t>(i)] ? i - 1 : -1;
  }

  bool is_sentence_initial_word(int i) const {
    for (int j = sent_begin[static_cast<std::size_t>(i)]; j < i; ++j)
      if (tok(j).pos != Pos::punctuation) return false;
    return tok(i).pos != Pos::punctuation;
  }

  bool sentence_ends_with(int i, std::string_view mark) const {
    const int e = sent_end[static_cast<std::size_t>(i)];
    return e > 0 && tok(e - 1).surface == mark;
  }

  bool prev_is_noun(int i) const {
    const int p = prev_in_sentence(i);
    return p >= 0 && (tok(p).pos == Pos::noun || tok(p).pos == Pos::proper_noun);
  }
};

bool is_nominal(const Token& t) {
  return t.pos == Pos::noun || t.pos == Pos::proper_noun || t.pos == Pos::adjective ||
         t.pos == Pos::number;
}

bool is_speech_verb(const std::string& w) {
  return lingcore::public_verbs().count(w) || lingcore::private_verbs().count(w) ||
         lingcore::suasive_verbs().count(w);
}

// Word class for phrasal coordination: both conjoined heads must share one.
int coord_class(const Token& t) {
  switch (t.pos) {
    case Pos::noun:
    case Pos::proper_noun: return 1;
    case Pos::adjective: return 2;
    case Pos::verb: return 3;
    case Pos::adverb: return 4;
    default: return 0;
  }
}

long count_rate_feature(const Ctx& c, int f) {
  long count = 0;
  const int n = c.n();
  for (int i = 0; i < n; ++i) {
    const Token& t = c.tok(i);
    const std::string& w = t.lower;
    const std::string head = lingcore::contraction_head(w);
    const auto csuf = lingcore::contraction_suffix(w);
    bool hit = false;

    switch (f) {
      case 0:  // past tense: VBD
        hit = t.pos == Pos::verb && t.fine == "vbd";
        break;
      case 1: {  // perfect aspect: have-aux (+ adverbs) + VBN
        if (t.pos == Pos::aux && lingcore::have_forms().count(head)) {
          const int j = c.next_skipping_adverbs(i);
          hit = j >= 0 && c.tok(j).pos == Pos::verb && c.tok(j).fine == "vbn";
        }
        break;
      }
      case 2:  // present tense: VB/VBZ plus present be/have/do
        hit = (t.pos == Pos::verb && (t.fine == "vb" || t.fine == "vbz")) ||
              (t.pos == Pos::aux &&
               (w == "am" || w == "is" || w == "are" || w == "have" || w == "has" ||
                w == "do" || w == "does"));
        break;
      case 3: hit = lingcore::place_adverbials().count(w) > 0; break;
      case 4: hit = lingcore::time_adverbials().count(w) > 0; break;
      case 5: hit = lingcore::pronouns_first().count(head) > 0; break;
      case 6: hit = lingcore::pronouns_second().count(head) > 0; break;
      case 7: hit = lingcore::pronouns_third().count(head) > 0; break;
      case 8: hit = head == "it" || head == "its" || head == "itself"; break;
      case 9: {  // demonstrative pronoun: demo word in pronominal use
        if (demo_words().count(head) && !c.prev_is_noun(i)) {
          if (csuf == "'s") {
            hit = true;
          } else {
            const int j = c.next_in_sentence(i);
            hit = j < 0 || c.tok(j).pos == Pos::verb || c.tok(j).pos == Pos::aux ||
                  c.tok(j).pos == Pos::punctuation;
          }
        }
        break;
      }
      case 10: hit = lingcore::pronouns_indefinite().count(w) > 0; break;
      case 11: {  // pro-verb do: do-form with no governed verb
        if (t.pos == Pos::aux && lingcore::do_forms().count(head)) {
          const int j = c.next_skipping_adverbs(i);
          const bool governs_verb = j >= 0 && c.tok(j).pos == Pos::verb;
          // question inversion: do + subject + verb is auxiliary do
          bool inversion = false;
          if (j >= 0 && (c.tok(j).pos == Pos::pronoun || c.tok(j).pos == Pos::noun ||
                         c.tok(j).pos == Pos::proper_noun || c.tok(j).pos == Pos::determiner)) {
            const int k = c.next_in_sentence(j);
            inversion = k >= 0 && (c.tok(k).pos == Pos::verb || c.tok(k).pos == Pos::noun);
          }
          hit = !governs_verb && !inversion;
        }
        break;
      }
      case 12:  // direct wh-question
        hit = t.pos == Pos::wh_word && c.is_sentence_initial_word(i) &&
              c.sentence_ends_with(i, "?");
        break;
      case 13:
        hit = (t.pos == Pos::noun || t.pos == Pos::proper_noun) && nominalization_suffix(w);
        break;
      case 14: hit = t.pos == Pos::noun && gerund_form(w); break;
      case 15:  // other nouns: nouns not counted as nominalizations/gerunds
        hit = (t.pos == Pos::noun || t.pos == Pos::proper_noun) && !nominalization_suffix(w) &&
              !(t.pos == Pos::noun && gerund_form(w));
        break;
      case 16: {  // agentless passive: be (+ adverbs) + VBN, no "by"
        if (c.is_be_aux(i)) {
          const int j = c.next_skipping_adverbs(i);
          if (j >= 0 && c.tok(j).pos == Pos::verb && c.tok(j).fine == "vbn") {
            const int k = c.next_in_sentence(j);
            hit = !(k >= 0 && c.tok(k).lower == "by");
          }
        }
        break;
      }
      case 17: {  // by-passive
        if (c.is_be_aux(i)) {
          const int j = c.next_skipping_adverbs(i);
          if (j >= 0 && c.tok(j).pos == Pos::verb && c.tok(j).fine == "vbn") {
            const int k = c.next_in_sentence(j);
            hit = k >= 0 && c.tok(k).lower == "by";
          }
        }
        break;
      }
      case 18: {  // be as main verb: be not followed by a verb form
        if (c.is_be_aux(i)) {
          const int j = c.next_skipping_adverbs(i);
          hit = j >= 0 && c.tok(j).pos != Pos::verb && c.tok(j).pos != Pos::aux &&
                c.tok(j).pos != Pos::punctuation;
        }
        break;
      }
      case 19: {  // existential there
        if (head == "there") {
          if (csuf == "'s") {
            hit = true;
          } else {
            const int j = c.next_in_sentence(i);
            hit = j >= 0 && c.is_be_aux(j);
          }
        }
        break;
      }
      case 20: {  // that verb complement: speech/mental verb + that
        if (w == "that") {
          const int p = c.prev_in_sentence(i);
          hit = p >= 0 && c.tok(p).pos == Pos::verb && is_speech_verb(c.tok(p).lower);
        }
        break;
      }
      case 21: {  // that adjective complement
        if (w == "that") {
          const int p = c.prev_in_sentence(i);
          hit = p >= 0 && c.tok(p).pos == Pos::adjective;
        }
        break;
      }
      case 22: {  // wh-clause: speech/mental verb + wh (not which)
        if (t.pos == Pos::wh_word && w != "which") {
          const int p = c.prev_in_sentence(i);
          hit = p >= 0 && c.tok(p).pos == Pos::verb && is_speech_verb(c.tok(p).lower);
        }
        break;
      }
      case 23: {  // infinitive: to (+ adverbs) + base verb
        if (w == "to") {
          const int j = c.next_skipping_adverbs(i);
          hit = j >= 0 && c.tok(j).pos == Pos::verb && c.tok(j).fine == "vb";
        }
        break;
      }
      case 24: {  // present participial clause: clause-initial VBG
        if (t.pos == Pos::verb && t.fine == "vbg") {
          const int p = c.prev_in_sentence(i);
          hit = p < 0 || c.tok(p).pos == Pos::punctuation;
        }
        break;
      }
      case 25: {  // past participial clause: clause-initial VBN
        if (t.pos == Pos::verb && t.fine == "vbn") {
          const int p = c.prev_in_sentence(i);
          hit = p < 0 || c.tok(p).pos == Pos::punctuation;
        }
        break;
      }
      case 26:  // past participial whiz: noun + VBN
        hit = t.pos == Pos::verb && t.fine == "vbn" && c.prev_is_noun(i);
        break;
      case 27:  // present participial whiz: noun + VBG
        hit = t.pos == Pos::verb && t.fine == "vbg" && c.prev_is_noun(i);
        break;
      case 28: {  // that relative, subject gap: noun + that + verb
        if (w == "that" && c.prev_is_noun(i)) {
          const int j = c.next_skipping_adverbs(i);
          hit = j >= 0 && (c.tok(j).pos == Pos::verb || c.tok(j).pos == Pos::aux);
        }
        break;
      }
      case 29: {  // that relative, object gap: noun + that + new subject
        if (w == "that" && c.prev_is_noun(i)) {
          const int j = c.next_in_sentence(i);
          hit = j >= 0 &&
                (c.tok(j).pos == Pos::pronoun || c.tok(j).pos == Pos::determiner ||
                 c.tok(j).pos == Pos::noun || c.tok(j).pos == Pos::proper_noun ||
                 c.tok(j).pos == Pos::number);
        }
        break;
      }
      case 30: {  // wh relative, subject gap: noun + who/which + verb
        if ((w == "who" || w == "which") && c.prev_is_noun(i)) {
          const int j = c.next_skipping_adverbs(i);
          hit = j >= 0 && (c.tok(j).pos == Pos::verb || c.tok(j).pos == Pos::aux);
        }
        break;
      }
      case 31: {  // wh relative, object gap: noun + who/whom/which + new subject
        if ((w == "who" || w == "whom" || w == "which") && c.prev_is_noun(i)) {
          const int j = c.next_in_sentence(i);
          hit = j >= 0 &&
                (c.tok(j).pos == Pos::pronoun || c.tok(j).pos == Pos::determiner ||
                 c.tok(j).pos == Pos::noun || c.tok(j).pos == Pos::proper_noun);
        }
        break;
      }
      case 32: {  // pied-piping: preposition + which/whom
        if (w == "which" || w == "whom") {
          const int p = c.prev_in_sentence(i);
          hit = p >= 0 && c.tok(p).pos == Pos::preposition;
        }
        break;
      }
      case 33: {  // sentence relative: comma + which
        if (w == "which") {
          const int p = c.prev_in_sentence(i);
          hit = p >= 0 && c.tok(p).surface == ",";
        }
        break;
      }
      case 34: {  // because (excluding "because of")
        if (w == "because") {
          const int j = c.next_in_sentence(i);
          hit = !(j >= 0 && c.tok(j).lower == "of");
        }
        break;
      }
      case 35:
        hit = t.pos == Pos::subordinator && (w == "though" || w == "although");
        break;
      case 36: hit = t.pos == Pos::subordinator && (w == "if" || w == "unless"); break;
      case 37: hit = t.pos == Pos::subordinator && other_subordinators().count(w) > 0; break;
      case 38: hit = t.pos == Pos::preposition; break;
      case 39: {  // attributive adjective
        if (t.pos == Pos::adjective) {
          const int j = c.next_in_sentence(i);
          hit = j >= 0 &&
                (c.tok(j).pos == Pos::noun || c.tok(j).pos == Pos::proper_noun ||
                 c.tok(j).pos == Pos::adjective);
        }
        break;
      }
      case 40: {  // predicative adjective: be (+ adverbs) + adj, no following noun
        if (t.pos == Pos::adjective) {
          int p = c.prev_in_sentence(i);
          int skips = 2;
          while (p >= 0 && skips-- > 0 &&
                 (c.tok(p).pos == Pos::adverb || c.tok(p).lower == "not"))
            p = c.prev_in_sentence(p);
          if (p >= 0 && c.is_be_aux(p)) {
            const int j = c.next_in_sentence(i);
            hit = !(j >= 0 && (c.tok(j).pos == Pos::noun || c.tok(j).pos == Pos::proper_noun));
          }
        }
        break;
      }
      case 41: {  // other adverbs
        if (t.pos == Pos::adverb && w != "not" && w != "n't" && w != "maybe" && w != "just" &&
            w != "really" && !lingcore::place_adverbials().count(w) &&
            !lingcore::time_adverbials().count(w) && !lingcore::conjuncts().count(w) &&
            !lingcore::downtoners().count(w) && !lingcore::amplifiers().count(w)) {
          const bool particle =
              lingcore::discourse_particles().count(w) && c.is_sentence_initial_word(i);
          hit = !particle;
        }
        break;
      }
      case 44: hit = lingcore::conjuncts().count(w) > 0; break;
      case 45: hit = lingcore::downtoners().count(w) > 0; break;
      case 46: {  // hedges: maybe, kind of, sort of, at about, something like, more or less
        if (w == "maybe") {
          hit = true;
        } else {
          const int j = c.next_in_sentence(i);
          const std::string next = j >= 0 ? c.tok(j).lower : "";
          if ((w == "kind" || w == "sort") && next == "of") hit = true;
          else if (w == "at" && next == "about") hit = true;
          else if (w == "something" && next == "like") hit = true;
          else if (w == "more" && next == "or") {
            const int k = j >= 0 ? c.next_in_sentence(j) : -1;
            hit = k >= 0 && c.tok(k).lower == "less";
          }
        }
        break;
      }
      case 47: hit = lingcore::amplifiers().count(w) > 0; break;
      case 48: {  // emphatics: just/really, a lot, for sure, such a, so+adj, do+verb
        const int j = c.next_in_sentence(i);
        const std::string next = j >= 0 ? c.tok(j).lower : "";
        if (w == "just" || w == "really") hit = true;
        else if (w == "a" && next == "lot") hit = true;
        else if (w == "for" && next == "sure") hit = true;
        else if (w == "such" && (next == "a" || next == "an")) hit = true;
        else if (w == "so" && j >= 0 && c.tok(j).pos == Pos::adjective) hit = true;
        else if (t.pos == Pos::aux && lingcore::do_forms().count(head) && j >= 0 &&
                 c.tok(j).pos == Pos::verb && c.tok(j).fine == "vb")
          hit = true;
        break;
      }
      case 49:
        hit = lingcore::discourse_particles().count(w) > 0 && c.is_sentence_initial_word(i);
        break;
      case 50: {  // demonstrative determiner
        if (demo_words().count(w) && t.pos == Pos::determiner) {
          const int j = c.next_in_sentence(i);
          hit = j >= 0 && is_nominal(c.tok(j));
        }
        break;
      }
      case 51: hit = modal_possibility().count(head) > 0; break;
      case 52: hit = modal_necessity().count(head) > 0; break;
      case 53: hit = modal_predictive().count(head) > 0 || csuf == "'ll"; break;
      case 54: hit = t.pos == Pos::verb && lingcore::public_verbs().count(w) > 0; break;
      case 55: hit = t.pos == Pos::verb && lingcore::private_verbs().count(w) > 0; break;
      case 56: hit = t.pos == Pos::verb && lingcore::suasive_verbs().count(w) > 0; break;
      case 57: hit = t.pos == Pos::verb && lingcore::seem_verbs().count(w) > 0; break;
      case 58: {  // contractions; possessive 's on (proper) nouns excluded
        if (!csuf.empty()) {
          if (csuf != "'s") {
            hit = true;
          } else {
            hit = head == "it" || head == "there" || demo_words().count(head) > 0 ||
                  lingcore::wh_words().count(head) > 0 ||
                  lingcore::pronouns_indefinite().count(head) > 0 ||
                  lingcore::pronouns_first().count(head) > 0 ||
                  lingcore::pronouns_second().count(head) > 0 ||
                  lingcore::pronouns_third().count(head) > 0 || head == "let" ||
                  head == "here";
          }
        }
        break;
      }
      case 59: {  // that deletion: speech/mental verb + pronoun + verb
        if (t.pos == Pos::verb && is_speech_verb(w)) {
          const int j = c.next_in_sentence(i);
          if (j >= 0 && c.tok(j).pos == Pos::pronoun) {
            const int k = c.next_skipping_adverbs(j);
            hit = k >= 0 && (c.tok(k).pos == Pos::verb || c.tok(k).pos == Pos::aux);
          }
        }
        break;
      }
      case 60: {  // stranded preposition
        if (t.pos == Pos::preposition) {
          const int j = c.next_in_sentence(i);
          hit = j < 0 || c.tok(j).pos == Pos::punctuation;
        }
        break;
      }
      case 61: {  // split infinitive: to + adverb(s) + base verb
        if (w == "to") {
          const int j = c.next_in_sentence(i);
          if (j >= 0 && c.tok(j).pos == Pos::adverb) {
            const int k = c.next_skipping_adverbs(i);
            hit = k >= 0 && k > j && c.tok(k).pos == Pos::verb && c.tok(k).fine == "vb";
          }
        }
        break;
      }
      case 62: {  // split auxiliary: aux + adverb(s) + verb
        if (t.pos == Pos::aux) {
          const int j = c.next_in_sentence(i);
          if (j >= 0 && (c.tok(j).pos == Pos::adverb || c.tok(j).lower == "not")) {
            const int k = c.next_skipping_adverbs(i);
            hit = k >= 0 && k > j && c.tok(k).pos == Pos::verb;
          }
        }
        break;
      }
      case 63: {  // phrasal coordination: X and/or X over the same word class
        if (w == "and" || w == "or") {
          const int p = c.prev_in_sentence(i);
          const int j = c.next_in_sentence(i);
          if (p >= 0 && j >= 0) {
            const int cls = coord_class(c.tok(p));
            hit = cls != 0 && cls == coord_class(c.tok(j));
          }
        }
        break;
      }
      case 64: {  // clausal coordination: clause-linking and
        if (w == "and") {
          const int p = c.prev_in_sentence(i);
          const int j = c.next_in_sentence(i);
          const bool after_punct = p >= 0 && c.tok(p).pos == Pos::punctuation;
          const bool before_subject =
              j >= 0 && (c.tok(j).pos == Pos::pronoun || c.tok(j).lower == "there" ||
                         c.tok(j).lower == "so" || c.tok(j).lower == "then");
          hit = after_punct || before_subject;
        }
        break;
      }
      case 65: {  // synthetic negation: no/neither/nor + nominal
        if (w == "no" || w == "neither" || w == "nor") {
          const int j = c.next_in_sentence(i);
          hit = j >= 0 && is_nominal(c.tok(j));
        }
        break;
      }
      case 66: hit = w == "not" || csuf == "n't"; break;
      default: break;
    }
    if (hit) ++count;
  }
  return count;
}

double type_token_ratio(const TaggedDocument& doc) {
  std::unordered_set<std::string> types;
  int total = 0;
  for (const auto& t : doc.tokens) {
    if (t.pos == Pos::punctuation) continue;
    types.insert(t.lower);
    if (++total == kTypeTokenWindow) break;
  }
  return total == 0 ? 0.0 : static_cast<double>(types.size()) / total;
}

double mean_word_length(const TaggedDocument& doc) {
  long chars = 0;
  long words = 0;
  for (const auto& t : doc.tokens) {
    if (t.pos == Pos::punctuation) continue;
    chars += static_cast<long>(t.surface.size());
    ++words;
  }
  return words == 0 ? 0.0 : static_cast<double>(chars) / static_cast<double>(words);
}

}  // namespace

const std::vector<FeatureSpec>& feature_catalog() {
  static const std::vector<FeatureSpec> catalog = [] {
    std::vector<FeatureSpec> out;
    out.reserve(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) {
      FeatureSpec s;
      s.index = i;
      char buf[8];
      std::snprintf(buf, sizeof buf, "f_%02d", i + 1);
      s.id = buf;
      s.name = kSpecs[i].name;
      s.kind = kSpecs[i].kind;
      s.description = kSpecs[i].description;
      out.push_back(std::move(s));
    }
    return out;
  }();
  return catalog;
}

int feature_index(std::string_view id_or_name) {
  for (const auto& s : feature_catalog())
    if (id_or_name == s.id || id_or_name == s.name) return s.index;
  return -1;
}

double count_feature(const TaggedDocument& doc, int index) {
  if (index < 0 || index >= kFeatureCount)
    throw std::out_of_range("unknown feature index " + std::to_string(index));
  if (index == 42) return type_token_ratio(doc);
  if (index == 43) return mean_word_length(doc);
  const Ctx c{doc};
  return static_cast<double>(count_rate_feature(c, index));
}

FeatureVector extract_features(const TaggedDocument& doc, int min_words) {
  if (doc.word_count < min_words)
    throw std::invalid_argument("document below minimum length (" +
                                std::to_string(doc.word_count) + " < " +
                                std::to_string(min_words) + " words)");
  FeatureVector out;
  out.word_count = doc.word_count;
  const Ctx c{doc};
  const double scale = 1000.0 / doc.word_count;
  for (int i = 0; i < kFeatureCount; ++i) {
    if (i == 42) out.values[static_cast<std::size_t>(i)] = type_token_ratio(doc);
    else if (i == 43) out.values[static_cast<std::size_t>(i)] = mean_word_length(doc);
    else
      out.values[static_cast<std::size_t>(i)] =
          static_cast<double>(count_rate_feature(c, i)) * scale;
  }
  return out;
}

nlohmann::json catalog_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : feature_catalog())
    arr.push_back({{"id", s.id},
                   {"name", s.name},
                   {"kind", std::string(kind_name(s.kind))},
                   {"description", s.description}});
  return arr;
}

}  // namespace stylo::biber
