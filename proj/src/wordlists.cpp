#include "stylo/wordlists.hpp"

#include <sstream>

namespace stylo::lingcore {

WordSet parse_wordlist(std::string_view text) {
  WordSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words{line};
    std::string w;
    while (words >> w) out.insert(w);
  }
  return out;
}

namespace {

WordSet merged(std::initializer_list<const WordSet*> sets) {
  WordSet out;
  for (const auto* s : sets) out.insert(s->begin(), s->end());
  return out;
}

// Regular inflections of a base verb. Consonant doubling is not modeled;
// doubled forms that matter are listed explicitly.
void add_inflections(WordSet& out, const std::string& base) {
  out.insert(base);
  const auto n = base.size();
  auto ends = [&](std::string_view suf) {
    return n >= suf.size() && base.compare(n - suf.size(), suf.size(), suf) == 0;
  };
  const bool y_after_consonant =
      ends("y") && n >= 2 && std::string("aeiou").find(base[n - 2]) == std::string::npos;
  // third person singular
  if (y_after_consonant)
    out.insert(base.substr(0, n - 1) + "ies");
  else if (ends("s") || ends("sh") || ends("ch") || ends("x") || ends("z") || ends("o"))
    out.insert(base + "es");
  else
    out.insert(base + "s");
  // past / participle
  if (ends("e"))
    out.insert(base + "d");
  else if (y_after_consonant)
    out.insert(base.substr(0, n - 1) + "ied");
  else
    out.insert(base + "ed");
  // gerund
  if (ends("e") && !ends("ee"))
    out.insert(base.substr(0, n - 1) + "ing");
  else
    out.insert(base + "ing");
}

WordSet inflected(std::string_view bases, std::string_view irregulars = "") {
  WordSet out;
  for (const auto& b : parse_wordlist(bases)) add_inflections(out, b);
  for (const auto& w : parse_wordlist(irregulars)) out.insert(w);
  return out;
}

}  // namespace

#define STYLO_WORDLIST(fn, text)                        \
  const WordSet& fn() {                                 \
    static const WordSet set = parse_wordlist(text);    \
    return set;                                         \
  }

STYLO_WORDLIST(abbreviations, R"(
# titles
dr mr mrs ms prof rev gen sen rep st jr sr
# common latin / commercial
etc vs eg ie cf al inc ltd co corp dept est approx
fig no vol pp ed eds
# months and days
jan feb mar apr jun jul aug sep sept oct nov dec
mon tue tues wed thu thurs fri sat sun
)")

STYLO_WORDLIST(pronouns_first, R"(
i me we us my our mine ours myself ourselves
)")

STYLO_WORDLIST(pronouns_second, R"(
you your yours yourself yourselves
)")

STYLO_WORDLIST(pronouns_third, R"(
he she they him her them his their hers theirs himself herself themselves
)")

STYLO_WORDLIST(pronouns_indefinite, R"(
anybody anyone anything everybody everyone everything
nobody none nothing somebody someone something
)")

STYLO_WORDLIST(determiners, R"(
the a an this that these those
each every some any no all both either neither
much many more most few little several such another other
)")

STYLO_WORDLIST(prepositions, R"(
about above across after against along among around at before behind below
beneath beside besides between beyond by despite down during except for from
in inside into near of off on onto out outside over past through throughout
till to toward towards under underneath until up upon with within without
)")

STYLO_WORDLIST(conjunctions, R"(
and or but nor
)")

STYLO_WORDLIST(subordinators, R"(
because although though if unless since while whilst whereas whereby
)")

STYLO_WORDLIST(wh_words, R"(
who whom whose which what when where why how whoever whatever whichever
)")

STYLO_WORDLIST(be_forms, R"(
be am is are was were been being
)")

STYLO_WORDLIST(have_forms, R"(
have has had having
)")

STYLO_WORDLIST(do_forms, R"(
do does did
)")

STYLO_WORDLIST(modals, R"(
can could may might must shall should will would ought
)")

STYLO_WORDLIST(misc_adverbs, R"(
very too so then here there never always often sometimes usually again still
also already quite rather ever away back together alone twice maybe perhaps
well anyway anyhow anyways just really not
yet even once twice however moreover indeed
)")

STYLO_WORDLIST(adjectives_common, R"(
good bad big small old new great high low long short young strong weak hard
soft hot cold warm dark fast slow rich poor full empty clean dirty easy
difficult important quick happy sad angry large tiny deep shallow wide narrow
early late fine red blue green black white nice wrong right free sure real
disgusting fried
)")

STYLO_WORDLIST(place_adverbials, R"(
aboard abroad ahead alongside ashore astern
downhill downstairs downstream east west north south
hereabouts indoors inland inshore locally nearby nowhere
outdoors overboard overland overseas underfoot underground uphill
upstairs upstream
)")

STYLO_WORDLIST(time_adverbials, R"(
afterwards earlier eventually formerly immediately initially instantly
lately later momentarily nowadays originally presently previously recently
shortly simultaneously soon subsequently today tomorrow tonight yesterday
)")

STYLO_WORDLIST(conjuncts, R"(
alternatively altogether consequently conversely furthermore hence however
instead likewise moreover namely nevertheless nonetheless notwithstanding
otherwise similarly therefore thus
)")

STYLO_WORDLIST(downtoners, R"(
almost barely hardly merely mildly nearly only partially partly practically
scarcely slightly somewhat
)")

STYLO_WORDLIST(amplifiers, R"(
absolutely altogether completely enormously entirely extremely fully greatly
highly intensely perfectly strongly thoroughly totally utterly
)")

STYLO_WORDLIST(discourse_particles, R"(
well now anyway anyhow anyways
)")

const WordSet& public_verbs() {
  static const WordSet set = inflected(R"(
acknowledge admit agree assert claim complain declare deny explain hint
insist mention proclaim promise protest remark reply report say suggest
swear write
)",
                                       R"(
said swore sworn wrote written
)");
  return set;
}

const WordSet& private_verbs() {
  static const WordSet set = inflected(R"(
anticipate assume believe conclude decide demonstrate determine discover
doubt estimate fear feel find forget guess hear hope imagine imply indicate
infer know learn mean notice prove realize recognize remember reveal see
show suppose think understand
)",
                                       R"(
felt found forgot forgotten heard knew known meant proven saw seen shown
thought understood
)");
  return set;
}

const WordSet& suasive_verbs() {
  static const WordSet set = inflected(R"(
arrange ask beg command decide demand grant insist instruct ordain pledge
pronounce propose recommend request stipulate suggest urge
)");
  return set;
}

const WordSet& seem_verbs() {
  static const WordSet set = inflected("seem\nappear\n");
  return set;
}

STYLO_WORDLIST(irregular_past, R"(
went got made took came gave said told kept let began brought wrote sat
stood lost paid met led spoke read grew won bought fell ate drank slept
threw caught taught bit saw knew felt found heard meant thought understood
left ran held built sent spent chose drew broke wore rose flew swam sang
rang drove rode spoke stole froze woke
)")

STYLO_WORDLIST(irregular_participle, R"(
gone been done seen taken given known made found told kept begun brought
written stood lost paid met led spoken read grown won bought fallen eaten
drunk slept thrown caught taught bitten said shown proven sworn felt heard meant thought
understood left run held built sent spent got gotten come become chosen
drawn broken worn risen flown swum sung rung driven ridden stolen frozen
woken
)")

const WordSet& verbs_base() {
  static const WordSet set = [] {
    static const char* kBases = R"(
go get make take come want use tell work call try ask need feel leave put
keep let begin help talk turn start show hear play run move like live
believe hold bring happen write provide sit stand lose pay meet include
continue set learn change lead watch follow stop create speak allow add
spend grow open walk win offer remember love consider buy wait serve die
send expect build stay fall cut reach kill remain eat drink sleep laugh cry
smile jump climb push pull carry throw catch teach visit produce cause bite
chase rain snow matter exist occur
)";
    WordSet bases = parse_wordlist(kBases);
    // merge detector verb classes so "insists", "claimed" etc. tag as verbs
    for (const auto* extra : {&public_verbs(), &private_verbs(), &suasive_verbs(), &seem_verbs()})
      bases.insert(extra->begin(), extra->end());
    WordSet out;
    for (const auto& b : parse_wordlist(kBases)) add_inflections(out, b);
    out.insert(bases.begin(), bases.end());
    // common doubled forms the regular rule misses
    for (const char* w : {"stopped", "stopping", "planned", "planning", "getting", "putting",
                          "sitting", "running", "beginning", "swimming", "cutting", "letting",
                          "dropped", "dropping", "grabbed", "grabbing"})
      out.insert(w);
    return out;
  }();
  return set;
}

const WordSet& verbs_third() {
  static const WordSet set = [] {
    WordSet out;
    for (const auto& w : verbs_base()) {
      const auto n = w.size();
      if (n > 2 && w[n - 1] == 's' && w[n - 2] != 's') out.insert(w);
    }
    return out;
  }();
  return set;
}

#undef STYLO_WORDLIST

}  // namespace stylo::lingcore
