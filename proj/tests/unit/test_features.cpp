#include <doctest.h>

#include <random>

#include "stancekit/features.hpp"
#include "stancekit/text.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;
using namespace stancekit::features;

namespace {

corpus::Token tok(const std::string& form, const std::string& pos, int head, const std::string& rel) {
  corpus::Token t;
  t.form = form;
  t.lowercase = text::to_lower(form);
  t.pos = pos;
  t.head = head;
  t.deprel = rel;
  return t;
}

/// "you are wrong" with wrong as root.
corpus::Utterance parsed_you_are_wrong() {
  corpus::Utterance u;
  u.id = "u";
  u.text = "you are wrong";
  corpus::Sentence s;
  s.tokens = {tok("you", "PRP", 3, "nsubj"), tok("are", "VBP", 3, "cop"), tok("wrong", "ADJ", 0, "root")};
  u.sentences.push_back(s);
  return u;
}

lexicon::Lexicon small_lexicon() {
  lexicon::Lexicon lex;
  lex.insert({{lexicon::UnitKind::Unigram, "uni:wrong"}, -1.0, lexicon::EntryProvenance::Seed});
  lex.insert({{lexicon::UnitKind::Unigram, "uni:great"}, 0.8, lexicon::EntryProvenance::Propagated});
  return lex;
}

bool all_nonzero(const FeatureVector& v) {
  for (const auto& [k, x] : v)
    if (x == 0.0) return false;
  return true;
}

}  // namespace

TEST_CASE("lexical features") {
  const auto v = lexical_features(testkit::make_utterance("u", "I AGREE fully"));
  CHECK(v.at(std::string(kNumUpper)) == 1.0);
  CHECK(v.at(std::string(kNumWords)) == 3.0);
  CHECK(v.contains("lex:uni:agree"));
  CHECK(v.contains("lex:bi:i_agree"));
  CHECK(lexical_features(testkit::make_utterance("u", "")).empty());
  CHECK(lexical_features(testkit::make_utterance("u", "good good")).at("lex:uni:good") == 1.0);
}

TEST_CASE("syntactic features generalize relations by POS") {
  const auto v = syntactic_features(parsed_you_are_wrong());
  CHECK(v.contains("syn:nsubj(wrong,you)"));
  CHECK(v.contains("syn:nsubj(ADJ,you)"));
  CHECK(v.contains("syn:nsubj(wrong,PRP)"));
  CHECK(v.contains("syn:are/VBP"));
  CHECK(syntactic_features(testkit::make_utterance("u", "no parse here")).empty());
}

TEST_CASE("discourse features") {
  const auto cfg = FeatureConfig::defaults();
  const auto v = discourse_features(testkit::make_utterance("u", "really , grow up"), cfg);
  CHECK(v.contains("disc:init1:really"));
  CHECK(v.contains("disc:init2:really_,"));
  CHECK(v.contains("disc:init3:really_,_grow"));
  CHECK(discourse_features(testkit::make_utterance("u", "what ?!!"), cfg).contains("disc:punct:?!!"));
  FeatureConfig neg = cfg;
  neg.negators = {"not", "never"};
  CHECK(discourse_features(testkit::make_utterance("u", "not never acceptable"), neg).at(std::string(kNumNegators)) ==
        2.0);
}

TEST_CASE("conversation features") {
  auto d = testkit::make_discussion("d", {{"the article cites a weak source"}, {"the article cites a weak source"}});
  const auto idf = IdfTable::fit(std::span<const corpus::Discussion>(&d, 1));
  CHECK(resolve_target(d, 0) == nullptr);
  const auto first = conversation_features(d.turns[0].utterances[0], nullptr, idf);
  CHECK_FALSE(first.contains(std::string(kQuoteOverlap)));
  CHECK_FALSE(first.contains(std::string(kTfidfSim)));
  const auto* target = resolve_target(d, 1);
  REQUIRE(target == &d.turns[0]);
  auto u = d.turns[1].utterances[0];
  CHECK(conversation_features(u, target, idf).at(std::string(kTfidfSim)) == doctest::Approx(1.0));
  u.quotes.push_back({0, u.token_count(), 0});
  CHECK(conversation_features(u, target, idf).at(std::string(kQuoteOverlap)) == doctest::Approx(1.0));
}

TEST_CASE("sentiment features") {
  const auto lex = small_lexicon();
  auto cfg = FeatureConfig::defaults();
  cfg.connectives = {"but"};
  const auto v = sentiment_features(parsed_you_are_wrong(), lex, cfg);
  CHECK(v.contains("sent:nsubj(SENTneg,you)"));
  CHECK(sentiment_features(testkit::make_utterance("u", "but great"), lex, cfg).contains("sent:conn:but+pos"));
  CHECK(sentiment_features(testkit::make_utterance("u", "nothing here"), lex, cfg).empty());
}

TEST_CASE("underlying text units") {
  CHECK(underlying_text_unit("lex:uni:great") == "uni:great");
  CHECK(underlying_text_unit("lex:bi:good_idea") == "bi:good_idea");
  CHECK(underlying_text_unit("sent:nsubj(SENTneg,you)") == "sdep:Rel(SENTneg,you)");
  CHECK(underlying_text_unit("syn:nsubj(wrong,you)") == "dep:Rel(wrong,you)");
  CHECK_FALSE(underlying_text_unit("syn:agree/VBP").has_value());
  CHECK_FALSE(underlying_text_unit(kNumWords).has_value());
}

TEST_CASE("binning") {
  const std::array<double, 4> cuts{-1.5, -0.5, 0.5, 1.5};
  CHECK(bin_index(0.0, cuts) == 2);
  CHECK(bin_index(2.0, cuts) == 4);
  CHECK(bin_index(1.5, cuts) == 4);
  CHECK(bin_index(-1.5, cuts) == 1);
  CHECK(bin_index(-9.0, cuts) == 0);

  const std::vector<FeatureVector> raw{{{"lex:num_words", 1.0}}, {{"lex:num_words", 3.0}}, {{"lex:num_upper", 2.0}}};
  const std::vector<std::string> names{"lex:num_words", "lex:num_upper", "disc:num_negators"};
  const auto stats = BinningStats::fit(raw, names);
  CHECK(stats.moments().at("lex:num_words").mean == doctest::Approx(4.0 / 3.0));
  const auto at_mean = standardize_and_bin({{"lex:num_words", 4.0 / 3.0}}, stats, cuts);
  CHECK(at_mean.contains("lex:num_words#bin_2"));
  // Constant feature: every value lands in the middle bin.
  CHECK(standardize_and_bin({{"disc:num_negators", 7.0}}, stats, cuts).contains("disc:num_negators#bin_2"));
  CHECK(standardize_and_bin({{"lex:uni:x", 1.0}}, stats, cuts).contains("lex:uni:x"));
  FeatureConfig bad;
  bad.cuts = {0.0, 0.0, 1.0, 2.0};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("family selection and independence") {
  auto ds = corpus::load_discussions(testkit::toy_dir() / "aawd.jsonl");
  corpus::induce_gold_labels(ds);
  lexicon::Lexicon lex = small_lexicon();
  const auto idf = IdfTable::fit(ds);
  auto cfg = FeatureConfig::defaults();
  const auto& d = ds.front();
  Context ctx{&d, 1, &lex, &idf};
  const auto& u = d.turns[1].utterances[0];
  const auto all = assemble(u, ctx, cfg);
  CHECK(all_nonzero(all));
  for (auto f : kAllFamilies) {
    FeatureConfig one = cfg;
    one.families = FamilySet{}.add(f);
    const auto part = assemble(u, ctx, one);
    for (const auto& [k, x] : part) {
      CHECK(k.starts_with(family_prefix(f)));
      CHECK(all.at(k) == x);
    }
    CHECK(filter_families(all, one.families) == part);
  }
  CHECK(FamilySet::parse("lex,syn") == FamilySet{}.add(Family::Lex).add(Family::Syn));
  CHECK(FamilySet::parse("all") == FamilySet::all());
  CHECK_THROWS(FamilySet::parse("lex,bogus"));
  CHECK(cumulative_ablation().size() == 5);
  CHECK(cumulative_ablation().back() == FamilySet::all());
}

TEST_CASE("featurizer is deterministic and serializable") {
  auto ds = corpus::load_discussions(testkit::toy_dir() / "aawd.jsonl");
  corpus::induce_gold_labels(ds);
  Featurizer fz(FeatureConfig::defaults(), small_lexicon());
  fz.fit(ds);
  const auto a = fz.extract(ds);
  const auto back = Featurizer::from_json(fz.to_json());
  CHECK(back.extract(ds) == a);
  CHECK(back.to_json() == fz.to_json());
}
