#include <doctest.h>

#include <sstream>

#include "stancekit/pipeline.hpp"
#include "../support/cli_runner.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;

namespace {

std::vector<corpus::Discussion> toy(const char* name) {
  auto ds = corpus::load_discussions(testkit::toy_dir() / name);
  corpus::induce_gold_labels(ds);
  return ds;
}

const lexicon::Lexicon& toy_lexicon() {
  static const lexicon::Lexicon lex = [] {
    const std::vector<std::filesystem::path> sf{testkit::toy_dir() / "seeds.tsv"};
    return lexicon::build_lexicon(toy("aawd.jsonl"), lexicon::load_seeds(sf)).lexicon;
  }();
  return lex;
}

pipeline::TaggerOptions quick() {
  pipeline::TaggerOptions o;
  o.train.epochs = 4;
  return o;
}

std::vector<std::vector<dispute::TaggedUnit>> gold_tagged(std::span<const corpus::Discussion> ds) {
  std::vector<std::vector<dispute::TaggedUnit>> out;
  for (const auto& d : ds) {
    pipeline::TurnLabels tl;
    for (const auto& t : d.turns) {
      tl.emplace_back();
      for (const auto& u : t.utterances) tl.back().push_back(u.gold_or_neutral());
    }
    out.push_back(pipeline::tagged_units(d, tl));
  }
  return out;
}

}  // namespace

TEST_CASE("leakage probe: binning statistics come from training folds only") {
  const auto ds = toy("aawd.jsonl");
  const auto opts = quick();
  const auto folds = pipeline::crossval_tagger(ds, toy_lexicon(), opts, 4, 3);
  const auto split = corpus::split_folds(ds.size(), 4, 3);
  REQUIRE(folds.size() == 4);
  features::Featurizer leaky(opts.features, toy_lexicon());
  leaky.fit(ds);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto train = pipeline::select<corpus::Discussion>(ds, pipeline::complement(split, f));
    features::Featurizer honest(opts.features, toy_lexicon());
    honest.fit(train);
    CHECK(folds[f].binning.to_json() == honest.binning().to_json());
    // The deliberately leaked statistics differ, so the probe can tell them apart.
    CHECK(folds[f].binning.to_json() != leaky.binning().to_json());
    CHECK(folds[f].train_size + folds[f].test_size == ds.size());
  }
}

TEST_CASE("cross-validation is deterministic and summaries average the folds") {
  const auto ds = toy("aawd.jsonl");
  const auto a = pipeline::crossval_tagger(ds, toy_lexicon(), quick(), 2, 9);
  const auto b = pipeline::crossval_tagger(ds, toy_lexicon(), quick(), 2, 9);
  const auto sa = pipeline::summarize(a), sb = pipeline::summarize(b);
  CHECK(sa == sb);
  const double hand = (a[0].scores.strict[Stance::Agree].f1 + a[1].scores.strict[Stance::Agree].f1) / 2;
  CHECK(sa["strict"]["classes"]["agree"]["f1"]["mean"].get<double>() == doctest::Approx(hand));
}

TEST_CASE("tagger round trip and prediction files") {
  const auto train = toy("aawd.jsonl"), test = toy("iac.jsonl");
  const auto tagger = pipeline::Tagger::train(train, toy_lexicon(), quick());
  const auto path = testkit::scratch_dir("pipeline_tagger") / "tagger.json";
  tagger.save(path);
  const auto back = pipeline::Tagger::load(path);
  const auto tags = tagger.tag(test);
  CHECK(back.tag(test) == tags);

  std::stringstream jsonl;
  pipeline::write_predictions(test, tags, jsonl);
  CHECK(pipeline::read_predictions(jsonl, test) == pipeline::flatten_stances(tags));
  std::istringstream missing("");
  CHECK_THROWS_AS(pipeline::read_predictions(missing, test), corpus::ParseError);
}

TEST_CASE("isotonic and unconstrained training differ when constraints bind") {
  const auto train = toy("aawd.jsonl");
  auto iso = quick();
  auto plain = quick();
  plain.isotonic = false;
  const auto a = pipeline::Tagger::train(train, toy_lexicon(), iso);
  const auto b = pipeline::Tagger::train(train, toy_lexicon(), plain);
  CHECK(a.model().constrained_count() > 0);
  CHECK(b.model().constrained_count() == 0);
  CHECK(icrf::satisfies_constraints(a.model()));
  CHECK_FALSE(std::equal(a.model().params().begin(), a.model().params().end(), b.model().params().begin()));
}

TEST_CASE("downsampling only removes all-neutral training turns") {
  const auto train = toy("aawd.jsonl");
  auto o = quick();
  o.downsample = true;
  const auto t = pipeline::Tagger::train(train, toy_lexicon(), o);
  CHECK(t.model().config["tagger"]["downsample"] == true);
}

TEST_CASE("dispute detector round trip") {
  const auto ds = toy("disputes.jsonl");
  const auto units = gold_tagged(ds);
  const auto det = pipeline::DisputeDetector::train(ds, units, {}, {});
  const auto path = testkit::scratch_dir("pipeline_dispute") / "dispute.json";
  det.save(path);
  const auto back = pipeline::DisputeDetector::load(path);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto p = det.predict(ds[i], units[i]), q = back.predict(ds[i], units[i]);
    CHECK(p.is_dispute == q.is_dispute);
    CHECK(p.probability == q.probability);
  }
  CHECK_THROWS_AS(pipeline::dispute_gold(toy("aawd.jsonl")), std::invalid_argument);
}

TEST_CASE("dispute cross-validation on separable flows") {
  const auto ds = testkit::flow_corpus(30, 12);
  const auto folds = pipeline::crossval_dispute(ds, gold_tagged(ds), {}, {}, 5, 2);
  for (const auto& f : folds) CHECK(f.scores.accuracy == 1.0);
}
