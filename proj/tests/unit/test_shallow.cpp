#include <doctest.h>

#include <random>

#include "stancekit/shallow.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;
using namespace stancekit::shallow;

namespace {

lexicon::Lexicon polar() {
  lexicon::Lexicon lex;
  for (const char* w : {"great", "good"}) lex.insert({{lexicon::UnitKind::Unigram, std::string("uni:") + w}, 0.9, {}});
  for (const char* w : {"wrong", "bad"}) lex.insert({{lexicon::UnitKind::Unigram, std::string("uni:") + w}, -0.9, {}});
  return lex;
}

}  // namespace

TEST_CASE("polarity baseline counts lexicon hits") {
  const auto lex = polar();
  CHECK(polarity_baseline(testkit::make_utterance("u", "great and good but wrong"), lex) == Stance::Agree);
  CHECK(polarity_baseline(testkit::make_utterance("u", "good but bad"), lex) == Stance::Neutral);
  CHECK(polarity_baseline(testkit::make_utterance("u", "nothing here"), lex) == Stance::Neutral);
  CHECK(polarity_baseline(testkit::make_utterance("u", "bad"), lex) == Stance::Disagree);
}

TEST_CASE("pronoun distances") {
  const auto lex = polar();
  const auto a = distance_features(testkit::make_utterance("u", "you are wrong"), lex);
  CHECK(a.min == 2);
  CHECK(a.max == 2);
  CHECK(a.mean == 2);
  const auto b = distance_features(testkit::make_utterance("u", "this is not so wrong"), lex);
  CHECK((b.min == 5 && b.max == 5 && b.mean == 5));
  const auto c = distance_features(testkit::make_utterance("u", "good you x bad"), lex);
  CHECK((c.min == 1 && c.max == 2 && c.mean == 1.5));
  const auto d = distance_features(testkit::make_utterance("u", "good you x x bad"), lex);
  CHECK((d.min == 1 && d.max == 3 && d.mean == 2));
  CHECK(is_second_person("your"));
  CHECK_FALSE(is_second_person("i"));
}

TEST_CASE("zero-weight and symmetric models are uniform") {
  LinearModel m({"a", "b", "c"}, {"x"});
  const auto p = logistic_predict(m, features::FeatureVector{{"x", 3.0}});
  for (double q : p.probabilities) CHECK(q == doctest::Approx(1.0 / 3));
  CHECK(p.index == 0);
}

TEST_CASE("softmax sums to one and is monotone in its own logit") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  LinearModel m({"a", "b", "c"}, {"x", "y"});
  for (auto& p : m.params()) p = u(rng);
  m.weight(1, 0) = 5.0;  // largest weight on x, so p(b) rises with x
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng), y = u(rng);
    const auto p = logistic_predict(m, features::FeatureVector{{"x", x}, {"y", y}});
    double s = 0;
    for (double q : p.probabilities) s += q;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    const auto hi = logistic_predict(m, features::FeatureVector{{"x", x + 0.5}, {"y", y}});
    CHECK(hi.probabilities[1] >= p.probabilities[1] - 1e-15);
  }
}

TEST_CASE("logistic gradient matches finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    LinearModel m({"a", "b"}, {"x0", "x1", "x2"});
    for (auto& p : m.params()) p = u(rng);
    std::vector<SparseRow> rows;
    std::vector<std::size_t> labels;
    for (int r = 0; r < 5; ++r) {
      rows.push_back({{0, u(rng)}, {2, u(rng)}});
      labels.push_back(static_cast<std::size_t>(r % 2));
    }
    std::vector<double> g, s;
    logistic_nll_and_gradient(m, rows, labels, 0.1, g);
    auto params = m.params();
    double worst = 0;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double keep = params[j];
      params[j] = keep + 1e-5;
      const double up = logistic_nll_and_gradient(m, rows, labels, 0.1, s);
      params[j] = keep - 1e-5;
      const double down = logistic_nll_and_gradient(m, rows, labels, 0.1, s);
      params[j] = keep;
      worst = std::max(worst, testkit::relative_error(g[j], (up - down) / 2e-5));
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("logistic regression separates separable data") {
  std::vector<features::FeatureVector> xs;
  std::vector<std::string> ys;
  for (int i = 0; i < 30; ++i) {
    const bool pos = i % 2 == 0;
    xs.push_back({{pos ? "p" : "n", 1.0}, {"shared", 0.5 * (i % 3)}});
    ys.push_back(pos ? "yes" : "no");
  }
  const auto r = logistic_train(xs, ys, {});
  CHECK(r.model.classes() == std::vector<std::string>{"no", "yes"});
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(logistic_predict(r.model, xs[i]).label == ys[i]);
  for (std::size_t e = 1; e < r.epoch_loss.size(); ++e) CHECK(r.epoch_loss[e] <= r.epoch_loss[e - 1] + 1e-12);

  const std::vector<std::string> one(xs.size(), "yes");
  CHECK_THROWS_AS(logistic_train(xs, one, {}), std::invalid_argument);

  const auto back = linear_model_from_json(linear_model_to_json(r.model));
  CHECK(std::equal(back.params().begin(), back.params().end(), r.model.params().begin()));
  auto j = linear_model_to_json(r.model);
  j["format_version"] = 99;
  CHECK_THROWS(linear_model_from_json(j));
}
