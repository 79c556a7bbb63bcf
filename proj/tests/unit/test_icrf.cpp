#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "stancekit/icrf.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;
using namespace stancekit::icrf;

TEST_CASE("potentials are linear in the features") {
  Model m{FeatureIndex({"a", "b"})};
  Sequence s;
  s.positions = {{{0, 2.0}}};
  CHECK(log_potentials(m, s).node[0] == LabelVector{});
  m.mu(0, label_index(SentimentLabel::PP)) = 0.5;
  m.bias(label_index(SentimentLabel::PP)) = 0.25;
  CHECK(log_potentials(m, s).node[0][4] == 1.25);
  // Features outside the index are dropped at compile time.
  const std::vector<features::FeatureVector> xs{{{"a", 2.0}, {"unseen", 5.0}}}, ys{{{"a", 2.0}}};
  CHECK(compile(m.features(), xs).positions == compile(m.features(), ys).positions);
}

TEST_CASE("forward-backward on zero weights") {
  Model m{FeatureIndex({"a"})};
  Sequence s;
  s.positions.resize(4);
  const auto fb = forward_backward(log_potentials(m, s));
  CHECK(fb.log_z == doctest::Approx(4 * std::log(5.0)).epsilon(1e-14));
  for (const auto& u : fb.unary)
    for (double p : u) CHECK(p == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(viterbi(m, s) == std::vector<SentimentLabel>(4, SentimentLabel::NN));
}

TEST_CASE("length one reduces to a softmax") {
  std::mt19937_64 rng(3);
  auto [m, s] = testkit::random_instance(rng, 1, 3);
  const auto p = log_potentials(m, s);
  const auto fb = forward_backward(p);
  double z = 0.0;
  for (double x : p.node[0]) z += std::exp(x);
  for (std::size_t l = 0; l < kNumLabels; ++l) CHECK(fb.unary[0][l] == doctest::Approx(std::exp(p.node[0][l]) / z));
}

TEST_CASE("exhaustive enumeration agrees with dynamic programming") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 5);
    auto [m, s] = testkit::random_instance(rng, n, 3, 2.0);
    const auto oracle = testkit::exhaustive(m, s);
    const auto p = log_potentials(m, s);
    const auto fb = forward_backward(p);
    CHECK(std::abs(fb.log_z - oracle.log_z) < 1e-8);
    CHECK(viterbi(p) == oracle.argmax);
    CHECK(path_score(p, s.labels) == doctest::Approx(testkit::oracle_path_score(m, s, s.labels)));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      // Pairwise marginals sum to the unary ones.
      for (std::size_t a = 0; a < kNumLabels; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < kNumLabels; ++b) row += fb.pairwise[i][a][b];
        CHECK(row == doctest::Approx(fb.unary[i][a]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("viterbi tie-break is lexicographic") {
  // O and PP tie at every position; the lower label wins.
  Model m{FeatureIndex({"a"})};
  m.bias(2) = 1.0;
  m.bias(4) = 1.0;
  Sequence s;
  s.positions.resize(3);
  CHECK(viterbi(m, s) == std::vector<SentimentLabel>(3, SentimentLabel::O));
  m.bias(2) = 0.0;
  m.bias(1) = 0.0;
  CHECK(viterbi(m, s) == std::vector<SentimentLabel>(3, SentimentLabel::PP));
}

TEST_CASE("collapse of predictions") {
  Model m{FeatureIndex({"x", "y", "z"})};
  m.mu(0, 0) = 5;
  m.mu(1, 2) = 5;
  m.mu(2, 3) = 5;
  Sequence s;
  s.positions = {{{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}};
  const auto p = predict_and_collapse(m, s);
  CHECK(p.labels == std::vector<SentimentLabel>{SentimentLabel::NN, SentimentLabel::O, SentimentLabel::P});
  CHECK(p.stances == std::vector<Stance>{Stance::Disagree, Stance::Neutral, Stance::Agree});
}

TEST_CASE("gradient: finite differences and stationarity") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    auto inst = testkit::random_instance(rng, 3, 4);
    std::vector<Sequence> batch{inst.seq};
    std::vector<double> g, scratch;
    nll_and_gradient(inst.model, batch, 0.3, g);
    auto params = inst.model.params();
    double worst = 0.0;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double keep = params[j];
      params[j] = keep + 1e-5;
      const double up = nll_and_gradient(inst.model, batch, 0.3, scratch);
      params[j] = keep - 1e-5;
      const double down = nll_and_gradient(inst.model, batch, 0.3, scratch);
      params[j] = keep;
      worst = std::max(worst, testkit::relative_error(g[j], (up - down) / 2e-5));
    }
    CHECK(worst < 1e-4);
  }
  // Empty sequence batch: the gradient is exactly l2 * theta.
  std::mt19937_64 r2(1);
  auto inst = testkit::random_instance(r2, 2, 2);
  std::vector<double> g;
  nll_and_gradient(inst.model, {}, 0.5, g);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(g[j] == 0.5 * inst.model.params()[j]);
}

TEST_CASE("parallel gradient and viterbi equal the reference") {
  std::mt19937_64 rng(17);
  auto inst = testkit::random_instance(rng, 4, 6);
  std::vector<Sequence> batch;
  for (int i = 0; i < 50; ++i) batch.push_back(testkit::random_instance(rng, 1 + i % 7, 6).seq);
  std::vector<double> a, b;
  const double la = nll_and_gradient(inst.model, batch, 0.1, a);
  const double lb = reference::nll_and_gradient(inst.model, batch, 0.1, b);
  CHECK(la == lb);
  CHECK(a == b);
  CHECK(viterbi_batch(inst.model, batch) == reference::viterbi_batch(inst.model, batch));
}

TEST_CASE("PAVA") {
  const auto v = pava_project({0.5, 0.2, 0.3, 0.1, 0.4}, Constraint::Increasing);
  const LabelVector want{0.275, 0.275, 0.275, 0.275, 0.4};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(v[i] - want[i]) <= 1e-12);
  CHECK(testkit::pooled_projection({0.5, 0.2, 0.3, 0.1, 0.4}) == v);

  const LabelVector sorted{-1, 0, 0, 2, 3}, flat{0.7, 0.7, 0.7, 0.7, 0.7};
  CHECK(pava_project(sorted, Constraint::Increasing) == sorted);
  CHECK(pava_project(flat, Constraint::Increasing) == flat);
  CHECK(pava_project(flat, Constraint::Decreasing) == flat);
  CHECK(pava_project({3, 1, 2, 0, 9}, Constraint::None) == LabelVector{3, 1, 2, 0, 9});

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 500; ++k) {
    LabelVector x;
    for (auto& e : x) e = u(rng);
    const auto inc = pava_project(x, Constraint::Increasing);
    CHECK(is_monotone(inc, Constraint::Increasing));
    const auto oracle = testkit::pooled_projection(x);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(inc[i] - oracle[i]) < 1e-12);
    CHECK(pava_project(inc, Constraint::Increasing) == inc);
    const auto dec = pava_project(x, Constraint::Decreasing);
    CHECK(is_monotone(dec, Constraint::Decreasing));
  }
}

namespace {

std::vector<Sequence> separable_data(std::mt19937_64& rng, std::size_t n) {
  // Feature f fires exactly on label f.
  std::uniform_int_distribution<int> lab(0, 4);
  std::vector<Sequence> data;
  for (std::size_t i = 0; i < n; ++i) {
    Sequence s;
    for (int j = 0; j < 3; ++j) {
      const auto l = static_cast<std::uint8_t>(lab(rng));
      s.positions.push_back({{l, 1.0}});
      s.labels.push_back(l);
    }
    data.push_back(std::move(s));
  }
  return data;
}

}  // namespace

TEST_CASE("training without constraints equals the unconstrained run") {
  std::mt19937_64 rng(29);
  const auto data = separable_data(rng, 40);
  FeatureIndex idx({"f0", "f1", "f2", "f3", "f4"});
  TrainConfig cfg;
  cfg.epochs = 5;
  const auto plain = train(Model(idx), data, cfg);
  const auto none = train(Model(idx, std::vector<Constraint>(5, Constraint::None)), data, cfg);
  CHECK(plain.epoch_loss == none.epoch_loss);
  CHECK(std::equal(plain.model.params().begin(), plain.model.params().end(), none.model.params().begin()));
}

TEST_CASE("training fits separable data and keeps constraints") {
  std::mt19937_64 rng(31);
  const auto data = separable_data(rng, 60);
  FeatureIndex idx({"f0", "f1", "f2", "f3", "f4"});
  std::vector<Constraint> reg{Constraint::Decreasing, Constraint::None, Constraint::None, Constraint::None,
                              Constraint::Increasing};
  Model init(idx, reg);
  init.set_mu_vector(4, {1, 0, 0, 0, -1});  // infeasible start
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.l2 = 0.01;
  const auto r = train(init, data, cfg);
  CHECK(satisfies_constraints(r.model));
  std::size_t hit = 0, n = 0;
  for (const auto& s : data) {
    const auto y = viterbi(log_potentials(r.model, s));
    for (std::size_t i = 0; i < s.size(); ++i, ++n) hit += y[i] == s.labels[i];
  }
  CHECK(hit == n);
  for (std::size_t e = 1; e < r.epoch_loss.size(); ++e) CHECK(r.epoch_loss[e] <= r.epoch_loss[e - 1] + 1e-9);
  CHECK(r.model.config.contains("training"));
}

TEST_CASE("training input validation") {
  Model m{FeatureIndex({"a"})};
  CHECK_THROWS_AS(train(m, {}, {}), std::invalid_argument);
  Sequence unlabeled;
  unlabeled.positions.resize(2);
  const std::vector<Sequence> data{unlabeled};
  CHECK_THROWS_AS(train(m, data, {}), std::invalid_argument);
}

TEST_CASE("serialization") {
  std::mt19937_64 rng(37);
  FeatureIndex idx({"a", "b", "c", "d"});
  Model m(idx, {Constraint::Increasing, Constraint::None, Constraint::Decreasing, Constraint::None});
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& p : m.params()) p = u(rng);
  m.config["note"] = "x";
  std::stringstream ss;
  save_model(m, ss);
  const auto back = load_model(ss);
  CHECK(back.constraints() == m.constraints());
  CHECK(std::equal(back.params().begin(), back.params().end(), m.params().begin()));
  std::vector<Sequence> seqs;
  for (int i = 0; i < 100; ++i) seqs.push_back(testkit::random_instance(rng, 1 + i % 6, 4).seq);
  CHECK(viterbi_batch(back, seqs) == viterbi_batch(m, seqs));

  std::ostringstream full;
  save_model(m, full);
  std::istringstream truncated(full.str().substr(0, full.str().size() / 2));
  CHECK_THROWS_AS(load_model(truncated), ModelFormatError);
  auto j = model_to_json(m);
  j["format_version"] = 2;
  CHECK_THROWS_AS(model_from_json(j), ModelVersionError);
}
