// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "stancekit/dispute.hpp"
#include "stancekit/eval.hpp"
#include "stancekit/icrf.hpp"
#include "stancekit/lexicon.hpp"
#include "stancekit/pipeline.hpp"
#include "stancekit/shallow.hpp"
#include "../support/cli_runner.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failed check; later checks still run.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_ = what;
    }
  }
  Outcome done(std::string ok_detail) const { return {pass_, pass_ ? std::move(ok_detail) : first_}; }

 private:
  bool pass_ = true;
  std::string first_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome crf_correctness() {
  const auto t0 = Clock::now();
  Checker c;
  std::mt19937_64 rng(101);
  double worst_z = 0.0, worst_sum = 0.0;
  const int instances = 120;
  for (int k = 0; k < instances; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    auto [m, s] = testkit::random_instance(rng, n, 4, 1.5);
    const auto oracle = testkit::exhaustive(m, s);
    const auto p = icrf::log_potentials(m, s);
    const auto fb = icrf::forward_backward(p);
    worst_z = std::max(worst_z, std::abs(fb.log_z - oracle.log_z));
    c.expect(icrf::viterbi(p) == oracle.argmax, "viterbi differs from exhaustive argmax");
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t l = 0; l < kNumLabels; ++l) {
        sum += fb.unary[i][l];
        c.expect(std::abs(fb.unary[i][l] - oracle.unary[i][l]) < 1e-8, "marginal differs from enumeration");
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  c.expect(worst_z < 1e-8, "log Z error " + std::to_string(worst_z));
  c.expect(worst_sum < 1e-10, "marginal sum error " + std::to_string(worst_sum));
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << instances << " instances, max |dlogZ| " << worst_z << ", max |sum-1| " << worst_sum << ", " << secs << " s";
  return c.done(d.str());
}

Outcome gradient_checks() {
  Checker c;
  std::mt19937_64 rng(202);
  const double eps = 1e-5;
  double worst_crf = 0.0, worst_lr = 0.0;
  for (int k = 0; k < 25; ++k) {
    auto inst = testkit::random_instance(rng, 3, 4);
    std::vector<icrf::Sequence> batch{inst.seq};
    const double l2 = 0.1 * (k % 3);
    std::vector<double> g, scratch;
    icrf::nll_and_gradient(inst.model, batch, l2, g);
    auto params = inst.model.params();
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double keep = params[j];
      params[j] = keep + eps;
      const double up = icrf::nll_and_gradient(inst.model, batch, l2, scratch);
      params[j] = keep - eps;
      const double down = icrf::nll_and_gradient(inst.model, batch, l2, scratch);
      params[j] = keep;
      worst_crf = std::max(worst_crf, testkit::relative_error(g[j], (up - down) / (2 * eps)));
    }
  }
  for (int k = 0; k < 25; ++k) {
    shallow::LinearModel m({"a", "b", "c"}, {"x0", "x1", "x2", "x3"});
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& p : m.params()) p = u(rng);
    std::vector<shallow::SparseRow> rows;
    std::vector<std::size_t> labels;
    for (int r = 0; r < 6; ++r) {
      shallow::SparseRow row;
      for (std::uint32_t f = 0; f < 4; ++f)
        if (u(rng) > -0.3) row.emplace_back(f, 2 * u(rng));
      rows.push_back(row);
      labels.push_back(static_cast<std::size_t>(r % 3));
    }
    std::vector<double> g, scratch;
    shallow::logistic_nll_and_gradient(m, rows, labels, 0.05, g);
    auto params = m.params();
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double keep = params[j];
      params[j] = keep + eps;
      const double up = shallow::logistic_nll_and_gradient(m, rows, labels, 0.05, scratch);
      params[j] = keep - eps;
      const double down = shallow::logistic_nll_and_gradient(m, rows, labels, 0.05, scratch);
      params[j] = keep;
      worst_lr = std::max(worst_lr, testkit::relative_error(g[j], (up - down) / (2 * eps)));
    }
  }
  c.expect(worst_crf < 1e-4, "icrf relative error " + std::to_string(worst_crf));
  c.expect(worst_lr < 1e-4, "logistic relative error " + std::to_string(worst_lr));
  std::ostringstream d;
  d << "25+25 instances, max rel err icrf " << worst_crf << ", logistic " << worst_lr;
  return c.done(d.str());
}

Outcome isotonic_constraints() {
  Checker c;
  // Training with 60 registered features on data that pushes against them.
  std::mt19937_64 rng(303);
  const std::size_t F = 80;
  std::vector<std::string> names;
  for (std::size_t f = 0; f < F; ++f) names.push_back("f" + std::to_string(100 + f));
  std::vector<icrf::Constraint> reg(F, icrf::Constraint::None);
  for (std::size_t f = 0; f < 60; ++f)
    reg[f] = f % 2 ? icrf::Constraint::Decreasing : icrf::Constraint::Increasing;
  icrf::Model m(icrf::FeatureIndex(names), reg);
  std::vector<icrf::Sequence> data;
  std::uniform_int_distribution<std::uint32_t> feat(0, F - 1);
  std::uniform_int_distribution<int> lab(0, 4);
  for (int i = 0; i < 150; ++i) {
    icrf::Sequence s;
    for (int j = 0; j < 4; ++j) {
      std::set<std::uint32_t> fs{feat(rng), feat(rng), feat(rng)};
      icrf::Observation o;
      for (auto f : fs) o.emplace_back(f, 1.0);
      s.positions.push_back(o);
      s.labels.push_back(static_cast<std::uint8_t>(lab(rng)));
    }
    data.push_back(std::move(s));
  }
  icrf::TrainConfig cfg;
  cfg.epochs = 8;
  cfg.l2 = 0.01;
  const auto trained = icrf::train(m, data, cfg).model;
  std::size_t registered = 0, monotone = 0;
  for (std::uint32_t f = 0; f < F; ++f) {
    if (trained.constraint(f) == icrf::Constraint::None) continue;
    ++registered;
    monotone += icrf::is_monotone(trained.mu_vector(f), trained.constraint(f));
  }
  c.expect(registered >= 50, "only " + std::to_string(registered) + " registered features");
  c.expect(monotone == registered, std::to_string(registered - monotone) + " registered vectors not monotone");
  // The same run without projection must violate some constraint, or the check above is vacuous.
  cfg.enforce_constraints = false;
  const auto free = icrf::train(m, data, cfg).model;
  std::size_t violated = 0;
  for (std::uint32_t f = 0; f < F; ++f)
    if (free.constraint(f) != icrf::Constraint::None)
      violated += !icrf::is_monotone(free.mu_vector(f), free.constraint(f));
  c.expect(violated > 0, "constraints never bind on this data");

  const auto hand = icrf::pava_project({0.5, 0.2, 0.3, 0.1, 0.4}, icrf::Constraint::Increasing);
  const icrf::LabelVector want{0.275, 0.275, 0.275, 0.275, 0.4};
  double hand_err = 0.0;
  for (std::size_t i = 0; i < 5; ++i) hand_err = std::max(hand_err, std::abs(hand[i] - want[i]));
  c.expect(hand_err <= 1e-12, "hand example off by " + std::to_string(hand_err));

  const auto grid = testkit::monotone_grid(-1.0, 1.0, 0.1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::size_t beaten = 0;
  for (int k = 0; k < 1000; ++k) {
    icrf::LabelVector v;
    for (auto& x : v) x = u(rng);
    const double d = testkit::sq_dist(icrf::pava_project(v, icrf::Constraint::Increasing), v);
    double best = 1e300;
    for (const auto& g : grid) best = std::min(best, testkit::sq_dist(g, v));
    beaten += d > best + 1e-12;
  }
  c.expect(beaten == 0, std::to_string(beaten) + " of 1000 vectors beaten by the grid");
  std::ostringstream d;
  d << registered << " registered features all monotone (" << violated << " violated without projection); hand example err " << hand_err << "; 1000 random vectors, "
    << grid.size() << "-point grid never closer";
  return c.done(d.str());
}

lexicon::PropagationGraph path_graph(double w_ab, double w_bc) {
  std::vector<lexicon::TextUnit> nodes{{lexicon::UnitKind::Unigram, "uni:a"},
                                       {lexicon::UnitKind::Unigram, "uni:b"},
                                       {lexicon::UnitKind::Unigram, "uni:c"}};
  auto g = lexicon::PropagationGraph::from_edges(nodes, {{0, 1, w_ab}, {1, 2, w_bc}});
  g.set_seeds({0}, {2});
  return g;
}

Outcome propagation() {
  Checker c;
  const auto even = lexicon::propagate(path_graph(1.0, 1.0));
  c.expect(even.scores[1] == 0.0, "symmetric path middle score " + std::to_string(even.scores[1]));
  const auto skew = lexicon::propagate(path_graph(0.8, 0.2));
  c.expect(skew.scores[1] == 0.8 - 0.2, "weighted path middle score " + std::to_string(skew.scores[1]));
  c.expect(skew.max_delta.size() >= 2 && skew.max_delta[1] == 0.0, "weighted path not stable after one sweep");

  std::mt19937_64 rng(404);
  const std::uint32_t N = 1000;
  std::vector<lexicon::TextUnit> nodes;
  for (std::uint32_t i = 0; i < N; ++i) {
    std::ostringstream p;
    p << "uni:n" << 10000 + i;
    nodes.push_back({lexicon::UnitKind::Unigram, p.str()});
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<lexicon::Edge> edges;
  std::uniform_int_distribution<std::uint32_t> pick(0, N - 1);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  while (edges.size() < 5000) {
    auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) edges.push_back({a, b, w(rng)});
  }
  auto g = lexicon::PropagationGraph::from_edges(nodes, edges);
  std::vector<std::uint32_t> pos, neg;
  for (std::uint32_t i = 0; i < 40; ++i) (i % 2 ? neg : pos).push_back(i * 25);
  g.set_seeds(pos, neg);
  lexicon::PropagationOptions opts;
  opts.iterations = 50;
  opts.tolerance = 0.0;
  const auto r = lexicon::propagate(g, opts);
  bool bounded = true;
  for (double s : r.scores) bounded = bounded && s >= -1.0 && s <= 1.0;
  c.expect(bounded, "score outside [-1, 1]");
  bool seeds_ok = true;
  for (auto i : pos) seeds_ok = seeds_ok && r.scores[i] == 1.0;
  for (auto i : neg) seeds_ok = seeds_ok && r.scores[i] == -1.0;
  c.expect(seeds_ok, "a seed did not end at +/-1");

  std::vector<std::uint32_t> o1(N), o2;
  std::iota(o1.begin(), o1.end(), 0u);
  o2 = o1;
  std::shuffle(o1.begin(), o1.end(), rng);
  std::shuffle(o2.begin(), o2.end(), rng);
  const auto r1 = lexicon::reference::propagate(g, opts, o1);
  const auto r2 = lexicon::reference::propagate(g, opts, o2);
  c.expect(std::memcmp(r1.scores.data(), r2.scores.data(), N * sizeof(double)) == 0,
           "shuffled visit orders differ");
  c.expect(std::memcmp(r1.scores.data(), r.scores.data(), N * sizeof(double)) == 0,
           "parallel sweep differs from serial");
  return c.done("path fixed points 0 and 0.6 exact; 1000-node graph bounded, seeds clamped, order-independent");
}

Outcome lexicon_plumbing() {
  Checker c;
  const auto ds = corpus::load_discussions(testkit::golden_dir() / "three_sentences.jsonl");
  std::ifstream seeds_in(testkit::golden_dir() / "three_sentences_seeds.tsv");
  const std::vector<std::vector<std::pair<std::string, int>>> src{lexicon::parse_seed_lines(seeds_in, "seeds")};
  const auto seeds = lexicon::merge_seeds(src);
  const auto units = lexicon::extract_text_units(ds, &seeds, 1);
  std::vector<std::string> nodes;
  for (const auto& [p, n] : units) nodes.push_back(p);
  const auto co = lexicon::count_cooccurrence(ds, nodes, &seeds);
  const auto good = co.id("uni:good"), idea = co.id("uni:idea");
  double pmi = std::nan("");
  if (good && idea)
    for (auto [j, v] : lexicon::pmi_vector(co, *good))
      if (j == *idea) pmi = v;
  c.expect(std::abs(pmi - std::log(0.75)) <= 1e-12, "PMI(good, idea) = " + std::to_string(pmi));

  // "good" occurs in 10 discussions, "fine" in 9.
  std::vector<corpus::Discussion> many;
  for (int i = 0; i < 12; ++i) {
    std::string s = "plain words";
    if (i < 10) s += " good";
    if (i < 9) s += " fine";
    many.push_back(testkit::make_discussion("d" + std::to_string(i), {{s}}));
  }
  const auto kept = lexicon::extract_text_units(many, nullptr, 10);
  c.expect(kept.contains("uni:good"), "unit in exactly 10 discussions dropped");
  c.expect(!kept.contains("uni:fine"), "unit in 9 discussions kept");

  std::istringstream scored("correct\t0.875\t0.0\nhelpful\t0.7\t0.1\nbleak\t0.0\t0.7\ngrim\t0.1\t0.71\n");
  const auto lines = lexicon::parse_seed_lines(scored, "scored");
  std::set<std::string> words;
  for (const auto& [w, pol] : lines) words.insert(w);
  c.expect(words == std::set<std::string>{"correct", "grim"}, "seed threshold boundary not strict");
  return c.done("PMI(good, idea) = ln 0.75 within 1e-12; 10/9-discussion filter and 0.7 seed boundary enforced");
}

Outcome metrics() {
  Checker c;
  using S = Stance;
  const std::vector<S> gold{S::Agree, S::Neutral, S::Disagree, S::Agree};
  const std::vector<S> pred{S::Neutral, S::Neutral, S::Disagree, S::Agree};
  const std::vector<bool> turn{true, false, false, false};
  const auto strict = eval::strict_f1(gold, pred);
  const auto soft = eval::soft_f1(gold, turn, pred);
  c.expect(strict[S::Agree].f1 == 2.0 / 3.0, "strict agree F1 " + std::to_string(strict[S::Agree].f1));
  c.expect(soft[S::Agree].f1 == 1.0, "soft agree F1 " + std::to_string(soft[S::Agree].f1));
  c.expect(soft[S::Neutral].f1 == 1.0, "soft neutral F1 " + std::to_string(soft[S::Neutral].f1));

  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> cls(0, 2), len(1, 30);
  std::bernoulli_distribution coin(0.4);
  for (int k = 0; k < 2000; ++k) {
    const int n = len(rng);
    std::vector<S> g, p;
    std::vector<bool> td;
    for (int i = 0; i < n; ++i) {
      g.push_back(static_cast<S>(cls(rng)));
      p.push_back(static_cast<S>(cls(rng)));
      td.push_back(g.back() != S::Neutral && coin(rng));
    }
    const auto a = eval::strict_f1(g, p), b = eval::soft_f1(g, td, p);
    for (auto s : {S::Agree, S::Disagree})
      c.expect(b[s].f1 >= a[s].f1, "soft below strict on a random instance");
  }
  const double chi2 = eval::chi2_statistic(10, 0, 10, 20);
  c.expect(std::abs(chi2 - 13.333) < 1e-3, "chi2 " + std::to_string(chi2));
  c.expect(corpus::induce_labels_iac(-4.0) == SentimentLabel::NN, "-4 mapping");
  c.expect(corpus::induce_labels_iac(0.0) == SentimentLabel::O, "0 mapping");
  c.expect(corpus::induce_labels_iac(3.0) == SentimentLabel::PP, "3 mapping");
  c.expect(corpus::induce_labels_iac(-3.0) == SentimentLabel::NN, "-3 mapping");
  std::ostringstream d;
  d << "strict agree F1 2/3, soft agree/neutral 1.0; soft >= strict on 2000 random cases; chi2 " << chi2
    << "; IAC boundary table exact";
  return c.done(d.str());
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  Checker c;
  const auto train = testkit::planted_corpus(40, 707);
  const auto test = testkit::planted_corpus(20, 708);
  const auto lex = testkit::planted_lexicon();
  pipeline::TaggerOptions opts;
  const auto tagger = pipeline::Tagger::train(train, lex, opts);
  auto label_accuracy = [&](std::span<const corpus::Discussion> ds) {
    const auto tags = tagger.tag(ds);
    std::size_t hit = 0, n = 0;
    for (std::size_t d = 0; d < ds.size(); ++d)
      for (std::size_t t = 0; t < ds[d].turns.size(); ++t)
        for (std::size_t u = 0; u < ds[d].turns[t].utterances.size(); ++u, ++n)
          hit += tags[d][t][u] == ds[d].turns[t].utterances[u].gold_or_neutral();
    return static_cast<double>(hit) / static_cast<double>(n);
  };
  const double train_acc = label_accuracy(train), test_acc = label_accuracy(test);
  c.expect(train_acc == 1.0, "training accuracy " + std::to_string(train_acc));
  c.expect(test_acc >= 0.95, "held-out accuracy " + std::to_string(test_acc));

  const auto flows = testkit::flow_corpus(40, 709);
  std::vector<std::vector<dispute::TaggedUnit>> units;
  for (const auto& d : flows) {
    pipeline::TurnLabels gold;
    for (const auto& t : d.turns) {
      gold.emplace_back();
      for (const auto& u : t.utterances) gold.back().push_back(u.gold_or_neutral());
    }
    units.push_back(pipeline::tagged_units(d, gold));
  }
  const auto folds = pipeline::crossval_dispute(flows, units, {}, {}, 5, 1);
  double acc = 0.0;
  for (const auto& f : folds) acc += f.scores.accuracy;
  acc /= static_cast<double>(folds.size());
  c.expect(acc >= 0.95, "dispute 5-fold accuracy " + std::to_string(acc));
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "tagger train " << train_acc << " / held-out " << test_acc << "; dispute 5-fold accuracy " << acc << "; "
    << secs << " s";
  return c.done(d.str());
}

bool has_cell(const nlohmann::json& row, const char* mode, const char* cls) {
  if (!row.contains(mode) || !row.at(mode).contains(cls)) return false;
  const auto& cell = row.at(mode).at(cls);
  return cell.contains("mean") && cell.contains("sd") && cell.contains("folds");
}

Outcome protocol_fidelity() {
  Checker c;
  const auto tagger_ds = [] {
    auto ds = corpus::load_discussions(testkit::toy_dir() / "aawd.jsonl");
    corpus::induce_gold_labels(ds);
    return ds;
  }();
  std::ifstream seeds_in(testkit::toy_dir() / "seeds.tsv");
  const std::vector<std::vector<std::pair<std::string, int>>> src{lexicon::parse_seed_lines(seeds_in, "seeds")};
  const auto seeds = lexicon::merge_seeds(src);
  const auto lex = lexicon::build_lexicon(tagger_ds, seeds).lexicon;

  pipeline::TableOptions opts;
  opts.k = 5;
  opts.tagger.train.epochs = 5;
  const auto tt = pipeline::tagger_tables(tagger_ds, lex, opts);
  const std::vector<std::string> main_rows{"Baseline (Polarity)", "Baseline (Distance)", "CRF (5-way)",
                                           "CRF (5-way) + downsampling", "isotonic CRF",
                                           "isotonic CRF + downsampling"};
  std::vector<std::string> got;
  for (const auto& r : tt.at("main")) got.push_back(r.at("system"));
  c.expect(got == main_rows, "tagger main rows incomplete");
  for (const auto& r : tt.at("main"))
    for (const char* mode : {"strict", "soft"})
      for (const char* cls : {"agree", "disagree", "neutral"})
        c.expect(has_cell(r, mode, cls), "missing cell in " + r.at("system").get<std::string>());
  c.expect(tt.at("ablation").size() == 5, "cumulative ablation needs 5 rows");
  for (const auto& r : tt.at("ablation"))
    for (const char* mode : {"strict", "soft"})
      for (const char* cls : {"agree", "disagree", "neutral"}) c.expect(has_cell(r, mode, cls), "ablation cell");
  c.expect(tt.at("t_tests").size() == 5 * 2 * 3, "tagger t-tests incomplete");
  for (const auto& t : tt.at("t_tests"))
    c.expect(t.contains("t") && t.contains("p") && t.contains("df"), "t-test fields");

  auto dds = corpus::load_discussions(testkit::toy_dir() / "disputes.jsonl");
  corpus::induce_gold_labels(dds);
  std::vector<std::vector<dispute::TaggedUnit>> units;
  for (const auto& d : dds) {
    pipeline::TurnLabels gold;
    for (const auto& t : d.turns) {
      gold.emplace_back();
      for (const auto& u : t.utterances) gold.back().push_back(u.gold_or_neutral());
    }
    units.push_back(pipeline::tagged_units(d, gold));
  }
  const auto dt = pipeline::dispute_tables(dds, units, opts);
  c.expect(dt.at("main").size() == 3, "dispute main rows");
  c.expect(dt.at("ablation").size() == dispute::dispute_ablation().size() && dt.at("ablation").size() == 8,
           "dispute ablation rows");
  for (const auto* block : {&dt.at("main"), &dt.at("ablation")})
    for (const auto& r : *block)
      for (const char* m : {"precision", "recall", "f1", "accuracy"}) c.expect(r.contains(m), "dispute cell");
  c.expect(dt.at("t_tests").size() == (3 + 8 - 1) * 2, "dispute t-tests incomplete");

  std::ostringstream md;
  pipeline::render_tables(tt, md);
  pipeline::render_tables(dt, md);
  const auto text = md.str();
  for (const char* needle : {"| isotonic CRF |", "| Lex + Syn + Disc + Con + Sent |", "| Baseline (All dispute) |",
                             "| Logistic Regression |"})
    c.expect(text.find(needle) != std::string::npos, std::string("rendered tables lack ") + needle);
  return c.done("toy corpora: 6 main + 5 ablation tagger rows, 3 + 8 dispute rows, 30 + 20 paired t-tests, Markdown");
}

Outcome reproducibility() {
  Checker c;
  const auto dir = testkit::scratch_dir("acceptance_repro");
  std::map<std::string, std::string> first;
  std::size_t files = 0;
  for (int threads : {1, 1, 4}) {
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto failed = testkit::run_toy_workflow(dir, threads);
    c.expect(failed.empty(), failed);
    if (!failed.empty()) break;
    auto snap = testkit::snapshot(dir);
    if (first.empty()) {
      first = std::move(snap);
      files = first.size();
    } else {
      c.expect(snap == first, "artifacts differ at --threads " + std::to_string(threads));
    }
  }
  std::filesystem::remove_all(dir);
  return c.done(std::to_string(files) + " artifacts byte-identical over 2 runs at 1 thread and 1 run at 4");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"CRF correctness", crf_correctness},
      {"gradient checks", gradient_checks},
      {"isotonic constraints", isotonic_constraints},
      {"propagation", propagation},
      {"lexicon plumbing", lexicon_plumbing},
      {"metrics", metrics},
      {"end-to-end synthetic", end_to_end},
      {"protocol fidelity", protocol_fidelity},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
