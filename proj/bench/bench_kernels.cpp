// Parallel kernels against their serial references. Each pair runs on the
// same input; the parallel variant uses the current OpenMP thread count.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"
#include "stancekit/icrf.hpp"
#include "stancekit/lexicon.hpp"

using namespace stancekit;

namespace {

// Zipf-ish vocabulary so co-occurrence lists have realistic skew.
std::vector<corpus::Discussion> synthetic_corpus(std::size_t discussions) {
  std::mt19937_64 rng(42);
  std::vector<std::string> vocab;
  for (int i = 0; i < 400; ++i) vocab.push_back("w" + std::to_string(i));
  std::vector<double> weights;
  for (std::size_t i = 0; i < vocab.size(); ++i) weights.push_back(1.0 / static_cast<double>(i + 1));
  std::discrete_distribution<std::size_t> word(weights.begin(), weights.end());
  std::uniform_int_distribution<int> len(4, 14), turns(4, 10);
  std::vector<corpus::Discussion> out;
  for (std::size_t d = 0; d < discussions; ++d) {
    corpus::Discussion disc;
    disc.id = "b" + std::to_string(d);
    const int nt = turns(rng);
    for (int t = 0; t < nt; ++t) {
      corpus::Turn turn;
      turn.speaker = "s" + std::to_string(t % 3);
      turn.ordinal = t;
      corpus::Utterance u;
      u.id = disc.id + "." + std::to_string(t);
      corpus::Sentence s;
      const int n = len(rng);
      for (int k = 0; k < n; ++k) {
        corpus::Token tok;
        tok.form = tok.lowercase = vocab[word(rng)];
        s.tokens.push_back(tok);
      }
      u.sentences.push_back(s);
      turn.utterances.push_back(u);
      disc.turns.push_back(turn);
    }
    out.push_back(disc);
  }
  return out;
}

struct LexiconFixture {
  std::vector<corpus::Discussion> ds = synthetic_corpus(600);
  lexicon::SeedSet seeds;
  std::vector<std::string> nodes;
  lexicon::Cooccurrence co;
  lexicon::PropagationGraph graph;

  LexiconFixture() {
    seeds.positive = {"w1", "w5", "w9"};
    seeds.negative = {"w2", "w6", "w10"};
    for (const auto& [p, n] : lexicon::extract_text_units(ds, &seeds, 10)) nodes.push_back(p);
    co = lexicon::count_cooccurrence(ds, nodes, &seeds);
    graph = lexicon::build_graph(co);
    lexicon::attach_seeds(graph, seeds);
  }
};

const LexiconFixture& lexicon_fixture() {
  static const LexiconFixture f;
  return f;
}

struct CrfFixture {
  icrf::Model model;
  std::vector<icrf::Sequence> seqs;

  CrfFixture() {
    std::mt19937_64 rng(7);
    const std::size_t F = 5000;
    std::vector<std::string> names;
    for (std::size_t f = 0; f < F; ++f) names.push_back("f" + std::to_string(f));
    model = icrf::Model(icrf::FeatureIndex(names));
    std::normal_distribution<double> w(0, 0.3);
    for (auto& p : model.params()) p = w(rng);
    std::uniform_int_distribution<std::uint32_t> feat(0, F - 1);
    std::uniform_int_distribution<int> len(1, 8), lab(0, 4);
    for (int i = 0; i < 2000; ++i) {
      icrf::Sequence s;
      const int n = len(rng);
      for (int j = 0; j < n; ++j) {
        std::vector<std::uint32_t> ids;
        for (int k = 0; k < 30; ++k) ids.push_back(feat(rng));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        icrf::Observation o;
        for (auto id : ids) o.emplace_back(id, 1.0);
        s.positions.push_back(o);
        s.labels.push_back(static_cast<std::uint8_t>(lab(rng)));
      }
      seqs.push_back(std::move(s));
    }
  }
};

const CrfFixture& crf_fixture() {
  static const CrfFixture f;
  return f;
}

void set_threads(benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_Cooccurrence_Reference(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::reference::count_cooccurrence(f.ds, f.nodes, &f.seeds));
}

void BM_Cooccurrence_Parallel(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::count_cooccurrence(f.ds, f.nodes, &f.seeds));
}

void BM_BuildGraph_Reference(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::reference::build_graph(f.co));
}

void BM_BuildGraph_Parallel(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::build_graph(f.co));
}

void BM_Propagate_Reference(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  const lexicon::PropagationOptions opts{30, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::reference::propagate(f.graph, opts));
}

void BM_Propagate_Parallel(benchmark::State& state) {
  const auto& f = lexicon_fixture();
  const lexicon::PropagationOptions opts{30, 0.0};
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(lexicon::propagate(f.graph, opts));
}

void BM_Gradient_Reference(benchmark::State& state) {
  const auto& f = crf_fixture();
  std::vector<double> g;
  for (auto _ : state) benchmark::DoNotOptimize(icrf::reference::nll_and_gradient(f.model, f.seqs, 1.0, g));
}

void BM_Gradient_Parallel(benchmark::State& state) {
  const auto& f = crf_fixture();
  std::vector<double> g;
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(icrf::nll_and_gradient(f.model, f.seqs, 1.0, g));
}

void BM_Viterbi_Reference(benchmark::State& state) {
  const auto& f = crf_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(icrf::reference::viterbi_batch(f.model, f.seqs));
}

void BM_Viterbi_Parallel(benchmark::State& state) {
  const auto& f = crf_fixture();
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(icrf::viterbi_batch(f.model, f.seqs));
}

void thread_counts(benchmark::internal::Benchmark* b) {
  const int max = omp_get_num_procs();
  for (int t = 1; t <= max; t *= 2) b->Arg(t);
  if ((max & (max - 1)) != 0) b->Arg(max);
}

}  // namespace

BENCHMARK(BM_Cooccurrence_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cooccurrence_Parallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildGraph_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildGraph_Parallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Propagate_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Propagate_Parallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient_Parallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Viterbi_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Viterbi_Parallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
