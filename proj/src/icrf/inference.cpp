#include <algorithm>
#include <cmath>
#include <limits>

#include "detail.hpp"

namespace stancekit::icrf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const LabelVector& v) {
  const double hi = *std::max_element(v.begin(), v.end());
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

}  // namespace

namespace detail {

Potentials potentials(const Model& m, double scale, const Sequence& s) {
  Potentials p;
  p.node.resize(s.size());
  for (std::size_t a = 0; a < kNumLabels; ++a)
    for (std::size_t b = 0; b < kNumLabels; ++b) p.transition[a][b] = scale * m.transition(a, b);
  for (std::size_t i = 0; i < s.size(); ++i) {
    LabelVector node{};
    for (std::size_t l = 0; l < kNumLabels; ++l) node[l] = m.bias(l);
    for (const auto& [f, x] : s.positions[i])
      for (std::size_t l = 0; l < kNumLabels; ++l) node[l] += m.mu(f, l) * x;
    for (auto& v : node) v *= scale;
    p.node[i] = node;
  }
  return p;
}

}  // namespace detail

Potentials log_potentials(const Model& m, const Sequence& s) { return detail::potentials(m, 1.0, s); }

double path_score(const Potentials& p, std::span<const std::uint8_t> labels) {
  if (labels.size() != p.size()) throw std::invalid_argument("path length does not match potentials");
  double score = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    score += p.node[i][labels[i]];
    if (i > 0) score += p.transition[labels[i - 1]][labels[i]];
  }
  return score;
}

Marginals forward_backward(const Potentials& p) {
  const std::size_t n = p.size();
  if (n == 0) throw std::invalid_argument("forward_backward on an empty sequence");
  std::vector<LabelVector> alpha(n), beta(n);
  alpha[0] = p.node[0];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t b = 0; b < kNumLabels; ++b) {
      LabelVector in{};
      for (std::size_t a = 0; a < kNumLabels; ++a) in[a] = alpha[i - 1][a] + p.transition[a][b];
      alpha[i][b] = log_sum_exp(in) + p.node[i][b];
    }
  }
  beta[n - 1].fill(0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    for (std::size_t a = 0; a < kNumLabels; ++a) {
      LabelVector out{};
      for (std::size_t b = 0; b < kNumLabels; ++b)
        out[b] = p.transition[a][b] + p.node[i + 1][b] + beta[i + 1][b];
      beta[i][a] = log_sum_exp(out);
    }
  }
  Marginals mg;
  mg.log_z = log_sum_exp(alpha[n - 1]);
  mg.unary.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < kNumLabels; ++l)
      mg.unary[i][l] = std::exp(alpha[i][l] + beta[i][l] - mg.log_z);
  mg.pairwise.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t a = 0; a < kNumLabels; ++a)
      for (std::size_t b = 0; b < kNumLabels; ++b)
        mg.pairwise[i][a][b] = std::exp(alpha[i][a] + p.transition[a][b] + p.node[i + 1][b] +
                                        beta[i + 1][b] - mg.log_z);
  return mg;
}

// Backward max-DP: best[i][a] is the best score of positions i..n-1 given
// y_i = a. Decoding forward and taking the lowest index among ties yields
// the lexicographically smallest optimal path.
std::vector<std::uint8_t> viterbi(const Potentials& p) {
  const std::size_t n = p.size();
  std::vector<std::uint8_t> path(n);
  if (n == 0) return path;
  std::vector<LabelVector> best(n);
  best[n - 1] = p.node[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    for (std::size_t a = 0; a < kNumLabels; ++a) {
      double m = kNegInf;
      for (std::size_t b = 0; b < kNumLabels; ++b)
        m = std::max(m, p.transition[a][b] + best[i + 1][b]);
      best[i][a] = p.node[i][a] + m;
    }
  }
  auto argmax_first = [](const LabelVector& v) {
    std::size_t k = 0;
    for (std::size_t l = 1; l < kNumLabels; ++l)
      if (v[l] > v[k]) k = l;
    return static_cast<std::uint8_t>(k);
  };
  path[0] = argmax_first(best[0]);
  for (std::size_t i = 1; i < n; ++i) {
    LabelVector cand{};
    for (std::size_t b = 0; b < kNumLabels; ++b) cand[b] = p.transition[path[i - 1]][b] + best[i][b];
    path[i] = argmax_first(cand);
  }
  return path;
}

std::vector<SentimentLabel> viterbi(const Model& m, const Sequence& s) {
  std::vector<SentimentLabel> out;
  for (auto k : viterbi(log_potentials(m, s))) out.push_back(label_from_index(k));
  return out;
}

Prediction predict_and_collapse(const Model& m, const Sequence& s) {
  Prediction p;
  p.labels = viterbi(m, s);
  for (auto l : p.labels) p.stances.push_back(collapse(l));
  return p;
}

std::vector<std::vector<SentimentLabel>> viterbi_batch(const Model& m, std::span<const Sequence> seqs) {
  std::vector<std::vector<SentimentLabel>> out(seqs.size());
  const auto n = static_cast<std::ptrdiff_t>(seqs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = viterbi(m, seqs[i]);
  return out;
}

namespace reference {

std::vector<std::vector<SentimentLabel>> viterbi_batch(const Model& m, std::span<const Sequence> seqs) {
  std::vector<std::vector<SentimentLabel>> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) out.push_back(viterbi(m, s));
  return out;
}

}  // namespace reference

}  // namespace stancekit::icrf
