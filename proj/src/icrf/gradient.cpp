#include <algorithm>

#include "detail.hpp"

namespace stancekit::icrf {

namespace detail {

double sequence_nll_grad(const Model& m, double scale, const Sequence& s, SparseGrad& out) {
  check_labeled(s);
  if (s.size() == 0) return 0.0;
  const Potentials p = potentials(m, scale, s);
  const Marginals mg = forward_backward(p);
  const double nll = mg.log_z - path_score(p, s.labels);

  const std::size_t t0 = m.transition_offset();
  const std::size_t b0 = m.bias_offset();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto y = s.labels[i];
    for (std::size_t l = 0; l < kNumLabels; ++l) {
      const double d = mg.unary[i][l] - (l == y ? 1.0 : 0.0);
      out.emplace_back(b0 + l, d);
      for (const auto& [f, x] : s.positions[i]) out.emplace_back(Model::mu_offset(f) + l, d * x);
    }
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    for (std::size_t a = 0; a < kNumLabels; ++a)
      for (std::size_t b = 0; b < kNumLabels; ++b) {
        const double emp = (s.labels[i] == a && s.labels[i + 1] == b) ? 1.0 : 0.0;
        out.emplace_back(t0 + a * kNumLabels + b, mg.pairwise[i][a][b] - emp);
      }
  }
  return nll;
}

}  // namespace detail

namespace {

double finish(const Model& m, double l2, double loss, std::vector<double>& grad) {
  const auto theta = m.params();
  double sq = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    grad[j] += l2 * theta[j];
    sq += theta[j] * theta[j];
  }
  return loss + 0.5 * l2 * sq;
}

}  // namespace

double nll_and_gradient(const Model& m, std::span<const Sequence> batch, double l2,
                        std::vector<double>& grad) {
  // Chunks bound the buffered sparse parts; buffers are reused across chunks.
  constexpr std::size_t kChunk = 256;
  std::vector<detail::SparseGrad> parts(std::min(kChunk, batch.size()));
  std::vector<double> losses(parts.size(), 0.0);
  grad.assign(m.num_params(), 0.0);
  double loss = 0.0;
  for (std::size_t lo = 0; lo < batch.size(); lo += kChunk) {
    const auto n = static_cast<std::ptrdiff_t>(std::min(kChunk, batch.size() - lo));
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      parts[i].clear();
      losses[i] = detail::sequence_nll_grad(m, 1.0, batch[lo + static_cast<std::size_t>(i)], parts[i]);
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      loss += losses[i];
      for (const auto& [j, g] : parts[i]) grad[j] += g;
    }
  }
  return finish(m, l2, loss, grad);
}

namespace reference {

double nll_and_gradient(const Model& m, std::span<const Sequence> batch, double l2,
                        std::vector<double>& grad) {
  grad.assign(m.num_params(), 0.0);
  double loss = 0.0;
  detail::SparseGrad part;
  for (const auto& s : batch) {
    part.clear();
    loss += detail::sequence_nll_grad(m, 1.0, s, part);
    for (const auto& [j, g] : part) grad[j] += g;
  }
  return finish(m, l2, loss, grad);
}

}  // namespace reference

}  // namespace stancekit::icrf
