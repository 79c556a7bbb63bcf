#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "stancekit/lexicon.hpp"

namespace stancekit::lexicon {

namespace {

std::vector<double> initial_scores(const PropagationGraph& g) {
  std::vector<double> y(g.size(), 0.0);
  for (std::uint32_t i = 0; i < g.size(); ++i) y[i] = static_cast<double>(g.seed_state(i));
  return y;
}

// Weighted neighbor average, summed in adjacency order; seeds re-clamped.
inline double updated(const PropagationGraph& g, const std::vector<double>& prev, std::uint32_t i) {
  if (const int s = g.seed_state(i); s != 0) return static_cast<double>(s);
  auto nb = g.neighbors(i);
  auto w = g.weights(i);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < nb.size(); ++k) {
    num += w[k] * prev[nb[k]];
    den += w[k];
  }
  if (den <= 0.0) return 0.0;
  // Convex combination of values in [-1, 1]; clamp guards the last ulp.
  return std::clamp(num / den, -1.0, 1.0);
}

void check(const PropagationOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("propagation needs at least one iteration");
  if (!(opts.tolerance >= 0.0)) throw std::invalid_argument("propagation tolerance must be >= 0");
}

}  // namespace

PropagationResult propagate(const PropagationGraph& g, const PropagationOptions& opts) {
  check(opts);
  PropagationResult r;
  r.scores = initial_scores(g);
  std::vector<double> next(g.size());
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  for (std::size_t t = 0; t < opts.iterations; ++t) {
    double delta = 0.0;
#pragma omp parallel for schedule(dynamic, 256) reduction(max : delta)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto id = static_cast<std::uint32_t>(i);
      next[id] = updated(g, r.scores, id);
      delta = std::max(delta, std::abs(next[id] - r.scores[id]));
    }
    r.scores.swap(next);
    r.max_delta.push_back(delta);
    ++r.sweeps;
    if (delta < opts.tolerance) break;
  }
  return r;
}

namespace reference {

PropagationResult propagate(const PropagationGraph& g, const PropagationOptions& opts,
                            std::span<const std::uint32_t> visit_order) {
  check(opts);
  std::vector<std::uint32_t> order(visit_order.begin(), visit_order.end());
  if (order.empty()) {
    order.resize(g.size());
    std::iota(order.begin(), order.end(), 0u);
  } else if (order.size() != g.size()) {
    throw std::invalid_argument("visit order must be a permutation of node ids");
  }
  PropagationResult r;
  r.scores = initial_scores(g);
  std::vector<double> next(g.size());
  for (std::size_t t = 0; t < opts.iterations; ++t) {
    double delta = 0.0;
    for (auto id : order) {
      next[id] = updated(g, r.scores, id);
      delta = std::max(delta, std::abs(next[id] - r.scores[id]));
    }
    r.scores.swap(next);
    r.max_delta.push_back(delta);
    ++r.sweeps;
    if (delta < opts.tolerance) break;
  }
  return r;
}

}  // namespace reference

}  // namespace stancekit::lexicon
