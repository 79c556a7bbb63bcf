#include <algorithm>
#include <random>

#include "detail.hpp"

namespace stancekit::icrf {

nlohmann::json TrainConfig::to_json() const {
  return {{"eta0", eta0},
          {"t0", t0},
          {"l2", l2},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"seed", seed},
          {"enforce_constraints", enforce_constraints}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.eta0 = j.value("eta0", c.eta0);
  c.t0 = j.value("t0", c.t0);
  c.l2 = j.value("l2", c.l2);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seed = j.value("seed", c.seed);
  c.enforce_constraints = j.value("enforce_constraints", c.enforce_constraints);
  return c;
}

namespace {

// Weights are stored as theta = scale * v so the L2 shrink is O(1) per step.
void materialize(Model& m, double& scale) {
  if (scale == 1.0) return;
  for (auto& x : m.params()) x *= scale;
  scale = 1.0;
}

}  // namespace

TrainResult train(Model initial, std::span<const Sequence> data, const TrainConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("empty training set");
  if (cfg.batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  if (cfg.eta0 <= 0.0 || cfg.l2 < 0.0) throw std::invalid_argument("invalid step size or l2");
  for (const auto& s : data) detail::check_labeled(s);

  const double n = static_cast<double>(data.size());
  const double t0 = cfg.t0 > 0.0 ? cfg.t0 : n;
  TrainResult result{std::move(initial), {}};
  Model& m = result.model;
  if (cfg.enforce_constraints) project_constraints(m);

  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(cfg.seed);

  const std::size_t mu_end = m.transition_offset();
  double scale = 1.0;
  std::size_t step = 0;
  detail::SparseGrad grad;
  std::vector<std::uint32_t> touched;
  std::vector<double> scratch;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      grad.clear();
      for (std::size_t k = begin; k < end; ++k)
        detail::sequence_nll_grad(m, scale, data[order[k]], grad);

      const double eta = cfg.eta0 / (1.0 + static_cast<double>(step) / t0);
      ++step;
      const double decay = 1.0 - eta * cfg.l2 * static_cast<double>(end - begin) / n;
      if (decay <= 0.0) {
        // Step so large that the shrink would flip signs; fall back to an
        // explicit update on the materialized weights.
        materialize(m, scale);
        for (auto& x : m.params()) x *= std::max(decay, 0.0);
      } else {
        scale *= decay;
      }
      auto v = m.params();
      touched.clear();
      for (const auto& [j, g] : grad) {
        v[j] -= eta * g / scale;
        if (j < mu_end && m.constraint(static_cast<std::uint32_t>(j / kNumLabels)) != Constraint::None)
          touched.push_back(static_cast<std::uint32_t>(j / kNumLabels));
      }
      if (cfg.enforce_constraints && !touched.empty()) {
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        // Projection commutes with positive scaling, so project v directly.
        for (auto f : touched) m.set_mu_vector(f, pava_project(m.mu_vector(f), m.constraint(f)));
      }
      if (scale < 1e-9) materialize(m, scale);
    }
    materialize(m, scale);
    result.epoch_loss.push_back(nll_and_gradient(m, data, cfg.l2, scratch));
  }
  if (cfg.enforce_constraints) project_constraints(m);
  m.config["training"] = cfg.to_json();
  return result;
}

}  // namespace stancekit::icrf
