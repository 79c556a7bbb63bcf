#include <random>

#include "stancekit/dispute.hpp"

namespace stancekit::dispute {

shallow::LinearModel train_dispute(std::span<const features::FeatureVector> xs, const std::vector<bool>& labels,
                                   const shallow::LogisticConfig& cfg) {
  if (xs.size() != labels.size()) throw std::invalid_argument("train_dispute: length mismatch");
  std::vector<std::string> names;
  names.reserve(labels.size());
  for (bool y : labels) names.emplace_back(y ? kDisputeClass : kNonDisputeClass);
  return shallow::logistic_train(xs, names, cfg,
                                 {std::string(kNonDisputeClass), std::string(kDisputeClass)})
      .model;
}

DisputePrediction predict_dispute(const shallow::LinearModel& m, const features::FeatureVector& x) {
  const auto p = shallow::logistic_predict(m, x);
  const auto k = m.class_index(kDisputeClass);
  if (!k) throw std::invalid_argument("model has no dispute class");
  return {p.index == *k, p.probabilities[*k]};
}

std::vector<bool> all_dispute_baseline(std::size_t n) { return std::vector<bool>(n, true); }

std::vector<bool> random_baseline(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<bool> out(n);
  // Top bit of each draw; avoids distribution implementation differences.
  for (std::size_t i = 0; i < n; ++i) out[i] = (rng() >> 63) != 0;
  return out;
}

}  // namespace stancekit::dispute
