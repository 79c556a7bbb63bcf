#include <algorithm>

#include "stancekit/icrf.hpp"

namespace stancekit::icrf {

FeatureIndex::FeatureIndex(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  ids_.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
}

std::optional<std::uint32_t> FeatureIndex::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Model::Model(FeatureIndex features, std::vector<Constraint> constraints)
    : features_(std::move(features)), constraints_(std::move(constraints)) {
  if (constraints_.empty()) constraints_.assign(features_.size(), Constraint::None);
  if (constraints_.size() != features_.size())
    throw std::invalid_argument("constraint registry does not match the feature index");
  params_.assign(features_.size() * kNumLabels + kNumLabels * kNumLabels + kNumLabels, 0.0);
}

LabelVector Model::mu_vector(std::uint32_t f) const {
  LabelVector v{};
  std::copy_n(params_.begin() + static_cast<std::ptrdiff_t>(mu_offset(f)), kNumLabels, v.begin());
  return v;
}

void Model::set_mu_vector(std::uint32_t f, const LabelVector& v) {
  std::copy(v.begin(), v.end(), params_.begin() + static_cast<std::ptrdiff_t>(mu_offset(f)));
}

std::size_t Model::constrained_count() const {
  return static_cast<std::size_t>(std::count_if(constraints_.begin(), constraints_.end(),
                                                [](Constraint c) { return c != Constraint::None; }));
}

void project_constraints(Model& m) {
  for (std::uint32_t f = 0; f < m.num_features(); ++f)
    if (m.constraint(f) != Constraint::None)
      m.set_mu_vector(f, pava_project(m.mu_vector(f), m.constraint(f)));
}

bool satisfies_constraints(const Model& m) {
  for (std::uint32_t f = 0; f < m.num_features(); ++f)
    if (!is_monotone(m.mu_vector(f), m.constraint(f))) return false;
  return true;
}

Sequence compile(const FeatureIndex& index, std::span<const features::FeatureVector> xs,
                 std::span<const SentimentLabel> labels) {
  if (!labels.empty() && labels.size() != xs.size())
    throw std::invalid_argument("label count does not match sequence length");
  Sequence s;
  s.positions.reserve(xs.size());
  for (const auto& x : xs) {
    Observation obs;
    for (const auto& [name, value] : x)
      if (value != 0.0)
        if (auto id = index.find(name)) obs.emplace_back(*id, value);
    s.positions.push_back(std::move(obs));
  }
  for (auto l : labels) s.labels.push_back(static_cast<std::uint8_t>(label_index(l)));
  return s;
}

}  // namespace stancekit::icrf
