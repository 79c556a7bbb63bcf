#include <cmath>

#include "stancekit/features.hpp"

namespace stancekit::features {

int bin_index(double z, const std::array<double, 4>& cuts) {
  int k = 0;
  for (double c : cuts)
    if (z >= c) ++k;
  return k;
}

BinningStats BinningStats::fit(std::span<const FeatureVector> raw,
                               std::span<const std::string> names) {
  BinningStats s;
  const auto n = static_cast<double>(raw.size());
  for (const auto& name : names) {
    Moments m;
    if (!raw.empty()) {
      double sum = 0.0;
      for (const auto& v : raw)
        if (auto it = v.find(name); it != v.end()) sum += it->second;
      m.mean = sum / n;
      double ss = 0.0;
      for (const auto& v : raw) {
        auto it = v.find(name);
        const double d = (it == v.end() ? 0.0 : it->second) - m.mean;
        ss += d * d;
      }
      m.sd = std::sqrt(ss / n);
    }
    s.moments_[name] = m;
  }
  return s;
}

nlohmann::json BinningStats::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, m] : moments_) j[name] = {m.mean, m.sd};
  return j;
}

BinningStats BinningStats::from_json(const nlohmann::json& j) {
  BinningStats s;
  for (const auto& [name, m] : j.items()) s.moments_[name] = {m.at(0).get<double>(), m.at(1).get<double>()};
  return s;
}

FeatureVector standardize_and_bin(const FeatureVector& raw, const BinningStats& stats,
                                  const std::array<double, 4>& cuts) {
  FeatureVector out;
  for (const auto& [name, x] : raw)
    if (!stats.moments().count(name)) out.emplace(name, x);
  for (const auto& [name, m] : stats.moments()) {
    auto it = raw.find(name);
    const double x = it == raw.end() ? 0.0 : it->second;
    const int bin = m.sd > 0.0 ? bin_index((x - m.mean) / m.sd, cuts) : 2;
    out[name + "#bin_" + std::to_string(bin)] = 1.0;
  }
  return out;
}

}  // namespace stancekit::features
