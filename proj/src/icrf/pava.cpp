#include "stancekit/icrf.hpp"

namespace stancekit::icrf {

namespace {

// Pool adjacent violators for a nondecreasing fit with unit weights.
LabelVector pava_increasing(const LabelVector& v) {
  std::array<double, kNumLabels> sum{};
  std::array<std::size_t, kNumLabels> count{};
  std::size_t blocks = 0;
  for (double x : v) {
    sum[blocks] = x;
    count[blocks] = 1;
    ++blocks;
    while (blocks > 1 &&
           sum[blocks - 2] / static_cast<double>(count[blocks - 2]) >
               sum[blocks - 1] / static_cast<double>(count[blocks - 1])) {
      sum[blocks - 2] += sum[blocks - 1];
      count[blocks - 2] += count[blocks - 1];
      --blocks;
    }
  }
  LabelVector out{};
  std::size_t pos = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double mean = count[b] == 1 ? sum[b] : sum[b] / static_cast<double>(count[b]);
    for (std::size_t k = 0; k < count[b]; ++k) out[pos++] = mean;
  }
  return out;
}

}  // namespace

LabelVector pava_project(const LabelVector& v, Constraint direction) {
  switch (direction) {
    case Constraint::None:
      return v;
    case Constraint::Increasing:
      return pava_increasing(v);
    case Constraint::Decreasing: {
      LabelVector neg{};
      for (std::size_t i = 0; i < kNumLabels; ++i) neg[i] = -v[i];
      auto out = pava_increasing(neg);
      for (auto& x : out) x = -x;
      return out;
    }
  }
  return v;
}

bool is_monotone(const LabelVector& v, Constraint direction) {
  for (std::size_t i = 1; i < kNumLabels; ++i) {
    if (direction == Constraint::Increasing && v[i - 1] > v[i]) return false;
    if (direction == Constraint::Decreasing && v[i - 1] < v[i]) return false;
  }
  return true;
}

}  // namespace stancekit::icrf
