#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "stancekit/dispute.hpp"
#include "stancekit/text.hpp"

namespace stancekit::dispute {

std::vector<double> gaussian_smooth(std::span<const double> xs, std::span<const double> values, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (xs.size() != values.size()) throw std::invalid_argument("gaussian_smooth: length mismatch");
  const double reach = 3.0 * sigma;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double d = xs[j] - xs[i];
      if (std::fabs(d) > reach) continue;
      const double w = std::exp(-0.5 * d * d / (sigma * sigma));
      num += w * values[j];
      den += w;
    }
    // Normalized weights form a convex combination; clamp rounding overshoot.
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out[i] = std::clamp(num / den, *lo, *hi);
  }
  return out;
}

std::vector<double> natural_cubic_spline(std::span<const double> xs, std::span<const double> ys,
                                         std::span<const double> at) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("natural_cubic_spline: bad knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("natural_cubic_spline: knots must increase");
  std::vector<double> out;
  out.reserve(at.size());
  if (n == 1) {
    out.assign(at.size(), ys[0]);
    return out;
  }
  // Second derivatives with M_0 = M_{n-1} = 0 via the Thomas algorithm.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = xs[i] - xs[i - 1], h1 = xs[i + 1] - xs[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < k; ++i) {
      const double lower = xs[i + 1] - xs[i];
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
  }
  for (double x : at) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t seg = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    seg = std::min(seg, n - 2);
    const double h = xs[seg + 1] - xs[seg];
    const double a = (xs[seg + 1] - x) / h, b = (x - xs[seg]) / h;
    out.push_back(a * ys[seg] + b * ys[seg + 1] +
                  ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * h * h / 6.0);
  }
  return out;
}

std::vector<SpeakerFlow> sentiment_flow(std::span<const TaggedUnit> units, const FlowOptions& opts) {
  if (!(opts.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (opts.samples_per_unit == 0) throw std::invalid_argument("samples_per_unit must be positive");
  std::map<std::string, SpeakerFlow> by_speaker;
  std::map<std::string, std::vector<double>> turn_starts;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto& f = by_speaker[units[i].speaker];
    f.speaker = units[i].speaker;
    if (i == 0 || units[i - 1].turn != units[i].turn) turn_starts[units[i].speaker].push_back(static_cast<double>(i));
    f.unit_x.push_back(static_cast<double>(i));
    f.raw.push_back(static_cast<double>(to_int(units[i].label)));
  }
  const auto spu = static_cast<double>(opts.samples_per_unit);
  std::vector<SpeakerFlow> flows;
  for (auto& [speaker, f] : by_speaker) {
    f.smoothed = gaussian_smooth(f.unit_x, f.raw, opts.sigma);
    // Grid x = (first * spu + k) / spu keeps knot positions exact.
    const double first = f.unit_x.front() * spu, last = f.unit_x.back() * spu;
    std::vector<double> grid;
    for (double k = first; k <= last; k += 1.0) grid.push_back(k / spu);
    const auto ys = natural_cubic_spline(f.unit_x, f.smoothed, grid);
    const auto& starts = turn_starts[speaker];
    for (std::size_t i = 0; i < grid.size(); ++i)
      f.samples.push_back({grid[i], std::clamp(ys[i], -2.0, 2.0),
                           std::binary_search(starts.begin(), starts.end(), grid[i])});
    flows.push_back(std::move(f));
  }
  return flows;
}

void write_flow_csv(std::span<const SpeakerFlow> flows, std::ostream& out) {
  out << "speaker,sample_x,smoothed_y,is_turn_boundary\n";
  for (const auto& f : flows)
    for (const auto& s : f.samples)
      out << f.speaker << ',' << text::fixed(s.x, 6) << ',' << text::fixed(s.y, 6) << ','
          << (s.turn_boundary ? 1 : 0) << '\n';
}

}  // namespace stancekit::dispute
