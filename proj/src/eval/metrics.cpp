#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "stancekit/eval.hpp"
#include "stancekit/text.hpp"

namespace stancekit::eval {

namespace {

EvalReport score(std::span<const Stance> gold, std::span<const Stance> pred) {
  EvalReport r;
  r.n = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) ++r.confusion[stance_index(gold[i])][stance_index(pred[i])];
  std::size_t correct = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    auto& s = r.per_class[c];
    s.tp = r.confusion[c][c];
    correct += s.tp;
    for (std::size_t o = 0; o < 3; ++o) {
      s.support += r.confusion[c][o];
      if (o != c) {
        s.fn += r.confusion[c][o];
        s.fp += r.confusion[o][c];
      }
    }
    s.empty = s.support == 0 && s.fp == 0;
    s.precision = s.tp + s.fp ? static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp) : 0.0;
    s.recall = s.support ? static_cast<double>(s.tp) / static_cast<double>(s.support) : 0.0;
    s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  }
  r.accuracy = r.n ? static_cast<double>(correct) / static_cast<double>(r.n) : 0.0;
  return r;
}

}  // namespace

EvalReport strict_f1(std::span<const Stance> gold, std::span<const Stance> pred) {
  if (gold.size() != pred.size()) throw std::invalid_argument("strict_f1: length mismatch");
  return score(gold, pred);
}

EvalReport soft_f1(std::span<const Stance> gold, const std::vector<bool>& turn_derived,
                   std::span<const Stance> pred) {
  if (gold.size() != pred.size() || gold.size() != turn_derived.size())
    throw std::invalid_argument("soft_f1: length mismatch");
  std::vector<Stance> relabeled(gold.begin(), gold.end());
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (turn_derived[i] && pred[i] == Stance::Neutral) relabeled[i] = Stance::Neutral;
  auto r = score(relabeled, pred);
  r.soft = true;
  return r;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json classes = nlohmann::json::object();
  for (auto s : kAllStances) {
    const auto& c = per_class[stance_index(s)];
    classes[std::string(to_string(s))] = {{"precision", c.precision}, {"recall", c.recall},
                                          {"f1", c.f1},               {"tp", c.tp},
                                          {"fp", c.fp},               {"fn", c.fn},
                                          {"support", c.support},     {"empty", c.empty}};
  }
  nlohmann::json labels = nlohmann::json::array();
  for (auto s : kAllStances) labels.push_back(to_string(s));
  return {{"mode", soft ? "soft" : "strict"},
          {"classes", classes},
          {"accuracy", accuracy},
          {"confusion", {{"labels", labels}, {"matrix", confusion}}},
          {"n", n}};
}

nlohmann::json BinaryScores::to_json() const {
  return {{"precision", precision}, {"recall", recall}, {"f1", f1}, {"accuracy", accuracy}, {"n", n}};
}

BinaryScores binary_scores(const std::vector<bool>& gold, const std::vector<bool>& pred) {
  if (gold.size() != pred.size()) throw std::invalid_argument("binary_scores: length mismatch");
  std::size_t tp = 0, fp = 0, fn = 0, hit = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    tp += gold[i] && pred[i];
    fp += !gold[i] && pred[i];
    fn += gold[i] && !pred[i];
    hit += gold[i] == pred[i];
  }
  BinaryScores s;
  s.n = gold.size();
  s.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  s.accuracy = s.n ? static_cast<double>(hit) / static_cast<double>(s.n) : 0.0;
  return s;
}

double chi2_statistic(double a, double b, double c, double d) {
  const double denom = (a + b) * (c + d) * (a + c) * (b + d);
  if (denom == 0.0) return 0.0;
  const double diff = a * d - b * c;
  return (a + b + c + d) * diff * diff / denom;
}

std::vector<Chi2Entry> chi2_rank(std::span<const features::FeatureVector> units,
                                 std::span<const std::string> unit_classes, const std::string& target) {
  if (units.size() != unit_classes.size()) throw std::invalid_argument("chi2_rank: length mismatch");
  std::size_t in_class = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> present;  // (in class, other)
  for (std::size_t i = 0; i < units.size(); ++i) {
    const bool hit = unit_classes[i] == target;
    in_class += hit;
    for (const auto& [name, v] : units[i]) {
      if (v == 0.0) continue;
      auto& p = present[name];
      (hit ? p.first : p.second) += 1;
    }
  }
  const double n_class = static_cast<double>(in_class);
  const double n_other = static_cast<double>(units.size() - in_class);
  std::vector<Chi2Entry> out;
  out.reserve(present.size());
  for (const auto& [name, p] : present) {
    const double a = static_cast<double>(p.first), b = static_cast<double>(p.second);
    const double c = n_class - a, d = n_other - b;
    out.push_back({name, chi2_statistic(a, b, c, d), target, a * d >= b * c ? '+' : '-'});
  }
  std::stable_sort(out.begin(), out.end(), [](const Chi2Entry& x, const Chi2Entry& y) {
    if (x.chi2 != y.chi2) return x.chi2 > y.chi2;
    return x.feature < y.feature;
  });
  return out;
}

void write_chi2_tsv(std::span<const Chi2Entry> ranked, std::ostream& out) {
  for (const auto& e : ranked) out << e.feature << '\t' << text::fixed(e.chi2, 6) << '\t' << e.cls << e.direction << '\n';
}

}  // namespace stancekit::eval
