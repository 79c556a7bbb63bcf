#ifndef STANCEKIT_EVAL_HPP_
#define STANCEKIT_EVAL_HPP_

// Per-class strict/soft P/R/F1 over the collapsed 3-way stances, binary
// scores for dispute detection, chi-square feature ranking and the paired
// t-test over fold scores.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stancekit/features.hpp"
#include "stancekit/labels.hpp"

namespace stancekit::eval {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;
  /// Class absent from both gold and predictions; scores are 0 by convention.
  bool empty = false;
};

struct EvalReport {
  bool soft = false;
  std::array<ClassScores, 3> per_class{};  // indexed by stance_index
  double accuracy = 0.0;
  /// confusion[gold][pred].
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::size_t n = 0;

  const ClassScores& operator[](Stance s) const { return per_class[stance_index(s)]; }
  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument on length mismatch.
EvalReport strict_f1(std::span<const Stance> gold, std::span<const Stance> pred);

/// As strict, except a unit whose gold stance was inherited from a turn-level
/// annotation and that is predicted neutral counts as a neutral true positive.
EvalReport soft_f1(std::span<const Stance> gold, const std::vector<bool>& turn_derived,
                   std::span<const Stance> pred);

template <typename T>
double accuracy(std::span<const T> gold, std::span<const T> pred) {
  if (gold.size() != pred.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (gold.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hit += gold[i] == pred[i];
  return static_cast<double>(hit) / static_cast<double>(gold.size());
}

struct BinaryScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;

  nlohmann::json to_json() const;
};

/// Scores for the positive class.
BinaryScores binary_scores(const std::vector<bool>& gold, const std::vector<bool>& pred);

/// N(ad-bc)^2 / ((a+b)(c+d)(a+c)(b+d)); 0 when any margin is 0.
/// a = feature & class, b = feature & other, c = no feature & class, d = neither.
double chi2_statistic(double a, double b, double c, double d);

struct Chi2Entry {
  std::string feature;
  double chi2 = 0.0;
  std::string cls;
  /// '+' when the feature is over-represented in the class, '-' otherwise.
  char direction = '+';
};

/// Ranks every feature present in some unit against `target` vs the rest.
/// Descending chi2, ties by feature name.
std::vector<Chi2Entry> chi2_rank(std::span<const features::FeatureVector> units,
                                 std::span<const std::string> unit_classes, const std::string& target);

/// feature TAB chi2 TAB class+direction.
void write_chi2_tsv(std::span<const Chi2Entry> ranked, std::ostream& out);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  std::size_t df = 0;
  double mean_difference = 0.0;
  /// Nonzero differences with zero variance: t is infinite and p is 0.
  bool degenerate = false;

  nlohmann::json to_json() const;
};

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);
/// P(T <= t) for Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided paired t-test; throws std::invalid_argument if n < 2 or the
/// lengths differ.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

struct MeanSd {
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single value.
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> xs);

}  // namespace stancekit::eval

#endif  // STANCEKIT_EVAL_HPP_
