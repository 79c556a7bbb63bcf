#ifndef STANCEKIT_SHALLOW_HPP_
#define STANCEKIT_SHALLOW_HPP_

// Non-sequence classifiers: the lexicon-count polarity baseline, the
// pronoun-distance features, and a regularized multinomial logistic
// regression shared by the distance baseline and the dispute detector.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stancekit/corpus.hpp"
#include "stancekit/features.hpp"
#include "stancekit/labels.hpp"
#include "stancekit/lexicon.hpp"

namespace stancekit::shallow {

/// Agree if the utterance has more M_p than M_n unigram hits, disagree if
/// fewer, neutral otherwise.
Stance polarity_baseline(const corpus::Utterance& u, const lexicon::Lexicon& lex);

struct DistanceStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

bool is_second_person(std::string_view lowercase_token);

/// Token distance from every sentiment word to its nearest second-person
/// pronoun. Without sentiment words or pronouns all three equal the
/// utterance length.
DistanceStats distance_features(const corpus::Utterance& u, const lexicon::Lexicon& lex);

inline constexpr std::string_view kDistMin = "dist:min";
inline constexpr std::string_view kDistMax = "dist:max";
inline constexpr std::string_view kDistMean = "dist:mean";
features::FeatureVector distance_vector(const DistanceStats& d);

/// Weights are stored flat: w(k, f) at k * F + f, then one bias per class.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<std::string> classes, std::vector<std::string> feature_names);

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& feature_names() const { return names_; }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t num_features() const { return names_.size(); }
  std::optional<std::uint32_t> feature_id(std::string_view name) const;
  std::optional<std::size_t> class_index(std::string_view name) const;

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  double& weight(std::size_t k, std::uint32_t f) { return params_[k * names_.size() + f]; }
  double weight(std::size_t k, std::uint32_t f) const { return params_[k * names_.size() + f]; }
  double& bias(std::size_t k) { return params_[classes_.size() * names_.size() + k]; }
  double bias(std::size_t k) const { return params_[classes_.size() * names_.size() + k]; }

  nlohmann::json config = nlohmann::json::object();

 private:
  std::vector<std::string> classes_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<double> params_;
};

struct LogisticConfig {
  double l2 = 1e-3;
  std::size_t epochs = 200;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
  static LogisticConfig from_json(const nlohmann::json& j);
};

/// Sparse rows over a model's feature ids; unknown names are dropped.
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;
SparseRow compile_row(const LinearModel& m, const features::FeatureVector& x);

/// Mean negative log-likelihood plus (l2/2)||W||^2 (bias unpenalized);
/// `grad` is overwritten in the model's flat layout.
double logistic_nll_and_gradient(const LinearModel& m, std::span<const SparseRow> rows,
                                 std::span<const std::size_t> labels, double l2,
                                 std::vector<double>& grad);

struct LogisticResult {
  LinearModel model;
  std::vector<double> epoch_loss;
};

/// Full-batch gradient descent with step 1/L for an upper bound L on the
/// curvature. `classes` fixes the class order; when empty the sorted
/// distinct labels are used. Throws std::invalid_argument if fewer than two
/// classes occur in `labels`.
LogisticResult logistic_train(std::span<const features::FeatureVector> xs,
                              std::span<const std::string> labels, const LogisticConfig& cfg,
                              std::vector<std::string> classes = {});

struct ClassPrediction {
  std::size_t index = 0;
  std::string label;
  std::vector<double> probabilities;
};

/// Softmax probabilities; ties in the argmax go to the earlier class.
ClassPrediction logistic_predict(const LinearModel& m, const features::FeatureVector& x);
ClassPrediction logistic_predict(const LinearModel& m, const SparseRow& row);

inline constexpr int kLogisticFormatVersion = 1;

nlohmann::json linear_model_to_json(const LinearModel& m);
/// Throws std::runtime_error on malformed input or a format version mismatch.
LinearModel linear_model_from_json(const nlohmann::json& j);
void save_linear_model(const LinearModel& m, const std::filesystem::path& path);
LinearModel load_linear_model(const std::filesystem::path& path);

}  // namespace stancekit::shallow

#endif  // STANCEKIT_SHALLOW_HPP_
