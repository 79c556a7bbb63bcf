#ifndef STANCEKIT_ICRF_HPP_
#define STANCEKIT_ICRF_HPP_

// Linear-chain CRF over the five ordinal sentiment labels, with isotonic
// (monotone-in-label) constraints on the node weights of lexicon features.
//
// Parameters live in one flat vector:
//   [ mu(f, l) for f in features, l in NN..PP ][ transition(a, b) ][ bias(l) ]
// Training is projected stochastic gradient descent; after every update the
// touched constrained 5-vectors are projected back onto the monotone cone
// with pool-adjacent-violators.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stancekit/features.hpp"
#include "stancekit/labels.hpp"

namespace stancekit::icrf {

using LabelVector = std::array<double, kNumLabels>;
using TransitionMatrix = std::array<LabelVector, kNumLabels>;

enum class Constraint : std::uint8_t { None, Increasing, Decreasing };

/// Euclidean projection onto nondecreasing (Increasing) or nonincreasing
/// (Decreasing) vectors. `None` returns the input unchanged.
LabelVector pava_project(const LabelVector& v, Constraint direction);
bool is_monotone(const LabelVector& v, Constraint direction);

/// Name <-> dense id map. Ids follow sorted name order.
class FeatureIndex {
 public:
  FeatureIndex() = default;
  explicit FeatureIndex(std::vector<std::string> names);

  std::optional<std::uint32_t> find(std::string_view name) const;
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

class Model {
 public:
  Model() = default;
  /// Zero weights. `constraints` is empty (no constraints) or one per feature.
  explicit Model(FeatureIndex features, std::vector<Constraint> constraints = {});

  const FeatureIndex& features() const { return features_; }
  std::size_t num_features() const { return features_.size(); }
  std::size_t num_params() const { return params_.size(); }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  static constexpr std::size_t mu_offset(std::uint32_t f) { return std::size_t{f} * kNumLabels; }
  std::size_t transition_offset() const { return num_features() * kNumLabels; }
  std::size_t bias_offset() const { return transition_offset() + kNumLabels * kNumLabels; }

  double mu(std::uint32_t f, std::size_t l) const { return params_[mu_offset(f) + l]; }
  double& mu(std::uint32_t f, std::size_t l) { return params_[mu_offset(f) + l]; }
  LabelVector mu_vector(std::uint32_t f) const;
  void set_mu_vector(std::uint32_t f, const LabelVector& v);
  double transition(std::size_t a, std::size_t b) const {
    return params_[transition_offset() + a * kNumLabels + b];
  }
  double& transition(std::size_t a, std::size_t b) {
    return params_[transition_offset() + a * kNumLabels + b];
  }
  double bias(std::size_t l) const { return params_[bias_offset() + l]; }
  double& bias(std::size_t l) { return params_[bias_offset() + l]; }

  Constraint constraint(std::uint32_t f) const { return constraints_[f]; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t constrained_count() const;

  /// Free-form training/featurizer echo carried through serialization.
  nlohmann::json config = nlohmann::json::object();

 private:
  FeatureIndex features_;
  std::vector<Constraint> constraints_;
  std::vector<double> params_ = std::vector<double>(kNumLabels * kNumLabels + kNumLabels, 0.0);
};

using Observation = std::vector<std::pair<std::uint32_t, double>>;

/// One turn: an observation per utterance plus (optional) gold label indices.
struct Sequence {
  std::vector<Observation> positions;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return positions.size(); }
};

/// Maps feature names to ids; names absent from the index are dropped.
Sequence compile(const FeatureIndex& index, std::span<const features::FeatureVector> xs,
                 std::span<const SentimentLabel> labels = {});

struct Potentials {
  std::vector<LabelVector> node;
  TransitionMatrix transition{};

  std::size_t size() const { return node.size(); }
};

/// node(i, l) = bias(l) + sum_f mu(f, l) * x_i[f]; transitions are the model's.
Potentials log_potentials(const Model& m, const Sequence& s);

double path_score(const Potentials& p, std::span<const std::uint8_t> labels);

struct Marginals {
  double log_z = 0.0;
  std::vector<LabelVector> unary;
  /// pairwise[i][a][b] = P(y_i = a, y_{i+1} = b).
  std::vector<TransitionMatrix> pairwise;
};

/// Log-space forward-backward. Requires at least one position.
Marginals forward_backward(const Potentials& p);

/// Highest-scoring label indices. Among tied paths the lexicographically
/// smallest wins (lower label first, earlier positions deciding first).
std::vector<std::uint8_t> viterbi(const Potentials& p);
std::vector<SentimentLabel> viterbi(const Model& m, const Sequence& s);

struct Prediction {
  std::vector<SentimentLabel> labels;
  std::vector<Stance> stances;
};

Prediction predict_and_collapse(const Model& m, const Sequence& s);

/// Viterbi over many sequences, parallel over sequences.
std::vector<std::vector<SentimentLabel>> viterbi_batch(const Model& m, std::span<const Sequence> seqs);

/// loss = -sum log p(y|x) + (l2/2)||theta||^2; `grad` is resized and
/// overwritten with expected - empirical counts + l2 * theta. Per-sequence
/// work runs in parallel; the reduction is in sequence order, so the result
/// does not depend on the thread count.
double nll_and_gradient(const Model& m, std::span<const Sequence> batch, double l2,
                        std::vector<double>& grad);

namespace reference {
double nll_and_gradient(const Model& m, std::span<const Sequence> batch, double l2,
                        std::vector<double>& grad);
std::vector<std::vector<SentimentLabel>> viterbi_batch(const Model& m, std::span<const Sequence> seqs);
}  // namespace reference

/// Projects every constrained mu-vector.
void project_constraints(Model& m);
bool satisfies_constraints(const Model& m);

struct TrainConfig {
  double eta0 = 0.1;
  /// Step decay horizon; 0 means the number of training sequences.
  double t0 = 0.0;
  double l2 = 1.0;
  std::size_t epochs = 30;
  std::size_t batch_size = 1;
  std::uint64_t seed = 1;
  /// When false, constraints are recorded but never projected.
  bool enforce_constraints = true;

  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct TrainResult {
  Model model;
  /// Full objective after each epoch.
  std::vector<double> epoch_loss;
};

/// Throws std::invalid_argument on an empty training set or unlabeled sequences.
TrainResult train(Model initial, std::span<const Sequence> data, const TrainConfig& cfg);

inline constexpr int kModelFormatVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelVersionError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);
void save_model(const Model& m, std::ostream& out);
void save_model(const Model& m, const std::filesystem::path& path);
Model load_model(std::istream& in);
Model load_model(const std::filesystem::path& path);

}  // namespace stancekit::icrf

#endif  // STANCEKIT_ICRF_HPP_
