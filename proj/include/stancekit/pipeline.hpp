#ifndef STANCEKIT_PIPELINE_HPP_
#define STANCEKIT_PIPELINE_HPP_

// End-to-end wiring shared by the CLI and the test suites: the trained
// tagger (featurizer + isotonic CRF), the shallow baselines, the dispute
// detector, k-fold harnesses and the cross-validated result tables.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stancekit/corpus.hpp"
#include "stancekit/dispute.hpp"
#include "stancekit/eval.hpp"
#include "stancekit/features.hpp"
#include "stancekit/icrf.hpp"
#include "stancekit/lexicon.hpp"
#include "stancekit/shallow.hpp"

namespace stancekit::pipeline {

/// Per-turn label sequences of one discussion.
using TurnLabels = std::vector<std::vector<SentimentLabel>>;

struct TaggerOptions {
  features::FeatureConfig features = features::FeatureConfig::defaults();
  icrf::TrainConfig train;
  bool isotonic = true;
  /// Drop training turns whose utterances are all neutral.
  bool downsample = false;
  /// A feature is constrained when its text unit has |score| >= this.
  double constraint_threshold = 0.3;

  nlohmann::json to_json() const;
};

/// Constraint direction per index entry from the lexicon sign.
std::vector<icrf::Constraint> constraint_registry(const icrf::FeatureIndex& index, const lexicon::Lexicon& lex,
                                                  double threshold);

class Tagger {
 public:
  Tagger() = default;
  Tagger(features::Featurizer featurizer, icrf::Model model)
      : featurizer_(std::move(featurizer)), model_(std::move(model)) {}

  /// Fits every statistic on `train` only.
  static Tagger train(std::span<const corpus::Discussion> train, const lexicon::Lexicon& lex,
                      const TaggerOptions& opts);

  TurnLabels tag(const corpus::Discussion& d) const;
  std::vector<TurnLabels> tag(std::span<const corpus::Discussion> ds) const;

  const features::Featurizer& featurizer() const { return featurizer_; }
  const icrf::Model& model() const { return model_; }

  void save(const std::filesystem::path& path) const;
  static Tagger load(const std::filesystem::path& path);

 private:
  features::Featurizer featurizer_;
  icrf::Model model_;
};

/// One sequence per non-empty turn, in discussion order.
std::vector<icrf::Sequence> compile_sequences(const icrf::FeatureIndex& index,
                                              std::span<const features::DiscussionFeatures> feats,
                                              std::span<const corpus::Discussion> ds, bool with_labels);

struct GoldUnits {
  std::vector<Stance> stance;
  std::vector<bool> turn_derived;
};

/// Flattened 3-way gold in discussion/turn/utterance order.
GoldUnits gold_units(std::span<const corpus::Discussion> ds);
std::vector<Stance> flatten_stances(std::span<const TurnLabels> tags);

struct TaggerScores {
  eval::EvalReport strict;
  eval::EvalReport soft;

  nlohmann::json to_json() const;
};

TaggerScores score_tagger(std::span<const corpus::Discussion> gold, std::span<const Stance> pred);

/// Prediction JSONL: {"discussion","turn","utterance","label","stance"} per utterance.
void write_predictions(std::span<const corpus::Discussion> ds, std::span<const TurnLabels> tags, std::ostream& out);
/// Aligns a prediction file with `ds` by (discussion, utterance) id.
/// Throws corpus::ParseError when a unit has no prediction.
std::vector<Stance> read_predictions(std::istream& in, std::span<const corpus::Discussion> ds);

std::vector<Stance> polarity_predictions(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex);

/// Logistic regression over z-scored min/max/mean pronoun distances.
class DistanceBaseline {
 public:
  static DistanceBaseline train(std::span<const corpus::Discussion> train, const lexicon::Lexicon& lex,
                                const shallow::LogisticConfig& cfg);
  std::vector<Stance> predict(std::span<const corpus::Discussion> ds) const;

  nlohmann::json to_json() const;

 private:
  features::FeatureVector vector(const corpus::Utterance& u) const;

  lexicon::Lexicon lex_;
  features::BinningStats stats_;
  shallow::LinearModel model_;
};

std::vector<dispute::TaggedUnit> tagged_units(const corpus::Discussion& d, const TurnLabels& tags);

class DisputeDetector {
 public:
  /// `units[i]` are the tagged units of `train[i]`.
  static DisputeDetector train(std::span<const corpus::Discussion> train,
                               std::span<const std::vector<dispute::TaggedUnit>> units,
                               const dispute::DisputeConfig& cfg, const shallow::LogisticConfig& lcfg);
  dispute::DisputePrediction predict(const corpus::Discussion& d, std::span<const dispute::TaggedUnit> units) const;

  const dispute::DisputeFeaturizer& featurizer() const { return featurizer_; }
  const shallow::LinearModel& model() const { return model_; }

  void save(const std::filesystem::path& path) const;
  static DisputeDetector load(const std::filesystem::path& path);

 private:
  dispute::DisputeFeaturizer featurizer_;
  shallow::LinearModel model_;
};

/// Throws std::invalid_argument when a discussion lacks dispute gold.
std::vector<bool> dispute_gold(std::span<const corpus::Discussion> ds);

template <typename T>
std::vector<T> select(std::span<const T> xs, std::span<const std::size_t> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(xs[i]);
  return out;
}

/// Training-fold indices for fold `f`: every index outside folds[f], ascending.
std::vector<std::size_t> complement(const std::vector<std::vector<std::size_t>>& folds, std::size_t f);

struct TaggerFold {
  TaggerScores scores;
  /// Statistics fitted on the training folds, exposed for leakage probes.
  features::BinningStats binning;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

std::vector<TaggerFold> crossval_tagger(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex,
                                        const TaggerOptions& opts, std::size_t k, std::uint64_t seed);

struct DisputeFold {
  eval::BinaryScores scores;
  dispute::DisputeFeaturizer featurizer;
};

/// `units[i]` are the tagged units of `ds[i]`.
std::vector<DisputeFold> crossval_dispute(std::span<const corpus::Discussion> ds,
                                          std::span<const std::vector<dispute::TaggedUnit>> units,
                                          const dispute::DisputeConfig& cfg, const shallow::LogisticConfig& lcfg,
                                          std::size_t k, std::uint64_t seed);

/// Mean/sd summary of per-fold tagger or dispute scores.
nlohmann::json summarize(std::span<const TaggerFold> folds);
nlohmann::json summarize(std::span<const DisputeFold> folds);

struct TableOptions {
  std::size_t k = 5;
  std::uint64_t seed = 1;
  TaggerOptions tagger;
  shallow::LogisticConfig logistic;
};

/// Per-class strict/soft F1 for the baselines and CRF variants, the
/// cumulative feature ablation, and paired t-tests against isotonic CRF.
nlohmann::json tagger_tables(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex,
                             const TableOptions& opts);

/// Baselines, logistic regression and the feature-set ablation with paired
/// t-tests against the best row.
nlohmann::json dispute_tables(std::span<const corpus::Discussion> ds,
                              std::span<const std::vector<dispute::TaggedUnit>> units, const TableOptions& opts);

/// Markdown rendering of the JSON tables above.
void render_tables(const nlohmann::json& tables, std::ostream& out);

}  // namespace stancekit::pipeline

#endif  // STANCEKIT_PIPELINE_HPP_
