#ifndef STANCEKIT_DISPUTE_HPP_
#define STANCEKIT_DISPUTE_HPP_

// Discussion-level dispute detection from tagged sentiment sequences, plus
// the per-speaker smoothed sentiment-flow export.
//
// Feature namespaces: "dlex:" (words of the discussion), "dtop:" (category
// n-grams), "ddis:" (binned size statistics), "dsent:g:" (whole discussion)
// and "dsent:l1:".."dsent:l3:" (three equal-length stages).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stancekit/corpus.hpp"
#include "stancekit/features.hpp"
#include "stancekit/labels.hpp"
#include "stancekit/shallow.hpp"

namespace stancekit::dispute {

/// One tagged unit (utterance) in discussion order.
struct TaggedUnit {
  SentimentLabel label = SentimentLabel::O;
  std::string speaker;
  std::size_t turn = 0;
};

/// "dsent:<scope>:count:L" and "dsent:<scope>:prob:L"; zeros are omitted.
features::FeatureVector sentiment_distribution(std::span<const TaggedUnit> units, std::string_view scope);

/// "trans_count:A>B", "trans_portion:A>B" (share of all transitions) and
/// "trans_prob:A>B" (P(B | A)) under "dsent:<scope>:". With `within_turn`
/// only pairs inside one turn count.
features::FeatureVector sentiment_transitions(std::span<const TaggedUnit> units, std::string_view scope,
                                              bool within_turn = false);

/// Three contiguous [begin, end) spans; sizes differ by at most one and
/// earlier stages take the remainder.
std::array<std::pair<std::size_t, std::size_t>, 3> stage_split(std::size_t n);

inline constexpr std::string_view kDisTurns = "ddis:turns";
inline constexpr std::string_view kDisParticipants = "ddis:participants";
inline constexpr std::string_view kDisWordsPerTurn = "ddis:avg_words_per_turn";
inline constexpr std::string_view kDisRevisions = "ddis:revisions";

/// Raw (unbinned) discussion statistics.
features::FeatureVector discussion_features(const corpus::Discussion& d);
features::FeatureVector topic_features(const corpus::Discussion& d);
features::FeatureVector lexical_features(const corpus::Discussion& d);

enum class DisputeFamily : std::uint8_t { Lex = 0, Top, Dis, SentiG, SentiL };

class DisputeFamilySet {
 public:
  constexpr DisputeFamilySet() = default;
  static constexpr DisputeFamilySet all() {
    DisputeFamilySet s;
    s.bits_ = 0x1f;
    return s;
  }
  /// Comma-separated names from {lex, top, dis, senti-g, senti-l, all}.
  static DisputeFamilySet parse(std::string_view csv);

  constexpr bool has(DisputeFamily f) const { return bits_ & (1u << static_cast<unsigned>(f)); }
  constexpr DisputeFamilySet& add(DisputeFamily f) {
    bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(f));
    return *this;
  }
  constexpr bool operator==(const DisputeFamilySet&) const = default;
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

struct AblationRow {
  std::string name;
  DisputeFamilySet families;
};

/// The eight feature-set rows of the dispute ablation table.
std::vector<AblationRow> dispute_ablation();

struct DisputeConfig {
  DisputeFamilySet families = DisputeFamilySet::all();
  bool within_turn_transitions = false;
  std::array<double, 4> cuts{-1.5, -0.5, 0.5, 1.5};
};

/// Unstandardized union of the enabled families.
features::FeatureVector assemble_raw(const corpus::Discussion& d, std::span<const TaggedUnit> units,
                                     const DisputeConfig& cfg);

/// Bins the discussion statistics and z-scores the sentiment features with
/// statistics from training discussions only.
class DisputeFeaturizer {
 public:
  DisputeFeaturizer() = default;
  explicit DisputeFeaturizer(DisputeConfig cfg) : cfg_(cfg) {}

  void fit(std::span<const features::FeatureVector> raw_train);
  features::FeatureVector transform(const features::FeatureVector& raw) const;

  const DisputeConfig& config() const { return cfg_; }
  const features::BinningStats& binning() const { return bins_; }
  const std::map<std::string, features::Moments>& sentiment_moments() const { return senti_; }

  nlohmann::json to_json() const;
  static DisputeFeaturizer from_json(const nlohmann::json& j);

 private:
  DisputeConfig cfg_;
  features::BinningStats bins_;
  std::map<std::string, features::Moments> senti_;
};

inline constexpr std::string_view kDisputeClass = "dispute";
inline constexpr std::string_view kNonDisputeClass = "non-dispute";

shallow::LinearModel train_dispute(std::span<const features::FeatureVector> xs, const std::vector<bool>& labels,
                                   const shallow::LogisticConfig& cfg);

struct DisputePrediction {
  bool is_dispute = false;
  double probability = 0.0;
};

DisputePrediction predict_dispute(const shallow::LinearModel& m, const features::FeatureVector& x);

std::vector<bool> all_dispute_baseline(std::size_t n);
/// Fair coin per discussion from a seeded generator.
std::vector<bool> random_baseline(std::size_t n, std::uint64_t seed);

struct FlowOptions {
  double sigma = 1.0;
  std::size_t samples_per_unit = 10;
};

struct FlowSample {
  double x = 0.0;
  double y = 0.0;
  bool turn_boundary = false;
};

struct SpeakerFlow {
  std::string speaker;
  /// Global unit indices and ordinal values of this speaker's units.
  std::vector<double> unit_x;
  std::vector<double> raw;
  std::vector<double> smoothed;
  std::vector<FlowSample> samples;
};

/// Normalized Gaussian smoothing (truncated at 3 sigma) of `values` placed at
/// positions `xs`.
std::vector<double> gaussian_smooth(std::span<const double> xs, std::span<const double> values, double sigma);

/// Natural cubic spline through (xs, ys) evaluated at `at`; xs strictly increasing.
std::vector<double> natural_cubic_spline(std::span<const double> xs, std::span<const double> ys,
                                         std::span<const double> at);

/// One series per speaker with units, sorted by speaker name. Spline samples
/// are clamped to [-2, 2]; a sample is flagged as a turn boundary when it
/// falls on the first unit of one of the speaker's turns.
std::vector<SpeakerFlow> sentiment_flow(std::span<const TaggedUnit> units, const FlowOptions& opts);

/// speaker,sample_x,smoothed_y,is_turn_boundary
void write_flow_csv(std::span<const SpeakerFlow> flows, std::ostream& out);

}  // namespace stancekit::dispute

#endif  // STANCEKIT_DISPUTE_HPP_
