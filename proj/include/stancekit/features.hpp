#ifndef STANCEKIT_FEATURES_HPP_
#define STANCEKIT_FEATURES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stancekit/corpus.hpp"
#include "stancekit/lexicon.hpp"

namespace stancekit::features {

/// Sparse, name-sorted feature map. Extractors never store zero values.
using FeatureVector = std::map<std::string, double>;

enum class Family : std::uint8_t { Lex = 0, Syn, Disc, Con, Sent };

inline constexpr std::array<Family, 5> kAllFamilies{Family::Lex, Family::Syn, Family::Disc,
                                                   Family::Con, Family::Sent};

std::string_view family_name(Family f);
/// Namespace prefix of a family's features ("lex:", "syn:", "disc:", "conv:", "sent:").
std::string_view family_prefix(Family f);

class FamilySet {
 public:
  constexpr FamilySet() = default;
  static constexpr FamilySet all() {
    FamilySet s;
    s.bits_ = 0x1f;
    return s;
  }
  /// Comma-separated family names, e.g. "lex,syn,disc". Throws on unknown names.
  static FamilySet parse(std::string_view csv);

  constexpr bool has(Family f) const { return bits_ & (1u << static_cast<unsigned>(f)); }
  constexpr FamilySet& add(Family f) {
    bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(f));
    return *this;
  }
  constexpr bool operator==(const FamilySet&) const = default;
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

/// The cumulative ablation ladder Lex, +Syn, +Disc, +Con, +Sent.
std::vector<FamilySet> cumulative_ablation();

struct FeatureConfig {
  FamilySet families = FamilySet::all();
  /// Phrases are lowercase, space-separated token sequences.
  std::vector<std::string> hedges;
  std::vector<std::string> negators;
  std::vector<std::string> connectives;
  /// z-score cut points for the five bins.
  std::array<double, 4> cuts{-1.5, -0.5, 0.5, 1.5};

  /// Throws std::invalid_argument unless the cut points strictly increase.
  void validate() const;
  static FeatureConfig defaults();
};

std::vector<std::string> default_hedges();
std::vector<std::string> default_negators();
std::vector<std::string> default_connectives();
/// One phrase per line; '#' comments and blank lines skipped.
std::vector<std::string> load_phrase_list(const std::filesystem::path& path);

// Numeric features, emitted raw and binned later.
inline constexpr std::string_view kNumWords = "lex:num_words";
inline constexpr std::string_view kNumUpper = "lex:num_upper";
inline constexpr std::string_view kNumNegators = "disc:num_negators";
inline constexpr std::string_view kQuoteOverlap = "conv:quote_overlap";
inline constexpr std::string_view kTfidfSim = "conv:tfidf_sim";

std::vector<std::string> numeric_feature_names(FamilySet families);

/// Binary unigram/bigram presence plus the word and all-uppercase counts.
FeatureVector lexical_features(const corpus::Utterance& u);

/// Word/POS features and dependency relations with their two POS
/// generalizations. Empty when the utterance carries no annotations.
FeatureVector syntactic_features(const corpus::Utterance& u);

FeatureVector discourse_features(const corpus::Utterance& u, const FeatureConfig& cfg);

/// Document frequencies over utterances, for TF-IDF similarity.
class IdfTable {
 public:
  IdfTable() = default;
  static IdfTable fit(std::span<const corpus::Discussion> ds);

  /// Smoothed idf: ln((1 + N) / (1 + df)) + 1.
  double idf(std::string_view word) const;
  std::size_t documents() const { return documents_; }

  nlohmann::json to_json() const;
  static IdfTable from_json(const nlohmann::json& j);

 private:
  std::size_t documents_ = 0;
  std::map<std::string, std::size_t, std::less<>> df_;
};

/// TF-IDF cosine between two token lists.
double tfidf_cosine(std::span<const std::string> a, std::span<const std::string> b,
                    const IdfTable& idf);

/// The turn named by reply_to, else the preceding turn; nullptr for the first turn.
const corpus::Turn* resolve_target(const corpus::Discussion& d, std::size_t turn_index);

FeatureVector conversation_features(const corpus::Utterance& u, const corpus::Turn* target,
                                    const IdfTable& idf);

FeatureVector sentiment_features(const corpus::Utterance& u, const lexicon::Lexicon& lex,
                                 const FeatureConfig& cfg);

struct Context {
  const corpus::Discussion* discussion = nullptr;
  std::size_t turn = 0;
  const lexicon::Lexicon* lexicon = nullptr;
  const IdfTable* idf = nullptr;
};

/// Union of the enabled families' raw features.
FeatureVector assemble(const corpus::Utterance& u, const Context& ctx, const FeatureConfig& cfg);

/// Keeps only the features whose namespace belongs to `families`.
FeatureVector filter_families(const FeatureVector& v, FamilySet families);

/// Lexicon payload a binary feature is derived from, if any
/// (e.g. "lex:uni:great" -> "uni:great", "sent:nsubj(SENTneg,you)" -> "sdep:Rel(SENTneg,you)").
std::optional<std::string> underlying_text_unit(std::string_view feature);

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

/// Bin 0..4 of a z-score; a z equal to a cut point falls in the upper bin.
int bin_index(double z, const std::array<double, 4>& cuts);

/// Per-feature mean/sd fitted on training data only.
class BinningStats {
 public:
  /// Absent numeric features count as zero.
  static BinningStats fit(std::span<const FeatureVector> raw, std::span<const std::string> names);

  const std::map<std::string, Moments>& moments() const { return moments_; }
  nlohmann::json to_json() const;
  static BinningStats from_json(const nlohmann::json& j);

 private:
  std::map<std::string, Moments> moments_;
};

/// Replaces each numeric feature by a single "name#bin_k" indicator; sd = 0
/// always gives the middle bin. Non-numeric features pass through.
FeatureVector standardize_and_bin(const FeatureVector& raw, const BinningStats& stats,
                                  const std::array<double, 4>& cuts);

/// Per-turn, per-utterance feature vectors of one discussion.
using DiscussionFeatures = std::vector<std::vector<FeatureVector>>;

/// Extraction state for a corpus split: configuration, polar lexicon entries,
/// and the training-only IDF and binning statistics.
class Featurizer {
 public:
  Featurizer() = default;
  Featurizer(FeatureConfig cfg, lexicon::Lexicon lexicon);

  /// Fits IDF and binning statistics on `train` only.
  void fit(std::span<const corpus::Discussion> train);

  DiscussionFeatures raw(const corpus::Discussion& d) const;
  /// Raw features for many discussions, extracted in parallel over utterances.
  std::vector<DiscussionFeatures> raw(std::span<const corpus::Discussion> ds) const;
  /// Binned features.
  std::vector<DiscussionFeatures> extract(std::span<const corpus::Discussion> ds) const;
  DiscussionFeatures extract(const corpus::Discussion& d) const;

  const FeatureConfig& config() const { return cfg_; }
  const lexicon::Lexicon& lexicon() const { return lex_; }
  const IdfTable& idf() const { return idf_; }
  const BinningStats& binning() const { return bins_; }

  nlohmann::json to_json() const;
  static Featurizer from_json(const nlohmann::json& j);

 private:
  FeatureConfig cfg_ = FeatureConfig::defaults();
  lexicon::Lexicon lex_;
  IdfTable idf_;
  BinningStats bins_;
};

}  // namespace stancekit::features

#endif  // STANCEKIT_FEATURES_HPP_
