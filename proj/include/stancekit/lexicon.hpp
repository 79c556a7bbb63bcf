#ifndef STANCEKIT_LEXICON_HPP_
#define STANCEKIT_LEXICON_HPP_

// Discussion-domain lexicon induction: text-unit extraction, PMI/cosine
// graph construction, seed handling, and label propagation.
//
// The kernels with data-parallel inner loops (co-occurrence counting, edge
// weighting, propagation sweeps) use OpenMP; a serial version of each is kept
// in `reference` and the two are tested for bit-identical output.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stancekit/corpus.hpp"

namespace stancekit::lexicon {

enum class UnitKind : std::uint8_t { Unigram, Bigram, DepRel, SentiDepRel, Punct };

std::string_view to_string(UnitKind k);
std::optional<UnitKind> parse_unit_kind(std::string_view s);
/// Kind implied by a canonical payload prefix ("uni:", "bi:", "dep:", "sdep:", "punct:").
std::optional<UnitKind> kind_of_payload(std::string_view payload);

/// A graph node. `payload` is the canonical, lowercase, whitespace-free
/// encoding, e.g. "uni:good", "bi:good_idea", "dep:Rel(agree,on)".
struct TextUnit {
  UnitKind kind = UnitKind::Unigram;
  std::string payload;

  bool operator==(const TextUnit& o) const { return payload == o.payload; }
  auto operator<=>(const TextUnit& o) const { return payload <=> o.payload; }
};

/// Seed polarity words (lowercase). The two sets are disjoint.
struct SeedSet {
  std::set<std::string, std::less<>> positive;
  std::set<std::string, std::less<>> negative;

  /// +1, -1 or 0.
  int polarity(std::string_view word) const;
};

enum class ConflictPolicy : std::uint8_t {
  DropBoth,   ///< a word seen with both polarities is removed from both sets
  KeepFirst,  ///< the first polarity seen wins
};

/// Minimum polarity score for a scored seed entry to be kept (strict).
inline constexpr double kSeedScoreThreshold = 0.7;

/// Reads one seed source. Lines are `word TAB pos TAB neg` or `word TAB +|-`;
/// blank lines and lines starting with '#' are skipped.
/// Returns (word, polarity) pairs in file order.
std::vector<std::pair<std::string, int>> parse_seed_lines(std::istream& in,
                                                          const std::string& source_name);

/// Reads every file and merges them under `policy`. Throws std::runtime_error
/// naming the path when a file cannot be read.
SeedSet load_seeds(std::span<const std::filesystem::path> paths,
                   ConflictPolicy policy = ConflictPolicy::DropBoth);

/// Merges already-parsed sources.
SeedSet merge_seeds(std::span<const std::vector<std::pair<std::string, int>>> sources,
                    ConflictPolicy policy = ConflictPolicy::DropBoth);

struct UnitOptions {
  bool bigrams = true;
  bool deprels = true;
  bool senti_deprels = true;
  bool punct = true;
};

/// Sorted, de-duplicated payloads of the text units in one sentence.
/// Sentiment dependency relations need `seeds`.
std::vector<std::string> sentence_units(const corpus::Sentence& s, const SeedSet* seeds,
                                        const UnitOptions& opts = {});

/// Discussion frequency of every text unit seen in at least `min_discussions`
/// distinct discussions.
std::map<std::string, std::size_t> extract_text_units(std::span<const corpus::Discussion> ds,
                                                      const SeedSet* seeds,
                                                      std::size_t min_discussions = 10,
                                                      const UnitOptions& opts = {});

/// Sentence-level counts restricted to a node set. Node ids index `nodes`,
/// which is sorted by payload.
struct Cooccurrence {
  std::vector<std::string> nodes;
  std::vector<std::uint64_t> count;
  /// Per node, (neighbor id, joint sentence count) sorted by neighbor id; no self pairs.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> pairs;
  std::uint64_t total_sentences = 0;

  std::optional<std::uint32_t> id(std::string_view payload) const;
  std::uint64_t joint(std::uint32_t a, std::uint32_t b) const;
};

Cooccurrence count_cooccurrence(std::span<const corpus::Discussion> ds,
                                std::vector<std::string> nodes, const SeedSet* seeds,
                                const UnitOptions& opts = {});

/// Sparse vector keyed by node id, sorted by id.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

/// PMI of `node` against its top-k co-occurring units, chosen by joint count
/// (ties to the lexicographically smaller payload). Natural log.
/// Throws std::invalid_argument when the node never occurs.
SparseVector pmi_vector(const Cooccurrence& co, std::uint32_t node, std::size_t top_k = 50);

double cosine(const SparseVector& a, const SparseVector& b);

struct Edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 0.0;
};

/// Undirected weighted graph in CSR form with seed assignments.
/// Nodes are kept sorted by payload and adjacency sorted by neighbor id, so
/// the layout is canonical for a given node/edge set.
class PropagationGraph {
 public:
  PropagationGraph() = default;

  /// Validates and canonicalizes: no self edges, no duplicates, weights in [0, 1].
  static PropagationGraph from_edges(std::vector<TextUnit> nodes, std::vector<Edge> edges);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<TextUnit>& nodes() const { return nodes_; }
  std::span<const std::uint32_t> neighbors(std::uint32_t i) const;
  std::span<const double> weights(std::uint32_t i) const;
  std::optional<std::uint32_t> find(std::string_view payload) const;
  /// Each undirected edge once, with a < b, ordered by (a, b).
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return adj_.size() / 2; }

  /// Throws std::invalid_argument when the sets intersect or ids are out of range.
  void set_seeds(std::vector<std::uint32_t> positive, std::vector<std::uint32_t> negative);
  const std::vector<std::uint32_t>& seeds_positive() const { return seeds_pos_; }
  const std::vector<std::uint32_t>& seeds_negative() const { return seeds_neg_; }
  /// +1 / -1 for seeds, 0 otherwise.
  int seed_state(std::uint32_t i) const { return seed_state_[i]; }

 private:
  std::vector<TextUnit> nodes_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adj_;
  std::vector<double> w_;
  std::vector<std::uint32_t> seeds_pos_, seeds_neg_;
  std::vector<std::int8_t> seed_state_;
};

/// Marks unigram nodes "uni:<word>" of every seed word present in the graph.
void attach_seeds(PropagationGraph& g, const SeedSet& seeds);

struct GraphOptions {
  std::size_t top_k = 50;
};

/// Edge between co-occurring units whose PMI vectors have positive cosine.
PropagationGraph build_graph(const Cooccurrence& co, const GraphOptions& opts = {});

void write_graph_tsv(std::ostream& out, const PropagationGraph& g);

struct PropagationOptions {
  std::size_t iterations = 30;
  double tolerance = 1e-6;
};

struct PropagationResult {
  std::vector<double> scores;
  std::size_t sweeps = 0;
  /// max |y_t - y_{t-1}| after each sweep.
  std::vector<double> max_delta;
};

/// Synchronous label propagation: each sweep reads only the previous
/// iterate, then seeds are re-clamped to +/-1. Zero-degree nodes stay at 0.
PropagationResult propagate(const PropagationGraph& g, const PropagationOptions& opts = {});

namespace reference {
Cooccurrence count_cooccurrence(std::span<const corpus::Discussion> ds,
                                std::vector<std::string> nodes, const SeedSet* seeds,
                                const UnitOptions& opts = {});
PropagationGraph build_graph(const Cooccurrence& co, const GraphOptions& opts = {});
/// `visit_order`, when non-empty, is a permutation of node ids.
PropagationResult propagate(const PropagationGraph& g, const PropagationOptions& opts = {},
                            std::span<const std::uint32_t> visit_order = {});
}  // namespace reference

enum class EntryProvenance : std::uint8_t { Seed, Propagated };

struct LexiconEntry {
  TextUnit unit;
  double score = 0.0;
  EntryProvenance provenance = EntryProvenance::Propagated;
};

/// Polarity-scored text units with membership thresholds:
/// M_p = {score >= pos_threshold}, M_n = {score <= neg_threshold}.
class Lexicon {
 public:
  explicit Lexicon(double pos_threshold = 0.3, double neg_threshold = -0.3);

  void insert(LexiconEntry e);
  const LexiconEntry* find(std::string_view payload) const;
  double score(std::string_view payload) const;
  bool positive(std::string_view payload) const;
  bool negative(std::string_view payload) const;
  /// +1 / -1 / 0 for a lowercase word via its unigram entry.
  int word_polarity(std::string_view word) const;

  double pos_threshold() const { return pos_; }
  double neg_threshold() const { return neg_; }
  std::size_t size() const { return entries_.size(); }

  /// Sorted by |score| descending, then payload.
  std::vector<LexiconEntry> sorted_entries() const;

  /// kind TAB payload TAB score TAB provenance.
  void write_tsv(std::ostream& out) const;
  static Lexicon read_tsv(std::istream& in, double pos_threshold = 0.3,
                          double neg_threshold = -0.3);
  static Lexicon load(const std::filesystem::path& path, double pos_threshold = 0.3,
                      double neg_threshold = -0.3);
  /// Unigram entries at +/-1 for every seed word.
  static Lexicon from_seeds(const SeedSet& seeds, double pos_threshold = 0.3,
                            double neg_threshold = -0.3);

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
  double pos_;
  double neg_;
};

/// Throws std::invalid_argument unless neg_threshold < 0 < pos_threshold.
Lexicon emit_lexicon(const PropagationGraph& g, std::span<const double> scores,
                     double pos_threshold = 0.3, double neg_threshold = -0.3);

struct BuildOptions {
  std::size_t min_discussions = 10;
  UnitOptions units;
  GraphOptions graph;
  PropagationOptions propagation;
  double pos_threshold = 0.3;
  double neg_threshold = -0.3;
};

struct BuildResult {
  PropagationGraph graph;
  PropagationResult propagation;
  Lexicon lexicon;
};

/// Units -> co-occurrence -> graph -> seeds -> propagation -> lexicon.
BuildResult build_lexicon(std::span<const corpus::Discussion> ds, const SeedSet& seeds,
                          const BuildOptions& opts = {});

}  // namespace stancekit::lexicon

#endif  // STANCEKIT_LEXICON_HPP_
