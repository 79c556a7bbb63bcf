#ifndef STANCEKIT_CORPUS_HPP_
#define STANCEKIT_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stancekit/labels.hpp"

namespace stancekit::corpus {

struct Token {
  std::string form;
  std::string lowercase;
  std::optional<std::string> pos;
  /// 1-based index of the head within the sentence, 0 for the root.
  std::optional<int> head;
  std::optional<std::string> deprel;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string raw;
};

/// Half-open token range [start, end) over the utterance's concatenated tokens.
struct Quote {
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<int> source_turn;
};

enum class Provenance : std::uint8_t { Span, Turn, Score };

struct GoldLabel {
  SentimentLabel label = SentimentLabel::O;
  Provenance provenance = Provenance::Span;
};

enum class MarkOrigin : std::uint8_t { Span, Turn };

/// One raw annotator judgement. For AAWD-style data `mark` is
/// "agree"/"disagree"/"neutral"; for IAC-style data it is a numeric score.
struct AnnotatorLabel {
  std::string annotator;
  std::string mark;
  MarkOrigin origin = MarkOrigin::Span;
};

struct Utterance {
  std::string id;
  std::string text;
  std::vector<Sentence> sentences;
  std::vector<Quote> quotes;
  std::optional<GoldLabel> gold;
  std::vector<AnnotatorLabel> annotator_labels;

  std::size_t token_count() const;
  /// Tokens of all sentences in order.
  std::vector<const Token*> tokens() const;
  std::vector<std::string> lowercase_tokens() const;
  /// Gold label, or O when the utterance carries none.
  SentimentLabel gold_or_neutral() const;
};

struct Turn {
  std::string speaker;
  int ordinal = 0;
  std::optional<int> reply_to;
  std::optional<std::string> turn_label;
  std::vector<Utterance> utterances;
};

enum class Source : std::uint8_t { Aawd, Iac, Wikitalk };
enum class DisputeSubcategory : std::uint8_t { Controversy, Rfc, Resolved };

struct DisputeGold {
  bool is_dispute = false;
  std::optional<DisputeSubcategory> subcategory;
};

struct Discussion {
  std::string id;
  Source source = Source::Wikitalk;
  std::vector<std::string> categories;
  std::size_t revision_count = 0;
  std::optional<DisputeGold> dispute_gold;
  std::vector<Turn> turns;

  std::size_t utterance_count() const;
  std::size_t speaker_count() const;
};

std::string_view to_string(Source s);
std::string_view to_string(DisputeSubcategory s);
std::string_view to_string(Provenance p);

/// Malformed input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads Discussion JSONL. Blank lines are skipped; unknown fields ignored.
std::vector<Discussion> parse_discussions(std::istream& in);
std::vector<Discussion> load_discussions(const std::filesystem::path& path);

/// Applies the AAWD rules to one utterance. Marks with origin=turn in
/// `utterance_marks` are treated as turn-level.
GoldLabel induce_labels_aawd(std::span<const AnnotatorLabel> utterance_marks,
                             std::span<const AnnotatorLabel> turn_marks = {});

/// Maps a mean annotator score in [-5, 5] onto the five-point scale.
/// Throws std::out_of_range outside that interval.
SentimentLabel induce_labels_iac(double mean_score);

/// Fills `gold` from raw annotations according to the discussion's source.
/// Utterances without annotations keep whatever gold they already carry.
void induce_gold_labels(Discussion& d);
void induce_gold_labels(std::vector<Discussion>& ds);

/// Drops turns whose utterances are all neutral (or unlabeled).
Discussion downsample(const Discussion& d);
std::vector<Discussion> downsample(std::span<const Discussion> ds);

/// Partitions indices 0..n-1 into k folds whose sizes differ by at most one
/// (earlier folds take the remainder). Deterministic in `seed`.
std::vector<std::vector<std::size_t>> split_folds(std::size_t n, std::size_t k,
                                                  std::uint64_t seed);

/// Non-dispute candidates need at least 3 distinct speakers and 10 turns.
bool is_nondispute_candidate(const Discussion& d);
std::vector<Discussion> filter_nondispute_candidates(std::span<const Discussion> ds);

}  // namespace stancekit::corpus

#endif  // STANCEKIT_CORPUS_HPP_
