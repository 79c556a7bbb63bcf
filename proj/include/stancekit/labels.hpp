#ifndef STANCEKIT_LABELS_HPP_
#define STANCEKIT_LABELS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace stancekit {

/// Five-point ordinal sentiment scale. The underlying value is the
/// integer mapping used for flows and ordinal comparisons.
enum class SentimentLabel : std::int8_t { NN = -2, N = -1, O = 0, P = 1, PP = 2 };

inline constexpr std::size_t kNumLabels = 5;

inline constexpr std::array<SentimentLabel, kNumLabels> kAllLabels{
    SentimentLabel::NN, SentimentLabel::N, SentimentLabel::O, SentimentLabel::P,
    SentimentLabel::PP};

constexpr int to_int(SentimentLabel l) { return static_cast<int>(l); }

/// Position of the label in NN..PP order (0..4).
constexpr std::size_t label_index(SentimentLabel l) {
  return static_cast<std::size_t>(to_int(l) + 2);
}

constexpr SentimentLabel label_from_index(std::size_t i) {
  return static_cast<SentimentLabel>(static_cast<int>(i) - 2);
}

std::string_view to_string(SentimentLabel l);
std::optional<SentimentLabel> parse_label(std::string_view s);

/// Three-way (dis)agreement classes used for evaluation.
enum class Stance : std::uint8_t { Agree = 0, Disagree = 1, Neutral = 2 };

inline constexpr std::size_t kNumStances = 3;

inline constexpr std::array<Stance, kNumStances> kAllStances{
    Stance::Agree, Stance::Disagree, Stance::Neutral};

constexpr std::size_t stance_index(Stance s) { return static_cast<std::size_t>(s); }

/// {NN,N} -> disagree, {P,PP} -> agree, O -> neutral.
constexpr Stance collapse(SentimentLabel l) {
  if (to_int(l) < 0) return Stance::Disagree;
  if (to_int(l) > 0) return Stance::Agree;
  return Stance::Neutral;
}

std::string_view to_string(Stance s);
std::optional<Stance> parse_stance(std::string_view s);

}  // namespace stancekit

#endif  // STANCEKIT_LABELS_HPP_
