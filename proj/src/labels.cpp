#include "stancekit/labels.hpp"

namespace stancekit {

namespace {
constexpr std::array<std::string_view, kNumLabels> kLabelNames{"NN", "N", "O", "P", "PP"};
constexpr std::array<std::string_view, kNumStances> kStanceNames{"agree", "disagree",
                                                                 "neutral"};
}  // namespace

std::string_view to_string(SentimentLabel l) { return kLabelNames[label_index(l)]; }

std::optional<SentimentLabel> parse_label(std::string_view s) {
  for (std::size_t i = 0; i < kNumLabels; ++i)
    if (kLabelNames[i] == s) return label_from_index(i);
  return std::nullopt;
}

std::string_view to_string(Stance s) { return kStanceNames[stance_index(s)]; }

std::optional<Stance> parse_stance(std::string_view s) {
  for (std::size_t i = 0; i < kNumStances; ++i)
    if (kStanceNames[i] == s) return static_cast<Stance>(i);
  return std::nullopt;
}

}  // namespace stancekit
