#ifndef STANCEKIT_TEXT_HPP_
#define STANCEKIT_TEXT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stancekit::text {

std::string to_lower(std::string_view s);

/// Non-empty and every byte is ASCII punctuation.
bool is_punct_token(std::string_view s);

/// At least two characters, at least one letter, no lowercase letters.
bool is_all_upper_word(std::string_view s);

/// Drops ASCII whitespace so the result is usable inside a canonical payload.
std::string strip_space(std::string_view s);

std::string join(std::span<const std::string> parts, std::string_view sep);

/// Lowercased alphanumeric runs, e.g. "History_of Poland" -> {history, of, poland}.
std::vector<std::string> word_pieces(std::string_view s);

/// Splits on ASCII whitespace.
std::vector<std::string> split_ws(std::string_view s);

/// Fixed-point rendering with `digits` decimals; "-0.000000" normalizes to "0.000000".
std::string fixed(double x, int digits);

/// Start offsets of every occurrence of `phrase` in `tokens`.
std::vector<std::size_t> find_phrase(std::span<const std::string> tokens,
                                     std::span<const std::string> phrase);

}  // namespace stancekit::text

#endif  // STANCEKIT_TEXT_HPP_
