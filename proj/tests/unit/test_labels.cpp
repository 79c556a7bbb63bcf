#include <doctest.h>

#include "stancekit/labels.hpp"
#include "stancekit/text.hpp"

using namespace stancekit;

TEST_CASE("ordinal scale maps onto -2..2 in order") {
  int prev = -3;
  for (auto l : kAllLabels) {
    CHECK(to_int(l) == prev + 1);
    prev = to_int(l);
    CHECK(label_from_index(label_index(l)) == l);
    CHECK(parse_label(to_string(l)) == l);
  }
  CHECK_FALSE(parse_label("XX").has_value());
}

TEST_CASE("collapse to three stances") {
  CHECK(collapse(SentimentLabel::NN) == Stance::Disagree);
  CHECK(collapse(SentimentLabel::N) == Stance::Disagree);
  CHECK(collapse(SentimentLabel::O) == Stance::Neutral);
  CHECK(collapse(SentimentLabel::P) == Stance::Agree);
  CHECK(collapse(SentimentLabel::PP) == Stance::Agree);
  for (auto s : kAllStances) CHECK(parse_stance(to_string(s)) == s);
}

TEST_CASE("text helpers") {
  CHECK(text::word_pieces("History_of Poland") == std::vector<std::string>{"history", "of", "poland"});
  CHECK(text::is_all_upper_word("AGREE"));
  CHECK_FALSE(text::is_all_upper_word("I"));
  CHECK_FALSE(text::is_all_upper_word("Agree"));
  CHECK(text::is_punct_token("?!!"));
  CHECK_FALSE(text::is_punct_token("a!"));
  CHECK(text::fixed(-0.0000001, 6) == "0.000000");
  const std::vector<std::string> toks{"a", "b", "a", "b"}, ph{"a", "b"};
  CHECK(text::find_phrase(toks, ph) == std::vector<std::size_t>{0, 2});
}
