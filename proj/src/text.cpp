#include "stancekit/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace stancekit::text {

namespace {
bool ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u);
}
bool ascii_space(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 128 && std::isspace(u);
}
}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 128) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

bool is_punct_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), ascii_punct);
}

bool is_all_upper_word(std::string_view s) {
  if (s.size() < 2) return false;
  bool has_alpha = false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 128) continue;
    if (std::islower(u)) return false;
    if (std::isupper(u)) has_alpha = true;
  }
  return has_alpha;
}

std::string strip_space(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!ascii_space(c)) out.push_back(c);
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> word_pieces(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 128 || std::isalnum(u)) {
      cur.push_back(u < 128 ? static_cast<char>(std::tolower(u)) : c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (ascii_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
    out.erase(0, 1);
  return out;
}

std::vector<std::size_t> find_phrase(std::span<const std::string> tokens,
                                     std::span<const std::string> phrase) {
  std::vector<std::size_t> hits;
  if (phrase.empty() || phrase.size() > tokens.size()) return hits;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i)
    if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i)))
      hits.push_back(i);
  return hits;
}

}  // namespace stancekit::text
