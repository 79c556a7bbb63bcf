#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stancekit/lexicon.hpp"
#include "stancekit/text.hpp"

namespace stancekit::lexicon {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_score(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": invalid score '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error(where + ": invalid score '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::pair<std::string, int>> parse_seed_lines(std::istream& in,
                                                          const std::string& source_name) {
  std::vector<std::pair<std::string, int>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    auto cols = split_tabs(line);
    const std::string word = text::to_lower(text::strip_space(cols[0]));
    if (word.empty()) throw std::runtime_error(where + ": empty seed word");
    if (cols.size() == 2) {
      const auto& mark = cols[1];
      if (mark == "+") {
        out.emplace_back(word, 1);
      } else if (mark == "-" || mark == "\xE2\x88\x92") {  // ASCII or U+2212 minus
        out.emplace_back(word, -1);
      } else {
        throw std::runtime_error(where + ": expected '+' or '-', got '" + mark + "'");
      }
    } else if (cols.size() == 3) {
      const double pos = parse_score(cols[1], where), neg = parse_score(cols[2], where);
      const bool p = pos > kSeedScoreThreshold, n = neg > kSeedScoreThreshold;
      // An entry strong in both directions contradicts itself.
      if (p) out.emplace_back(word, 1);
      if (n) out.emplace_back(word, -1);
    } else {
      throw std::runtime_error(where + ": expected 2 or 3 tab-separated columns");
    }
  }
  return out;
}

SeedSet merge_seeds(std::span<const std::vector<std::pair<std::string, int>>> sources,
                    ConflictPolicy policy) {
  std::map<std::string, int> seen;  // bit 1: positive, bit 2: negative
  std::map<std::string, int> first;
  for (const auto& src : sources)
    for (const auto& [word, pol] : src) {
      seen[word] |= pol > 0 ? 1 : 2;
      first.try_emplace(word, pol);
    }
  SeedSet out;
  for (const auto& [word, bits] : seen) {
    int pol = 0;
    if (bits == 3) {
      if (policy == ConflictPolicy::DropBoth) continue;
      pol = first.at(word);
    } else {
      pol = bits == 1 ? 1 : -1;
    }
    (pol > 0 ? out.positive : out.negative).insert(word);
  }
  return out;
}

SeedSet load_seeds(std::span<const std::filesystem::path> paths, ConflictPolicy policy) {
  std::vector<std::vector<std::pair<std::string, int>>> sources;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read seed file " + p.string());
    sources.push_back(parse_seed_lines(in, p.string()));
  }
  return merge_seeds(sources, policy);
}

}  // namespace stancekit::lexicon
