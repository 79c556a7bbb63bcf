#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "stancekit/lexicon.hpp"
#include "stancekit/text.hpp"

namespace stancekit::lexicon {

namespace {
void check_thresholds(double pos, double neg) {
  if (!(neg < 0.0 && 0.0 < pos))
    throw std::invalid_argument("lexicon thresholds must satisfy neg < 0 < pos");
}
}  // namespace

Lexicon::Lexicon(double pos_threshold, double neg_threshold)
    : pos_(pos_threshold), neg_(neg_threshold) {
  check_thresholds(pos_, neg_);
}

void Lexicon::insert(LexiconEntry e) {
  auto key = e.unit.payload;
  entries_.insert_or_assign(std::move(key), std::move(e));
}

const LexiconEntry* Lexicon::find(std::string_view payload) const {
  auto it = entries_.find(payload);
  return it == entries_.end() ? nullptr : &it->second;
}

double Lexicon::score(std::string_view payload) const {
  const auto* e = find(payload);
  return e ? e->score : 0.0;
}

bool Lexicon::positive(std::string_view payload) const {
  const auto* e = find(payload);
  return e && e->score >= pos_;
}

bool Lexicon::negative(std::string_view payload) const {
  const auto* e = find(payload);
  return e && e->score <= neg_;
}

int Lexicon::word_polarity(std::string_view word) const {
  std::string key = "uni:";
  key.append(word);
  if (positive(key)) return 1;
  if (negative(key)) return -1;
  return 0;
}

std::vector<LexiconEntry> Lexicon::sorted_entries() const {
  std::vector<LexiconEntry> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(e);
  std::stable_sort(out.begin(), out.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
    const double x = std::abs(a.score), y = std::abs(b.score);
    return x != y ? x > y : a.unit.payload < b.unit.payload;
  });
  return out;
}

void Lexicon::write_tsv(std::ostream& out) const {
  for (const auto& e : sorted_entries())
    out << to_string(e.unit.kind) << '\t' << e.unit.payload << '\t' << text::fixed(e.score, 6)
        << '\t' << (e.provenance == EntryProvenance::Seed ? "seed" : "propagated") << '\n';
}

Lexicon Lexicon::read_tsv(std::istream& in, double pos_threshold, double neg_threshold) {
  Lexicon lex(pos_threshold, neg_threshold);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k)
      if (k == line.size() || line[k] == '\t') {
        cols.push_back(line.substr(start, k - start));
        start = k + 1;
      }
    const auto where = "lexicon line " + std::to_string(lineno);
    if (cols.size() != 4) throw std::runtime_error(where + ": expected 4 columns");
    auto kind = parse_unit_kind(cols[0]);
    if (!kind) throw std::runtime_error(where + ": unknown kind '" + cols[0] + "'");
    double score = 0.0;
    try {
      score = std::stod(cols[2]);
    } catch (const std::exception&) {
      throw std::runtime_error(where + ": invalid score");
    }
    if (!(score >= -1.0 && score <= 1.0)) throw std::runtime_error(where + ": score outside [-1, 1]");
    EntryProvenance prov;
    if (cols[3] == "seed") {
      prov = EntryProvenance::Seed;
    } else if (cols[3] == "propagated") {
      prov = EntryProvenance::Propagated;
    } else {
      throw std::runtime_error(where + ": unknown provenance '" + cols[3] + "'");
    }
    lex.insert({{*kind, cols[1]}, score, prov});
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path, double pos_threshold,
                      double neg_threshold) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read lexicon " + path.string());
  return read_tsv(in, pos_threshold, neg_threshold);
}

Lexicon Lexicon::from_seeds(const SeedSet& seeds, double pos_threshold, double neg_threshold) {
  Lexicon lex(pos_threshold, neg_threshold);
  for (const auto& w : seeds.positive) lex.insert({{UnitKind::Unigram, "uni:" + w}, 1.0, EntryProvenance::Seed});
  for (const auto& w : seeds.negative) lex.insert({{UnitKind::Unigram, "uni:" + w}, -1.0, EntryProvenance::Seed});
  return lex;
}

Lexicon emit_lexicon(const PropagationGraph& g, std::span<const double> scores,
                     double pos_threshold, double neg_threshold) {
  check_thresholds(pos_threshold, neg_threshold);
  if (scores.size() != g.size()) throw std::invalid_argument("score vector does not match graph");
  Lexicon lex(pos_threshold, neg_threshold);
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const int s = g.seed_state(i);
    if (s != 0) {
      lex.insert({g.nodes()[i], static_cast<double>(s), EntryProvenance::Seed});
    } else {
      lex.insert({g.nodes()[i], scores[i], EntryProvenance::Propagated});
    }
  }
  return lex;
}

BuildResult build_lexicon(std::span<const corpus::Discussion> ds, const SeedSet& seeds,
                          const BuildOptions& opts) {
  const auto units = extract_text_units(ds, &seeds, opts.min_discussions, opts.units);
  std::vector<std::string> nodes;
  nodes.reserve(units.size());
  for (const auto& [payload, _] : units) nodes.push_back(payload);
  const auto co = count_cooccurrence(ds, std::move(nodes), &seeds, opts.units);
  auto graph = build_graph(co, opts.graph);
  attach_seeds(graph, seeds);
  auto prop = propagate(graph, opts.propagation);
  auto lex = emit_lexicon(graph, prop.scores, opts.pos_threshold, opts.neg_threshold);
  return {std::move(graph), std::move(prop), std::move(lex)};
}

}  // namespace stancekit::lexicon
