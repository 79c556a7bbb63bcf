#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include "stancekit/lexicon.hpp"

namespace stancekit::lexicon {

std::optional<std::uint32_t> Cooccurrence::id(std::string_view payload) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), payload,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == nodes.end() || *it != payload) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes.begin());
}

std::uint64_t Cooccurrence::joint(std::uint32_t a, std::uint32_t b) const {
  const auto& row = pairs[a];
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const auto& p, std::uint32_t v) { return p.first < v; });
  return (it != row.end() && it->first == b) ? it->second : 0;
}

namespace {

std::vector<const corpus::Sentence*> all_sentences(std::span<const corpus::Discussion> ds) {
  std::vector<const corpus::Sentence*> out;
  for (const auto& d : ds)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances)
        for (const auto& s : u.sentences) out.push_back(&s);
  return out;
}

std::vector<std::uint32_t> node_ids(const Cooccurrence& co, const corpus::Sentence& s,
                                    const SeedSet* seeds, const UnitOptions& opts) {
  std::vector<std::uint32_t> ids;
  for (const auto& unit : sentence_units(s, seeds, opts))
    if (auto id = co.id(unit)) ids.push_back(*id);
  return ids;  // sorted, since both unit list and node list are sorted
}

void prepare(Cooccurrence& co, std::vector<std::string> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  co.nodes = std::move(nodes);
  co.count.assign(co.nodes.size(), 0);
  co.pairs.assign(co.nodes.size(), {});
}

using PairCounts = std::unordered_map<std::uint64_t, std::uint64_t>;

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void finish(Cooccurrence& co, const PairCounts& joint) {
  for (const auto& [key, c] : joint) {
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
    co.pairs[a].emplace_back(b, c);
    co.pairs[b].emplace_back(a, c);
  }
  for (auto& row : co.pairs) std::sort(row.begin(), row.end());
}

}  // namespace

Cooccurrence count_cooccurrence(std::span<const corpus::Discussion> ds,
                                std::vector<std::string> nodes, const SeedSet* seeds,
                                const UnitOptions& opts) {
  Cooccurrence co;
  prepare(co, std::move(nodes));
  const auto sentences = all_sentences(ds);
  co.total_sentences = sentences.size();

  PairCounts joint;
  const auto n = static_cast<std::ptrdiff_t>(sentences.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local_count(co.nodes.size(), 0);
    PairCounts local_joint;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto ids = node_ids(co, *sentences[static_cast<std::size_t>(i)], seeds, opts);
      for (std::size_t x = 0; x < ids.size(); ++x) {
        ++local_count[ids[x]];
        for (std::size_t y = x + 1; y < ids.size(); ++y) ++local_joint[pair_key(ids[x], ids[y])];
      }
    }
    // Integer sums: merge order does not affect the result.
#pragma omp critical(stancekit_cooc_merge)
    {
      for (std::size_t k = 0; k < local_count.size(); ++k) co.count[k] += local_count[k];
      for (const auto& [key, c] : local_joint) joint[key] += c;
    }
  }
  finish(co, joint);
  return co;
}

namespace reference {

Cooccurrence count_cooccurrence(std::span<const corpus::Discussion> ds,
                                std::vector<std::string> nodes, const SeedSet* seeds,
                                const UnitOptions& opts) {
  Cooccurrence co;
  prepare(co, std::move(nodes));
  PairCounts joint;
  for (const auto* s : all_sentences(ds)) {
    ++co.total_sentences;
    const auto ids = node_ids(co, *s, seeds, opts);
    for (std::size_t x = 0; x < ids.size(); ++x) {
      ++co.count[ids[x]];
      for (std::size_t y = x + 1; y < ids.size(); ++y) ++joint[pair_key(ids[x], ids[y])];
    }
  }
  finish(co, joint);
  return co;
}

}  // namespace reference

SparseVector pmi_vector(const Cooccurrence& co, std::uint32_t node, std::size_t top_k) {
  if (node >= co.nodes.size()) throw std::out_of_range("pmi_vector: node id out of range");
  if (co.count[node] == 0)
    throw std::invalid_argument("pmi_vector: unit '" + co.nodes[node] + "' never occurs");

  auto row = co.pairs[node];
  // Ids follow payload order, so the id tie-break is the payload tie-break.
  std::stable_sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (row.size() > top_k) row.resize(top_k);

  SparseVector v;
  v.reserve(row.size());
  const auto S = static_cast<double>(co.total_sentences);
  const auto ct = static_cast<double>(co.count[node]);
  for (const auto& [u, c] : row) {
    const double pmi = std::log(static_cast<double>(c) * S / (ct * static_cast<double>(co.count[u])));
    v.emplace_back(u, pmi);
  }
  std::sort(v.begin(), v.end());
  return v;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [_, x] : a) na += x * x;
  for (const auto& [_, x] : b) nb += x * x;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      dot += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace stancekit::lexicon
