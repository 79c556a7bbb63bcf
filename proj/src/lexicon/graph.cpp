#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include "stancekit/lexicon.hpp"
#include "stancekit/text.hpp"

namespace stancekit::lexicon {

PropagationGraph PropagationGraph::from_edges(std::vector<TextUnit> nodes, std::vector<Edge> edges) {
  const std::size_t n = nodes.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return nodes[a].payload < nodes[b].payload; });
  std::vector<std::uint32_t> remap(n);
  PropagationGraph g;
  g.nodes_.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    remap[order[k]] = k;
    g.nodes_.push_back(std::move(nodes[order[k]]));
    if (k > 0 && g.nodes_[k].payload == g.nodes_[k - 1].payload)
      throw std::invalid_argument("duplicate node '" + g.nodes_[k].payload + "'");
  }

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n);
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.a == e.b) throw std::invalid_argument("self edge on '" + g.nodes_[remap[e.a]].payload + "'");
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) throw std::invalid_argument("edge weight outside [0, 1]");
    rows[remap[e.a]].emplace_back(remap[e.b], e.weight);
    rows[remap[e.b]].emplace_back(remap[e.a], e.weight);
  }
  g.offsets_.assign(1, 0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    for (std::size_t k = 1; k < row.size(); ++k)
      if (row[k].first == row[k - 1].first) throw std::invalid_argument("duplicate edge");
    for (const auto& [v, w] : row) {
      g.adj_.push_back(v);
      g.w_.push_back(w);
    }
    g.offsets_.push_back(g.adj_.size());
  }
  g.seed_state_.assign(n, 0);
  return g;
}

std::span<const std::uint32_t> PropagationGraph::neighbors(std::uint32_t i) const {
  return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::span<const double> PropagationGraph::weights(std::uint32_t i) const {
  return {w_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::optional<std::uint32_t> PropagationGraph::find(std::string_view payload) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), payload,
                             [](const TextUnit& u, std::string_view p) { return u.payload < p; });
  if (it == nodes_.end() || it->payload != payload) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::vector<Edge> PropagationGraph::edges() const {
  std::vector<Edge> out;
  for (std::uint32_t a = 0; a < size(); ++a) {
    auto nb = neighbors(a);
    auto w = weights(a);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (a < nb[k]) out.push_back({a, nb[k], w[k]});
  }
  return out;
}

void PropagationGraph::set_seeds(std::vector<std::uint32_t> positive,
                                 std::vector<std::uint32_t> negative) {
  std::sort(positive.begin(), positive.end());
  positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
  std::sort(negative.begin(), negative.end());
  negative.erase(std::unique(negative.begin(), negative.end()), negative.end());
  std::vector<std::int8_t> state(size(), 0);
  for (auto i : positive) {
    if (i >= size()) throw std::invalid_argument("seed id out of range");
    state[i] = 1;
  }
  for (auto i : negative) {
    if (i >= size()) throw std::invalid_argument("seed id out of range");
    if (state[i] != 0) throw std::invalid_argument("node is both a positive and negative seed");
    state[i] = -1;
  }
  seeds_pos_ = std::move(positive);
  seeds_neg_ = std::move(negative);
  seed_state_ = std::move(state);
}

void attach_seeds(PropagationGraph& g, const SeedSet& seeds) {
  std::vector<std::uint32_t> pos, neg;
  for (const auto& w : seeds.positive)
    if (auto id = g.find("uni:" + w)) pos.push_back(*id);
  for (const auto& w : seeds.negative)
    if (auto id = g.find("uni:" + w)) neg.push_back(*id);
  g.set_seeds(std::move(pos), std::move(neg));
}

namespace {

std::vector<TextUnit> units_of(const Cooccurrence& co) {
  std::vector<TextUnit> units;
  units.reserve(co.nodes.size());
  for (const auto& p : co.nodes) units.push_back({kind_of_payload(p).value_or(UnitKind::Unigram), p});
  return units;
}

// Edges from node t to every co-occurring u > t with positive cosine.
void edges_from(const Cooccurrence& co, const std::vector<SparseVector>& vecs, std::uint32_t t,
                std::vector<Edge>& out) {
  for (const auto& [u, c] : co.pairs[t]) {
    if (u <= t || c == 0) continue;
    const double cs = cosine(vecs[t], vecs[u]);
    if (cs > 0.0) out.push_back({t, u, std::min(cs, 1.0)});
  }
}

}  // namespace

PropagationGraph build_graph(const Cooccurrence& co, const GraphOptions& opts) {
  const auto n = static_cast<std::ptrdiff_t>(co.nodes.size());
  std::vector<SparseVector> vecs(co.nodes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const auto id = static_cast<std::uint32_t>(t);
    if (co.count[id] > 0) vecs[id] = pmi_vector(co, id, opts.top_k);
  }
  std::vector<std::vector<Edge>> per_node(co.nodes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    edges_from(co, vecs, static_cast<std::uint32_t>(t), per_node[static_cast<std::size_t>(t)]);

  std::vector<Edge> edges;
  for (auto& es : per_node) edges.insert(edges.end(), es.begin(), es.end());
  return PropagationGraph::from_edges(units_of(co), std::move(edges));
}

namespace reference {

PropagationGraph build_graph(const Cooccurrence& co, const GraphOptions& opts) {
  std::vector<SparseVector> vecs(co.nodes.size());
  for (std::uint32_t t = 0; t < co.nodes.size(); ++t)
    if (co.count[t] > 0) vecs[t] = pmi_vector(co, t, opts.top_k);
  std::vector<Edge> edges;
  for (std::uint32_t t = 0; t < co.nodes.size(); ++t) edges_from(co, vecs, t, edges);
  return PropagationGraph::from_edges(units_of(co), std::move(edges));
}

}  // namespace reference

void write_graph_tsv(std::ostream& out, const PropagationGraph& g) {
  for (const auto& e : g.edges())
    out << g.nodes()[e.a].payload << '\t' << g.nodes()[e.b].payload << '\t'
        << text::fixed(e.weight, 6) << '\n';
}

}  // namespace stancekit::lexicon
