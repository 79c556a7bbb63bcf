#include <omp.h>

#include "stancekit/features.hpp"

namespace stancekit::features {

namespace {

lexicon::Lexicon polar_subset(const lexicon::Lexicon& lex) {
  lexicon::Lexicon out(lex.pos_threshold(), lex.neg_threshold());
  for (const auto& e : lex.sorted_entries())
    if (e.score >= lex.pos_threshold() || e.score <= lex.neg_threshold()) out.insert(e);
  return out;
}

struct Slot {
  std::size_t d, t, u;
};

}  // namespace

Featurizer::Featurizer(FeatureConfig cfg, lexicon::Lexicon lexicon)
    : cfg_(std::move(cfg)), lex_(polar_subset(lexicon)) {
  cfg_.validate();
}

void Featurizer::fit(std::span<const corpus::Discussion> train) {
  idf_ = IdfTable::fit(train);
  std::vector<FeatureVector> flat;
  for (auto& per_disc : raw(train))
    for (auto& per_turn : per_disc)
      for (auto& v : per_turn) flat.push_back(std::move(v));
  bins_ = BinningStats::fit(flat, numeric_feature_names(cfg_.families));
}

std::vector<DiscussionFeatures> Featurizer::raw(std::span<const corpus::Discussion> ds) const {
  std::vector<DiscussionFeatures> out(ds.size());
  std::vector<Slot> slots;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    out[d].resize(ds[d].turns.size());
    for (std::size_t t = 0; t < ds[d].turns.size(); ++t) {
      out[d][t].resize(ds[d].turns[t].utterances.size());
      for (std::size_t u = 0; u < ds[d].turns[t].utterances.size(); ++u) slots.push_back({d, t, u});
    }
  }
  const auto n = static_cast<std::ptrdiff_t>(slots.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& s = slots[static_cast<std::size_t>(i)];
    const Context ctx{&ds[s.d], s.t, &lex_, &idf_};
    out[s.d][s.t][s.u] = assemble(ds[s.d].turns[s.t].utterances[s.u], ctx, cfg_);
  }
  return out;
}

DiscussionFeatures Featurizer::raw(const corpus::Discussion& d) const {
  return std::move(raw(std::span<const corpus::Discussion>(&d, 1)).front());
}

std::vector<DiscussionFeatures> Featurizer::extract(std::span<const corpus::Discussion> ds) const {
  auto out = raw(ds);
  for (auto& per_disc : out)
    for (auto& per_turn : per_disc)
      for (auto& v : per_turn) v = standardize_and_bin(v, bins_, cfg_.cuts);
  return out;
}

DiscussionFeatures Featurizer::extract(const corpus::Discussion& d) const {
  return std::move(extract(std::span<const corpus::Discussion>(&d, 1)).front());
}

nlohmann::json Featurizer::to_json() const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& e : lex_.sorted_entries()) entries[e.unit.payload] = e.score;
  return {
      {"families", cfg_.families.to_string()},
      {"hedges", cfg_.hedges},
      {"negators", cfg_.negators},
      {"connectives", cfg_.connectives},
      {"cuts", cfg_.cuts},
      {"lexicon",
       {{"pos_threshold", lex_.pos_threshold()},
        {"neg_threshold", lex_.neg_threshold()},
        {"entries", std::move(entries)}}},
      {"idf", idf_.to_json()},
      {"binning", bins_.to_json()},
  };
}

Featurizer Featurizer::from_json(const nlohmann::json& j) {
  FeatureConfig cfg;
  cfg.families = FamilySet::parse(j.at("families").get<std::string>());
  cfg.hedges = j.at("hedges").get<std::vector<std::string>>();
  cfg.negators = j.at("negators").get<std::vector<std::string>>();
  cfg.connectives = j.at("connectives").get<std::vector<std::string>>();
  cfg.cuts = j.at("cuts").get<std::array<double, 4>>();
  const auto& lj = j.at("lexicon");
  lexicon::Lexicon lex(lj.at("pos_threshold").get<double>(), lj.at("neg_threshold").get<double>());
  for (const auto& [payload, score] : lj.at("entries").items())
    lex.insert({{lexicon::kind_of_payload(payload).value_or(lexicon::UnitKind::Unigram), payload},
                score.get<double>(),
                lexicon::EntryProvenance::Propagated});
  Featurizer f(std::move(cfg), std::move(lex));
  f.idf_ = IdfTable::from_json(j.at("idf"));
  f.bins_ = BinningStats::from_json(j.at("binning"));
  return f;
}

}  // namespace stancekit::features
