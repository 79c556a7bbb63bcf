#include <cmath>
#include <set>

#include "stancekit/dispute.hpp"
#include "stancekit/text.hpp"

namespace stancekit::dispute {

namespace {

std::string prefix(std::string_view scope) { return "dsent:" + std::string(scope) + ":"; }

void put(features::FeatureVector& v, std::string name, double x) {
  if (x != 0.0) v[std::move(name)] = x;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

features::FeatureVector sentiment_distribution(std::span<const TaggedUnit> units, std::string_view scope) {
  features::FeatureVector v;
  if (units.empty()) return v;
  std::array<std::size_t, kNumLabels> count{};
  for (const auto& u : units) ++count[label_index(u.label)];
  const std::string p = prefix(scope);
  for (auto l : kAllLabels) {
    const auto c = count[label_index(l)];
    const std::string name(to_string(l));
    put(v, p + "count:" + name, static_cast<double>(c));
    put(v, p + "prob:" + name, static_cast<double>(c) / static_cast<double>(units.size()));
  }
  return v;
}

features::FeatureVector sentiment_transitions(std::span<const TaggedUnit> units, std::string_view scope,
                                              bool within_turn) {
  features::FeatureVector v;
  if (units.size() < 2) return v;
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> count{};
  std::array<std::size_t, kNumLabels> out{};
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < units.size(); ++i) {
    if (within_turn && units[i].turn != units[i + 1].turn) continue;
    const auto a = label_index(units[i].label), b = label_index(units[i + 1].label);
    ++count[a][b];
    ++out[a];
    ++total;
  }
  const std::string p = prefix(scope);
  for (auto la : kAllLabels) {
    for (auto lb : kAllLabels) {
      const auto a = label_index(la), b = label_index(lb);
      const std::string pair = std::string(to_string(la)) + ">" + std::string(to_string(lb));
      const auto c = static_cast<double>(count[a][b]);
      put(v, p + "trans_count:" + pair, c);
      if (total) put(v, p + "trans_portion:" + pair, c / static_cast<double>(total));
      if (out[a]) put(v, p + "trans_prob:" + pair, c / static_cast<double>(out[a]));
    }
  }
  return v;
}

std::array<std::pair<std::size_t, std::size_t>, 3> stage_split(std::size_t n) {
  std::array<std::pair<std::size_t, std::size_t>, 3> spans{};
  std::size_t begin = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t size = n / 3 + (s < n % 3 ? 1 : 0);
    spans[s] = {begin, begin + size};
    begin += size;
  }
  return spans;
}

features::FeatureVector discussion_features(const corpus::Discussion& d) {
  std::size_t words = 0;
  for (const auto& t : d.turns)
    for (const auto& u : t.utterances) words += u.token_count();
  features::FeatureVector v;
  put(v, std::string(kDisTurns), static_cast<double>(d.turns.size()));
  put(v, std::string(kDisParticipants), static_cast<double>(d.speaker_count()));
  if (!d.turns.empty())
    put(v, std::string(kDisWordsPerTurn), static_cast<double>(words) / static_cast<double>(d.turns.size()));
  put(v, std::string(kDisRevisions), static_cast<double>(d.revision_count));
  return v;
}

namespace {

void add_ngrams(features::FeatureVector& v, const std::string& ns, const std::vector<std::string>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    v[ns + "uni:" + words[i]] = 1.0;
    if (i + 1 < words.size()) v[ns + "bi:" + words[i] + "_" + words[i + 1]] = 1.0;
  }
}

}  // namespace

features::FeatureVector topic_features(const corpus::Discussion& d) {
  features::FeatureVector v;
  for (const auto& c : d.categories) add_ngrams(v, "dtop:", text::word_pieces(c));
  return v;
}

features::FeatureVector lexical_features(const corpus::Discussion& d) {
  features::FeatureVector v;
  for (const auto& t : d.turns)
    for (const auto& u : t.utterances)
      for (const auto& s : u.sentences) {
        std::vector<std::string> words;
        for (const auto& tok : s.tokens)
          if (!text::is_punct_token(tok.form)) words.push_back(tok.lowercase);
        add_ngrams(v, "dlex:", words);
      }
  return v;
}

DisputeFamilySet DisputeFamilySet::parse(std::string_view csv) {
  DisputeFamilySet s;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto end = comma == std::string_view::npos ? csv.size() : comma;
    const auto name = text::strip_space(csv.substr(start, end - start));
    if (name == "all")
      s = all();
    else if (name == "lex")
      s.add(DisputeFamily::Lex);
    else if (name == "top")
      s.add(DisputeFamily::Top);
    else if (name == "dis")
      s.add(DisputeFamily::Dis);
    else if (name == "senti-g")
      s.add(DisputeFamily::SentiG);
    else if (name == "senti-l")
      s.add(DisputeFamily::SentiL);
    else if (!name.empty())
      throw std::invalid_argument("unknown dispute feature family '" + std::string(name) + "'");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (s == DisputeFamilySet{}) throw std::invalid_argument("no dispute feature family selected");
  return s;
}

std::string DisputeFamilySet::to_string() const {
  static constexpr std::array<std::string_view, 5> names{"lex", "top", "dis", "senti-g", "senti-l"};
  std::string out;
  for (unsigned i = 0; i < names.size(); ++i) {
    if (!has(static_cast<DisputeFamily>(i))) continue;
    if (!out.empty()) out += ',';
    out += names[i];
  }
  return out;
}

std::vector<AblationRow> dispute_ablation() {
  auto p = DisputeFamilySet::parse;
  return {{"Lex", p("lex")},
          {"Top", p("top")},
          {"Dis", p("dis")},
          {"Senti_g+l", p("senti-g,senti-l")},
          {"Top + Dis", p("top,dis")},
          {"Top + Dis + Senti_g", p("top,dis,senti-g")},
          {"Top + Dis + Senti_g+l", p("top,dis,senti-g,senti-l")},
          {"Lex + Top + Dis + Senti_g+l", p("lex,top,dis,senti-g,senti-l")}};
}

features::FeatureVector assemble_raw(const corpus::Discussion& d, std::span<const TaggedUnit> units,
                                     const DisputeConfig& cfg) {
  features::FeatureVector v;
  auto merge = [&v](const features::FeatureVector& part) { v.insert(part.begin(), part.end()); };
  if (cfg.families.has(DisputeFamily::Lex)) merge(lexical_features(d));
  if (cfg.families.has(DisputeFamily::Top)) merge(topic_features(d));
  if (cfg.families.has(DisputeFamily::Dis)) merge(discussion_features(d));
  if (cfg.families.has(DisputeFamily::SentiG)) {
    merge(sentiment_distribution(units, "g"));
    merge(sentiment_transitions(units, "g", cfg.within_turn_transitions));
  }
  if (cfg.families.has(DisputeFamily::SentiL)) {
    const auto stages = stage_split(units.size());
    for (std::size_t s = 0; s < 3; ++s) {
      const auto part = units.subspan(stages[s].first, stages[s].second - stages[s].first);
      const std::string scope = "l" + std::to_string(s + 1);
      merge(sentiment_distribution(part, scope));
      merge(sentiment_transitions(part, scope, cfg.within_turn_transitions));
    }
  }
  return v;
}

void DisputeFeaturizer::fit(std::span<const features::FeatureVector> raw_train) {
  std::vector<std::string> dis_names;
  if (cfg_.families.has(DisputeFamily::Dis))
    dis_names = {std::string(kDisParticipants), std::string(kDisRevisions), std::string(kDisTurns),
                 std::string(kDisWordsPerTurn)};
  bins_ = features::BinningStats::fit(raw_train, dis_names);

  std::set<std::string> names;
  for (const auto& v : raw_train)
    for (const auto& [name, x] : v)
      if (starts_with(name, "dsent:")) names.insert(name);
  std::vector<std::string> list(names.begin(), names.end());
  senti_ = features::BinningStats::fit(raw_train, list).moments();
}

features::FeatureVector DisputeFeaturizer::transform(const features::FeatureVector& raw) const {
  features::FeatureVector rest;
  for (const auto& [name, x] : raw)
    if (!starts_with(name, "dsent:")) rest.emplace(name, x);
  auto out = features::standardize_and_bin(rest, bins_, cfg_.cuts);
  for (const auto& [name, m] : senti_) {
    auto it = raw.find(name);
    const double x = it == raw.end() ? 0.0 : it->second;
    if (m.sd > 0.0) put(out, name, (x - m.mean) / m.sd);
  }
  return out;
}

nlohmann::json DisputeFeaturizer::to_json() const {
  nlohmann::json senti = nlohmann::json::object();
  for (const auto& [name, m] : senti_) senti[name] = {m.mean, m.sd};
  return {{"families", cfg_.families.to_string()},
          {"within_turn_transitions", cfg_.within_turn_transitions},
          {"cuts", cfg_.cuts},
          {"binning", bins_.to_json()},
          {"sentiment_moments", senti}};
}

DisputeFeaturizer DisputeFeaturizer::from_json(const nlohmann::json& j) {
  DisputeConfig cfg;
  cfg.families = DisputeFamilySet::parse(j.at("families").get<std::string>());
  cfg.within_turn_transitions = j.at("within_turn_transitions").get<bool>();
  cfg.cuts = j.at("cuts").get<std::array<double, 4>>();
  DisputeFeaturizer f(cfg);
  f.bins_ = features::BinningStats::from_json(j.at("binning"));
  for (const auto& [name, m] : j.at("sentiment_moments").items())
    f.senti_[name] = {m.at(0).get<double>(), m.at(1).get<double>()};
  return f;
}

}  // namespace stancekit::dispute
