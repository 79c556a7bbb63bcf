#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "stancekit/pipeline.hpp"

namespace stancekit::pipeline {

nlohmann::json TaggerOptions::to_json() const {
  return {{"families", features.families.to_string()},
          {"isotonic", isotonic},
          {"downsample", downsample},
          {"constraint_threshold", constraint_threshold},
          {"train", train.to_json()}};
}

std::vector<icrf::Constraint> constraint_registry(const icrf::FeatureIndex& index, const lexicon::Lexicon& lex,
                                                  double threshold) {
  std::vector<icrf::Constraint> out(index.size(), icrf::Constraint::None);
  for (std::uint32_t f = 0; f < index.size(); ++f) {
    const auto unit = features::underlying_text_unit(index.name(f));
    if (!unit) continue;
    const auto* e = lex.find(*unit);
    if (!e || std::fabs(e->score) < threshold || e->score == 0.0) continue;
    out[f] = e->score > 0.0 ? icrf::Constraint::Increasing : icrf::Constraint::Decreasing;
  }
  return out;
}

std::vector<icrf::Sequence> compile_sequences(const icrf::FeatureIndex& index,
                                              std::span<const features::DiscussionFeatures> feats,
                                              std::span<const corpus::Discussion> ds, bool with_labels) {
  std::vector<icrf::Sequence> out;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    for (std::size_t t = 0; t < ds[d].turns.size(); ++t) {
      const auto& turn = ds[d].turns[t];
      if (turn.utterances.empty()) continue;
      std::vector<SentimentLabel> labels;
      if (with_labels)
        for (const auto& u : turn.utterances) labels.push_back(u.gold_or_neutral());
      out.push_back(icrf::compile(index, feats[d][t], labels));
    }
  }
  return out;
}

Tagger Tagger::train(std::span<const corpus::Discussion> train, const lexicon::Lexicon& lex,
                     const TaggerOptions& opts) {
  if (train.empty()) throw std::invalid_argument("empty tagger training set");
  features::Featurizer fz(opts.features, lex);
  fz.fit(train);
  const auto feats = fz.extract(train);

  std::set<std::string> names;
  for (const auto& d : feats)
    for (const auto& t : d)
      for (const auto& v : t)
        for (const auto& [name, x] : v) names.insert(name);
  icrf::FeatureIndex index(std::vector<std::string>(names.begin(), names.end()));

  auto seqs = compile_sequences(index, feats, train, true);
  if (opts.downsample) {
    // Equivalent to dropping all-neutral turns from the corpus, but keeps
    // the reply targets that conversation features were extracted against.
    std::erase_if(seqs, [](const icrf::Sequence& s) {
      for (auto l : s.labels)
        if (l != label_index(SentimentLabel::O)) return false;
      return true;
    });
    if (seqs.empty()) throw std::invalid_argument("downsampling removed every training turn");
  }
  auto registry = opts.isotonic ? constraint_registry(index, fz.lexicon(), opts.constraint_threshold)
                                 : std::vector<icrf::Constraint>{};
  icrf::Model init(std::move(index), std::move(registry));
  auto result = icrf::train(std::move(init), seqs, opts.train);
  result.model.config["featurizer"] = fz.to_json();
  result.model.config["tagger"] = opts.to_json();
  return Tagger(std::move(fz), std::move(result.model));
}

std::vector<TurnLabels> Tagger::tag(std::span<const corpus::Discussion> ds) const {
  const auto feats = featurizer_.extract(ds);
  const auto seqs = compile_sequences(model_.features(), feats, ds, false);
  const auto paths = icrf::viterbi_batch(model_, seqs);
  std::vector<TurnLabels> out(ds.size());
  std::size_t next = 0;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    out[d].resize(ds[d].turns.size());
    for (std::size_t t = 0; t < ds[d].turns.size(); ++t)
      if (!ds[d].turns[t].utterances.empty()) out[d][t] = paths[next++];
  }
  return out;
}

TurnLabels Tagger::tag(const corpus::Discussion& d) const {
  return std::move(tag(std::span<const corpus::Discussion>(&d, 1)).front());
}

void Tagger::save(const std::filesystem::path& path) const { icrf::save_model(model_, path); }

Tagger Tagger::load(const std::filesystem::path& path) {
  auto model = icrf::load_model(path);
  if (!model.config.contains("featurizer"))
    throw icrf::ModelFormatError("model file carries no featurizer state");
  auto fz = features::Featurizer::from_json(model.config.at("featurizer"));
  return Tagger(std::move(fz), std::move(model));
}

GoldUnits gold_units(std::span<const corpus::Discussion> ds) {
  GoldUnits g;
  for (const auto& d : ds)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) {
        g.stance.push_back(collapse(u.gold_or_neutral()));
        g.turn_derived.push_back(u.gold && u.gold->provenance == corpus::Provenance::Turn);
      }
  return g;
}

std::vector<Stance> flatten_stances(std::span<const TurnLabels> tags) {
  std::vector<Stance> out;
  for (const auto& d : tags)
    for (const auto& t : d)
      for (auto l : t) out.push_back(collapse(l));
  return out;
}

nlohmann::json TaggerScores::to_json() const { return {{"strict", strict.to_json()}, {"soft", soft.to_json()}}; }

TaggerScores score_tagger(std::span<const corpus::Discussion> gold, std::span<const Stance> pred) {
  const auto g = gold_units(gold);
  return {eval::strict_f1(g.stance, pred), eval::soft_f1(g.stance, g.turn_derived, pred)};
}

void write_predictions(std::span<const corpus::Discussion> ds, std::span<const TurnLabels> tags, std::ostream& out) {
  for (std::size_t d = 0; d < ds.size(); ++d)
    for (std::size_t t = 0; t < ds[d].turns.size(); ++t)
      for (std::size_t u = 0; u < ds[d].turns[t].utterances.size(); ++u) {
        const auto l = tags[d][t][u];
        nlohmann::json j{{"discussion", ds[d].id},
                         {"turn", ds[d].turns[t].ordinal},
                         {"utterance", ds[d].turns[t].utterances[u].id},
                         {"label", to_string(l)},
                         {"stance", to_string(collapse(l))}};
        out << j.dump() << '\n';
      }
}

std::vector<Stance> read_predictions(std::istream& in, std::span<const corpus::Discussion> ds) {
  std::map<std::pair<std::string, std::string>, Stance> by_id;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto stance = j.contains("label") ? collapse(parse_label(j.at("label").get<std::string>()).value())
                                              : parse_stance(j.at("stance").get<std::string>()).value();
      by_id[{j.at("discussion").get<std::string>(), j.at("utterance").get<std::string>()}] = stance;
    } catch (const std::exception& e) {
      throw corpus::ParseError(lineno, std::string("bad prediction: ") + e.what());
    }
  }
  std::vector<Stance> out;
  for (const auto& d : ds)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) {
        auto it = by_id.find({d.id, u.id});
        if (it == by_id.end())
          throw corpus::ParseError(0, "no prediction for utterance " + d.id + "/" + u.id);
        out.push_back(it->second);
      }
  return out;
}

std::vector<Stance> polarity_predictions(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex) {
  std::vector<Stance> out;
  for (const auto& d : ds)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) out.push_back(shallow::polarity_baseline(u, lex));
  return out;
}

features::FeatureVector DistanceBaseline::vector(const corpus::Utterance& u) const {
  const auto raw = shallow::distance_vector(shallow::distance_features(u, lex_));
  features::FeatureVector z;
  for (const auto& [name, m] : stats_.moments()) {
    const double x = raw.count(name) ? raw.at(name) : 0.0;
    if (m.sd > 0.0 && x != m.mean) z[name] = (x - m.mean) / m.sd;
  }
  return z;
}

DistanceBaseline DistanceBaseline::train(std::span<const corpus::Discussion> train, const lexicon::Lexicon& lex,
                                         const shallow::LogisticConfig& cfg) {
  DistanceBaseline b;
  b.lex_ = lex;
  std::vector<features::FeatureVector> raw;
  std::vector<std::string> labels;
  for (const auto& d : train)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) {
        raw.push_back(shallow::distance_vector(shallow::distance_features(u, lex)));
        labels.emplace_back(to_string(collapse(u.gold_or_neutral())));
      }
  const std::vector<std::string> names{std::string(shallow::kDistMax), std::string(shallow::kDistMean),
                                       std::string(shallow::kDistMin)};
  b.stats_ = features::BinningStats::fit(raw, names);
  std::vector<features::FeatureVector> xs;
  for (const auto& d : train)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) xs.push_back(b.vector(u));
  std::vector<std::string> classes;
  for (auto s : kAllStances) classes.emplace_back(to_string(s));
  b.model_ = shallow::logistic_train(xs, labels, cfg, classes).model;
  return b;
}

std::vector<Stance> DistanceBaseline::predict(std::span<const corpus::Discussion> ds) const {
  std::vector<Stance> out;
  for (const auto& d : ds)
    for (const auto& t : d.turns)
      for (const auto& u : t.utterances) out.push_back(*parse_stance(shallow::logistic_predict(model_, vector(u)).label));
  return out;
}

nlohmann::json DistanceBaseline::to_json() const {
  auto j = shallow::linear_model_to_json(model_);
  j["config"]["standardization"] = stats_.to_json();
  return j;
}

std::vector<dispute::TaggedUnit> tagged_units(const corpus::Discussion& d, const TurnLabels& tags) {
  std::vector<dispute::TaggedUnit> out;
  for (std::size_t t = 0; t < d.turns.size(); ++t)
    for (std::size_t u = 0; u < d.turns[t].utterances.size(); ++u)
      out.push_back({tags.at(t).at(u), d.turns[t].speaker, t});
  return out;
}

std::vector<bool> dispute_gold(std::span<const corpus::Discussion> ds) {
  std::vector<bool> out;
  for (const auto& d : ds) {
    if (!d.dispute_gold) throw std::invalid_argument("discussion " + d.id + " has no dispute_gold");
    out.push_back(d.dispute_gold->is_dispute);
  }
  return out;
}

DisputeDetector DisputeDetector::train(std::span<const corpus::Discussion> train,
                                       std::span<const std::vector<dispute::TaggedUnit>> units,
                                       const dispute::DisputeConfig& cfg, const shallow::LogisticConfig& lcfg) {
  if (train.size() != units.size()) throw std::invalid_argument("discussion/unit count mismatch");
  DisputeDetector det;
  det.featurizer_ = dispute::DisputeFeaturizer(cfg);
  std::vector<features::FeatureVector> raw;
  for (std::size_t i = 0; i < train.size(); ++i) raw.push_back(dispute::assemble_raw(train[i], units[i], cfg));
  det.featurizer_.fit(raw);
  std::vector<features::FeatureVector> xs;
  for (const auto& r : raw) xs.push_back(det.featurizer_.transform(r));
  det.model_ = dispute::train_dispute(xs, dispute_gold(train), lcfg);
  det.model_.config["dispute_featurizer"] = det.featurizer_.to_json();
  return det;
}

dispute::DisputePrediction DisputeDetector::predict(const corpus::Discussion& d,
                                                    std::span<const dispute::TaggedUnit> units) const {
  return dispute::predict_dispute(model_, featurizer_.transform(dispute::assemble_raw(d, units, featurizer_.config())));
}

void DisputeDetector::save(const std::filesystem::path& path) const { shallow::save_linear_model(model_, path); }

DisputeDetector DisputeDetector::load(const std::filesystem::path& path) {
  DisputeDetector det;
  det.model_ = shallow::load_linear_model(path);
  if (!det.model_.config.contains("dispute_featurizer"))
    throw std::runtime_error("model file carries no dispute featurizer state");
  det.featurizer_ = dispute::DisputeFeaturizer::from_json(det.model_.config.at("dispute_featurizer"));
  return det;
}

}  // namespace stancekit::pipeline
