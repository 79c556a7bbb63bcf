#include <algorithm>

#include "stancekit/pipeline.hpp"

namespace stancekit::pipeline {

std::vector<std::size_t> complement(const std::vector<std::vector<std::size_t>>& folds, std::size_t f) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < folds.size(); ++g)
    if (g != f) out.insert(out.end(), folds[g].begin(), folds[g].end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TaggerFold> crossval_tagger(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex,
                                        const TaggerOptions& opts, std::size_t k, std::uint64_t seed) {
  const auto folds = corpus::split_folds(ds.size(), k, seed);
  std::vector<TaggerFold> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto train = select(ds, complement(folds, f));
    const auto test = select(ds, folds[f]);
    const auto tagger = Tagger::train(train, lex, opts);
    const auto tags = tagger.tag(test);
    out.push_back({score_tagger(test, flatten_stances(tags)), tagger.featurizer().binning(), train.size(),
                   test.size()});
  }
  return out;
}

std::vector<DisputeFold> crossval_dispute(std::span<const corpus::Discussion> ds,
                                          std::span<const std::vector<dispute::TaggedUnit>> units,
                                          const dispute::DisputeConfig& cfg, const shallow::LogisticConfig& lcfg,
                                          std::size_t k, std::uint64_t seed) {
  if (ds.size() != units.size()) throw std::invalid_argument("discussion/unit count mismatch");
  const auto folds = corpus::split_folds(ds.size(), k, seed);
  std::vector<DisputeFold> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto train_idx = complement(folds, f);
    const auto train = select(ds, train_idx);
    const auto train_units = select(units, train_idx);
    const auto det = DisputeDetector::train(train, train_units, cfg, lcfg);
    std::vector<bool> gold, pred;
    for (auto i : folds[f]) {
      gold.push_back(ds[i].dispute_gold.value().is_dispute);
      pred.push_back(det.predict(ds[i], units[i]).is_dispute);
    }
    out.push_back({eval::binary_scores(gold, pred), det.featurizer()});
  }
  return out;
}

namespace {

nlohmann::json mean_sd_json(const std::vector<double>& xs) {
  const auto s = eval::mean_sd(xs);
  return {{"mean", s.mean}, {"sd", s.sd}, {"folds", xs}};
}

}  // namespace

nlohmann::json summarize(std::span<const TaggerFold> folds) {
  nlohmann::json out = nlohmann::json::object();
  for (const char* mode : {"strict", "soft"}) {
    nlohmann::json per_class = nlohmann::json::object();
    for (auto s : kAllStances) {
      std::vector<double> p, r, f1;
      for (const auto& fold : folds) {
        const auto& rep = std::string(mode) == "strict" ? fold.scores.strict : fold.scores.soft;
        p.push_back(rep[s].precision);
        r.push_back(rep[s].recall);
        f1.push_back(rep[s].f1);
      }
      per_class[std::string(to_string(s))] = {
          {"precision", mean_sd_json(p)}, {"recall", mean_sd_json(r)}, {"f1", mean_sd_json(f1)}};
    }
    std::vector<double> acc;
    for (const auto& fold : folds)
      acc.push_back(std::string(mode) == "strict" ? fold.scores.strict.accuracy : fold.scores.soft.accuracy);
    out[mode] = {{"classes", per_class}, {"accuracy", mean_sd_json(acc)}};
  }
  out["k"] = folds.size();
  return out;
}

nlohmann::json summarize(std::span<const DisputeFold> folds) {
  std::vector<double> p, r, f1, acc;
  for (const auto& fold : folds) {
    p.push_back(fold.scores.precision);
    r.push_back(fold.scores.recall);
    f1.push_back(fold.scores.f1);
    acc.push_back(fold.scores.accuracy);
  }
  return {{"k", folds.size()},
          {"precision", mean_sd_json(p)},
          {"recall", mean_sd_json(r)},
          {"f1", mean_sd_json(f1)},
          {"accuracy", mean_sd_json(acc)}};
}

}  // namespace stancekit::pipeline
