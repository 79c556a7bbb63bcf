#include <functional>
#include <ostream>

#include "stancekit/pipeline.hpp"
#include "stancekit/text.hpp"

namespace stancekit::pipeline {

namespace {

using Folds = std::vector<std::vector<std::size_t>>;
using TaggerRun = std::function<std::vector<Stance>(std::span<const corpus::Discussion> train,
                                                    std::span<const corpus::Discussion> test)>;

std::vector<TaggerScores> run_folds(std::span<const corpus::Discussion> ds, const Folds& folds, const TaggerRun& run) {
  std::vector<TaggerScores> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto train = select(ds, complement(folds, f));
    const auto test = select(ds, folds[f]);
    out.push_back(score_tagger(test, run(train, test)));
  }
  return out;
}

std::vector<double> class_f1(const std::vector<TaggerScores>& runs, bool soft, Stance s) {
  std::vector<double> out;
  for (const auto& r : runs) out.push_back((soft ? r.soft : r.strict)[s].f1);
  return out;
}

nlohmann::json stat(const std::vector<double>& xs) {
  const auto s = eval::mean_sd(xs);
  return {{"mean", s.mean}, {"sd", s.sd}, {"folds", xs}};
}

nlohmann::json tagger_row(const std::string& name, const std::vector<TaggerScores>& runs) {
  nlohmann::json row{{"system", name}};
  for (bool soft : {false, true}) {
    nlohmann::json cls = nlohmann::json::object();
    for (auto s : kAllStances) cls[std::string(to_string(s))] = stat(class_f1(runs, soft, s));
    row[soft ? "soft" : "strict"] = cls;
  }
  return row;
}

TaggerRun crf_run(const lexicon::Lexicon& lex, TaggerOptions opts) {
  return [&lex, opts](std::span<const corpus::Discussion> train, std::span<const corpus::Discussion> test) {
    return flatten_stances(Tagger::train(train, lex, opts).tag(test));
  };
}

std::string ablation_name(features::FamilySet set) {
  static const std::array<std::string, 5> names{"Lex", "Syn", "Disc", "Con", "Sent"};
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (set.has(features::kAllFamilies[i])) out += (out.empty() ? "" : " + ") + names[i];
  return out;
}

}  // namespace

nlohmann::json tagger_tables(std::span<const corpus::Discussion> ds, const lexicon::Lexicon& lex,
                             const TableOptions& opts) {
  const auto folds = corpus::split_folds(ds.size(), opts.k, opts.seed);
  std::vector<std::pair<std::string, std::vector<TaggerScores>>> systems;

  systems.emplace_back("Baseline (Polarity)",
                       run_folds(ds, folds, [&lex](auto, std::span<const corpus::Discussion> test) {
                         return polarity_predictions(test, lex);
                       }));
  systems.emplace_back("Baseline (Distance)",
                       run_folds(ds, folds, [&](std::span<const corpus::Discussion> train,
                                                std::span<const corpus::Discussion> test) {
                         return DistanceBaseline::train(train, lex, opts.logistic).predict(test);
                       }));
  for (bool isotonic : {false, true}) {
    for (bool down : {false, true}) {
      auto o = opts.tagger;
      o.isotonic = isotonic;
      o.downsample = down;
      std::string name = isotonic ? "isotonic CRF" : "CRF (5-way)";
      if (down) name += " + downsampling";
      systems.emplace_back(name, run_folds(ds, folds, crf_run(lex, o)));
    }
  }

  nlohmann::json main = nlohmann::json::array();
  for (const auto& [name, runs] : systems) main.push_back(tagger_row(name, runs));

  nlohmann::json ablation = nlohmann::json::array();
  for (auto set : features::cumulative_ablation()) {
    auto o = opts.tagger;
    o.isotonic = true;
    o.downsample = false;
    o.features.families = set;
    ablation.push_back(tagger_row(ablation_name(set), run_folds(ds, folds, crf_run(lex, o))));
  }

  const std::string reference = "isotonic CRF";
  const std::vector<TaggerScores>* ref = nullptr;
  for (const auto& [name, runs] : systems)
    if (name == reference) ref = &runs;
  nlohmann::json tests = nlohmann::json::array();
  if (folds.size() >= 2) {
    for (const auto& [name, runs] : systems) {
      if (name == reference) continue;
      for (bool soft : {false, true})
        for (auto s : kAllStances) {
          auto t = eval::paired_t_test(class_f1(*ref, soft, s), class_f1(runs, soft, s)).to_json();
          t["reference"] = reference;
          t["system"] = name;
          t["mode"] = soft ? "soft" : "strict";
          t["class"] = to_string(s);
          tests.push_back(std::move(t));
        }
    }
  }
  return {{"kind", "tagger"},
          {"k", folds.size()},
          {"seed", opts.seed},
          {"main", main},
          {"ablation", ablation},
          {"t_tests", tests}};
}

namespace {

using DisputeRun = std::function<std::vector<bool>(std::size_t fold, const std::vector<std::size_t>& train,
                                                   const std::vector<std::size_t>& test)>;

std::vector<eval::BinaryScores> run_dispute(std::span<const corpus::Discussion> ds, const Folds& folds,
                                            const DisputeRun& run) {
  std::vector<eval::BinaryScores> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<bool> gold;
    for (auto i : folds[f]) gold.push_back(ds[i].dispute_gold.value().is_dispute);
    out.push_back(eval::binary_scores(gold, run(f, complement(folds, f), folds[f])));
  }
  return out;
}

std::vector<double> metric(const std::vector<eval::BinaryScores>& runs, double eval::BinaryScores::*field) {
  std::vector<double> out;
  for (const auto& r : runs) out.push_back(r.*field);
  return out;
}

nlohmann::json dispute_row(const std::string& name, const std::vector<eval::BinaryScores>& runs) {
  return {{"system", name},
          {"precision", stat(metric(runs, &eval::BinaryScores::precision))},
          {"recall", stat(metric(runs, &eval::BinaryScores::recall))},
          {"f1", stat(metric(runs, &eval::BinaryScores::f1))},
          {"accuracy", stat(metric(runs, &eval::BinaryScores::accuracy))}};
}

}  // namespace

nlohmann::json dispute_tables(std::span<const corpus::Discussion> ds,
                              std::span<const std::vector<dispute::TaggedUnit>> units, const TableOptions& opts) {
  dispute_gold(ds);
  const auto folds = corpus::split_folds(ds.size(), opts.k, opts.seed);
  auto detector = [&](dispute::DisputeFamilySet families) -> DisputeRun {
    return [&, families](std::size_t, const std::vector<std::size_t>& train, const std::vector<std::size_t>& test) {
      dispute::DisputeConfig cfg;
      cfg.families = families;
      const auto det = DisputeDetector::train(select(ds, train), select(units, train), cfg, opts.logistic);
      std::vector<bool> pred;
      for (auto i : test) pred.push_back(det.predict(ds[i], units[i]).is_dispute);
      return pred;
    };
  };

  std::vector<std::pair<std::string, std::vector<eval::BinaryScores>>> main_rows, ablation_rows;
  main_rows.emplace_back("Baseline (Random)",
                         run_dispute(ds, folds, [&](std::size_t f, const auto&, const std::vector<std::size_t>& test) {
                           return dispute::random_baseline(test.size(), opts.seed + f);
                         }));
  main_rows.emplace_back("Baseline (All dispute)",
                         run_dispute(ds, folds, [](std::size_t, const auto&, const std::vector<std::size_t>& test) {
                           return dispute::all_dispute_baseline(test.size());
                         }));
  main_rows.emplace_back("Logistic Regression", run_dispute(ds, folds, detector(dispute::DisputeFamilySet::all())));
  for (const auto& row : dispute::dispute_ablation())
    ablation_rows.emplace_back(row.name, run_dispute(ds, folds, detector(row.families)));

  nlohmann::json main = nlohmann::json::array(), ablation = nlohmann::json::array();
  for (const auto& [name, runs] : main_rows) main.push_back(dispute_row(name, runs));
  for (const auto& [name, runs] : ablation_rows) ablation.push_back(dispute_row(name, runs));

  // Reference row: highest mean F1 among the trained configurations.
  std::vector<std::pair<std::string, std::vector<eval::BinaryScores>>> all(main_rows.begin() + 2, main_rows.end());
  all.insert(all.end(), ablation_rows.begin(), ablation_rows.end());
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (eval::mean_sd(metric(all[i].second, &eval::BinaryScores::f1)).mean >
        eval::mean_sd(metric(all[best].second, &eval::BinaryScores::f1)).mean)
      best = i;
  all.insert(all.begin(), main_rows.begin(), main_rows.begin() + 2);
  best += 2;

  nlohmann::json tests = nlohmann::json::array();
  if (folds.size() >= 2) {
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i == best) continue;
      for (auto [mname, field] : {std::pair{"f1", &eval::BinaryScores::f1},
                                  std::pair{"accuracy", &eval::BinaryScores::accuracy}}) {
        auto t = eval::paired_t_test(metric(all[best].second, field), metric(all[i].second, field)).to_json();
        t["reference"] = all[best].first;
        t["system"] = all[i].first;
        t["metric"] = mname;
        tests.push_back(std::move(t));
      }
    }
  }
  return {{"kind", "dispute"},
          {"k", folds.size()},
          {"seed", opts.seed},
          {"main", main},
          {"ablation", ablation},
          {"t_tests", tests}};
}

namespace {

std::string pct(const nlohmann::json& cell) { return text::fixed(100.0 * cell.at("mean").get<double>(), 2); }

void tagger_block(const nlohmann::json& rows, const std::string& first, std::ostream& out) {
  out << "| " << first << " | Strict Agree | Strict Disagree | Strict Neutral | Soft Agree | Soft Disagree | Soft Neutral |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.at("system").get<std::string>();
    for (const char* mode : {"strict", "soft"})
      for (const char* c : {"agree", "disagree", "neutral"}) out << " | " << pct(r.at(mode).at(c));
    out << " |\n";
  }
}

void dispute_block(const nlohmann::json& rows, std::ostream& out) {
  out << "| System | Prec | Rec | F1 | Acc |\n|---|---|---|---|---|\n";
  for (const auto& r : rows)
    out << "| " << r.at("system").get<std::string>() << " | " << pct(r.at("precision")) << " | "
        << pct(r.at("recall")) << " | " << pct(r.at("f1")) << " | " << pct(r.at("accuracy")) << " |\n";
}

void t_block(const nlohmann::json& tests, std::ostream& out) {
  out << "| Reference | System | Measure | t | p | degenerate |\n|---|---|---|---|---|---|\n";
  for (const auto& t : tests) {
    std::string measure = t.contains("metric") ? t.at("metric").get<std::string>()
                                               : t.at("mode").get<std::string>() + " " + t.at("class").get<std::string>();
    const auto& tv = t.at("t");
    out << "| " << t.at("reference").get<std::string>() << " | " << t.at("system").get<std::string>() << " | "
        << measure << " | " << (tv.is_number() ? text::fixed(tv.get<double>(), 4) : tv.get<std::string>()) << " | "
        << text::fixed(t.at("p").get<double>(), 6) << " | " << (t.at("degenerate").get<bool>() ? "yes" : "no")
        << " |\n";
  }
}

}  // namespace

void render_tables(const nlohmann::json& tables, std::ostream& out) {
  const auto kind = tables.at("kind").get<std::string>();
  out << "# " << (kind == "tagger" ? "Agreement/disagreement tagging" : "Dispute detection") << " ("
      << tables.at("k").get<std::size_t>() << "-fold, seed " << tables.at("seed").get<std::uint64_t>()
      << "; scores x100, fold means)\n\n";
  if (kind == "tagger") {
    tagger_block(tables.at("main"), "System", out);
    out << "\n## Cumulative feature ablation (isotonic CRF)\n\n";
    tagger_block(tables.at("ablation"), "Features", out);
  } else {
    dispute_block(tables.at("main"), out);
    out << "\n## Feature-set ablation (logistic regression)\n\n";
    dispute_block(tables.at("ablation"), out);
  }
  out << "\n## Paired t-tests over folds\n\n";
  t_block(tables.at("t_tests"), out);
}

}  // namespace stancekit::pipeline
