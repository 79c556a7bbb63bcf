#include "stancekit/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "stancekit/pipeline.hpp"
#include "stancekit/text.hpp"

namespace stancekit::cli {

namespace {

namespace fs = std::filesystem;

// Bad flag combinations detected after parsing; reported like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return out;
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  auto out = open_out(p);
  out << j.dump(1) << '\n';
}

// Every option of the subcommand, given or defaulted. Thread count is a
// global option and deliberately absent so echoes match across --threads.
void echo_config(const CLI::App& sub, const fs::path& output) {
  nlohmann::json opts = nlohmann::json::object();
  for (const CLI::Option* o : sub.get_options()) {
    const auto name = o->get_name();
    if (name == "--help" || name.empty()) continue;
    if (o->count() > 0) {
      const auto& r = o->results();
      opts[name] = r.size() == 1 && o->get_expected_max() <= 1 ? nlohmann::json(r.front()) : nlohmann::json(r);
    } else {
      opts[name] = o->get_default_str();
    }
  }
  write_json(fs::path(output.string() + ".config.json"),
             {{"tool", "stancekit"}, {"subcommand", sub.get_name()}, {"options", opts}});
}

std::vector<corpus::Discussion> load_corpora(const std::vector<std::string>& paths) {
  std::vector<corpus::Discussion> all;
  for (const auto& p : paths) {
    auto ds = corpus::load_discussions(p);
    corpus::induce_gold_labels(ds);
    all.insert(all.end(), std::make_move_iterator(ds.begin()), std::make_move_iterator(ds.end()));
  }
  return all;
}

lexicon::ConflictPolicy parse_policy(const std::string& s) {
  if (s == "drop") return lexicon::ConflictPolicy::DropBoth;
  if (s == "keep-first") return lexicon::ConflictPolicy::KeepFirst;
  throw UsageError("--conflict must be drop or keep-first");
}

struct FeatureFlags {
  std::string families = "all";
  std::string hedges, negators, connectives;

  void add(CLI::App* app) {
    app->add_option("--families", families, "Feature families: lex,syn,disc,con,sent or all");
    app->add_option("--hedges", hedges, "Hedge phrase list (one per line)");
    app->add_option("--negators", negators, "Negator list (one per line)");
    app->add_option("--connectives", connectives, "Connective list (one per line)");
  }
  features::FeatureConfig config() const {
    auto cfg = features::FeatureConfig::defaults();
    try {
      cfg.families = features::FamilySet::parse(families);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!hedges.empty()) cfg.hedges = features::load_phrase_list(hedges);
    if (!negators.empty()) cfg.negators = features::load_phrase_list(negators);
    if (!connectives.empty()) cfg.connectives = features::load_phrase_list(connectives);
    return cfg;
  }
};

struct TrainFlags {
  double eta0 = 0.1, t0 = 0.0, l2 = 1.0;
  std::size_t epochs = 30, batch = 1;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--eta0", eta0, "Initial step size");
    app->add_option("--t0", t0, "Step decay horizon (0 = training set size)");
    app->add_option("--l2", l2, "L2 penalty");
    app->add_option("--epochs", epochs, "Training epochs");
    app->add_option("--batch-size", batch, "Sequences per update");
    app->add_option("--seed", seed, "Shuffle seed");
  }
  icrf::TrainConfig config() const {
    icrf::TrainConfig c;
    c.eta0 = eta0;
    c.t0 = t0;
    c.l2 = l2;
    c.epochs = epochs;
    c.batch_size = batch;
    c.seed = seed;
    return c;
  }
};

struct LogisticFlags {
  double l2 = 1e-3;
  std::size_t epochs = 200;

  void add(CLI::App* app) {
    app->add_option("--logistic-l2", l2, "Logistic regression L2 penalty");
    app->add_option("--logistic-epochs", epochs, "Logistic regression gradient steps");
  }
  shallow::LogisticConfig config(std::uint64_t seed) const { return {l2, epochs, seed}; }
};

dispute::DisputeFamilySet parse_dispute_families(const std::string& s) {
  try {
    return dispute::DisputeFamilySet::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::vector<dispute::TaggedUnit>> tag_units(const pipeline::Tagger& tagger,
                                                        std::span<const corpus::Discussion> ds) {
  const auto tags = tagger.tag(ds);
  std::vector<std::vector<dispute::TaggedUnit>> out;
  for (std::size_t i = 0; i < ds.size(); ++i) out.push_back(pipeline::tagged_units(ds[i], tags[i]));
  return out;
}

std::vector<dispute::TaggedUnit> gold_units_of(const corpus::Discussion& d) {
  pipeline::TurnLabels tags;
  for (const auto& t : d.turns) {
    tags.emplace_back();
    for (const auto& u : t.utterances) tags.back().push_back(u.gold_or_neutral());
  }
  return pipeline::tagged_units(d, tags);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discussion sentiment lexicon, isotonic CRF stance tagging and dispute detection", "stancekit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: STANCEKIT_THREADS or all cores)");

  // build-lexicon
  auto* lex_cmd = app.add_subcommand("build-lexicon", "Induce a lexicon from a corpus by label propagation");
  std::vector<std::string> lex_corpus, lex_seeds;
  std::string lex_out, lex_graph, lex_conflict = "drop";
  lexicon::BuildOptions lex_opts;
  lex_cmd->add_option("--corpus", lex_corpus, "Discussion JSONL file(s)")->required();
  lex_cmd->add_option("--seeds", lex_seeds, "Seed lexicon TSV file(s)")->required();
  lex_cmd->add_option("--out", lex_out, "Lexicon TSV output")->required();
  lex_cmd->add_option("--graph-out", lex_graph, "Optional edge list TSV output");
  lex_cmd->add_option("--conflict", lex_conflict, "Seed conflict policy: drop or keep-first");
  lex_cmd->add_option("--min-discussions", lex_opts.min_discussions, "Minimum discussion frequency of a text unit");
  lex_cmd->add_option("--top-k", lex_opts.graph.top_k, "PMI vector length");
  lex_cmd->add_option("--iterations", lex_opts.propagation.iterations, "Propagation sweeps");
  lex_cmd->add_option("--tolerance", lex_opts.propagation.tolerance, "Early-stop change threshold");
  lex_cmd->add_option("--pos-threshold", lex_opts.pos_threshold, "Positive membership threshold");
  lex_cmd->add_option("--neg-threshold", lex_opts.neg_threshold, "Negative membership threshold");

  // train-tagger
  auto* tt_cmd = app.add_subcommand("train-tagger", "Train the isotonic CRF tagger");
  std::vector<std::string> tt_corpus;
  std::string tt_lexicon, tt_out, tt_dev;
  bool tt_down = false, tt_no_iso = false;
  double tt_theta = 0.3;
  FeatureFlags tt_feat;
  TrainFlags tt_train;
  tt_cmd->add_option("--corpus", tt_corpus, "Training discussion JSONL file(s)")->required();
  tt_cmd->add_option("--lexicon", tt_lexicon, "Lexicon TSV")->required();
  tt_cmd->add_option("--out", tt_out, "Model JSON output")->required();
  tt_cmd->add_option("--dev", tt_dev, "Held-out corpus; metrics go to <out>.dev.json");
  tt_cmd->add_flag("--downsample", tt_down, "Drop all-neutral training turns");
  tt_cmd->add_flag("--no-isotonic", tt_no_iso, "Train without monotonicity constraints");
  tt_cmd->add_option("--constraint-threshold", tt_theta, "Minimum |lexicon score| of a constrained feature");
  tt_feat.add(tt_cmd);
  tt_train.add(tt_cmd);

  // tag
  auto* tag_cmd = app.add_subcommand("tag", "Tag utterances with a trained model");
  std::string tag_model, tag_out;
  std::vector<std::string> tag_corpus;
  tag_cmd->add_option("--model", tag_model, "Tagger model JSON")->required();
  tag_cmd->add_option("--corpus", tag_corpus, "Discussion JSONL file(s)")->required();
  tag_cmd->add_option("--out", tag_out, "Prediction JSONL output")->required();

  // eval-tagger
  auto* ev_cmd = app.add_subcommand("eval-tagger", "Score predictions against gold labels");
  std::vector<std::string> ev_corpus;
  std::string ev_pred, ev_out;
  bool ev_soft = false;
  ev_cmd->add_option("--corpus", ev_corpus, "Gold discussion JSONL file(s)")->required();
  ev_cmd->add_option("--predictions", ev_pred, "Prediction JSONL")->required();
  ev_cmd->add_option("--out", ev_out, "Report JSON output")->required();
  ev_cmd->add_flag("--soft", ev_soft, "Soft F1: forgive neutral predictions on turn-derived gold");

  // baseline
  auto* bl_cmd = app.add_subcommand("baseline", "Polarity or pronoun-distance baseline");
  std::string bl_kind = "polarity", bl_lexicon, bl_out;
  std::vector<std::string> bl_corpus, bl_train;
  LogisticFlags bl_log;
  std::uint64_t bl_seed = 1;
  bl_cmd->add_option("--kind", bl_kind, "polarity or distance")->check(CLI::IsMember({"polarity", "distance"}));
  bl_cmd->add_option("--lexicon", bl_lexicon, "Lexicon TSV")->required();
  bl_cmd->add_option("--corpus", bl_corpus, "Discussion JSONL file(s) to predict")->required();
  bl_cmd->add_option("--train", bl_train, "Training corpus (distance baseline)");
  bl_cmd->add_option("--out", bl_out, "Prediction JSONL output")->required();
  bl_cmd->add_option("--seed", bl_seed, "Seed");
  bl_log.add(bl_cmd);

  // train-dispute
  auto* td_cmd = app.add_subcommand("train-dispute", "Train the dispute classifier");
  std::vector<std::string> td_corpus;
  std::string td_tagger, td_out, td_fam = "all";
  bool td_within = false;
  std::uint64_t td_seed = 1;
  LogisticFlags td_log;
  td_cmd->add_option("--corpus", td_corpus, "Discussion JSONL with dispute_gold")->required();
  td_cmd->add_option("--tagger", td_tagger, "Tagger model JSON (default: gold utterance labels)");
  td_cmd->add_option("--out", td_out, "Model JSON output")->required();
  td_cmd->add_option("--families", td_fam, "lex,top,dis,senti-g,senti-l or all");
  td_cmd->add_flag("--within-turn", td_within, "Count sentiment transitions inside turns only");
  td_cmd->add_option("--seed", td_seed, "Seed");
  td_log.add(td_cmd);

  // detect-dispute
  auto* dd_cmd = app.add_subcommand("detect-dispute", "Predict dispute labels");
  std::vector<std::string> dd_corpus;
  std::string dd_model, dd_tagger, dd_out;
  dd_cmd->add_option("--model", dd_model, "Dispute model JSON")->required();
  dd_cmd->add_option("--tagger", dd_tagger, "Tagger model JSON (default: gold utterance labels)");
  dd_cmd->add_option("--corpus", dd_corpus, "Discussion JSONL file(s)")->required();
  dd_cmd->add_option("--out", dd_out, "Prediction JSONL output")->required();

  // rank-features
  auto* rf_cmd = app.add_subcommand("rank-features", "Rank tagger features by chi-square against a class");
  std::vector<std::string> rf_corpus;
  std::string rf_tagger, rf_lexicon, rf_out, rf_dump, rf_method = "chi2", rf_class = "all";
  FeatureFlags rf_feat;
  rf_cmd->add_option("--corpus", rf_corpus, "Gold discussion JSONL file(s)")->required();
  rf_cmd->add_option("--tagger", rf_tagger, "Use this model's featurizer");
  rf_cmd->add_option("--lexicon", rf_lexicon, "Fit a featurizer on --corpus with this lexicon");
  rf_cmd->add_option("--method", rf_method, "Ranking statistic")->check(CLI::IsMember({"chi2"}));
  rf_cmd->add_option("--class", rf_class, "agree, disagree, neutral or all")
      ->check(CLI::IsMember({"agree", "disagree", "neutral", "all"}));
  rf_cmd->add_option("--out", rf_out, "Ranking TSV output")->required();
  rf_cmd->add_option("--dump", rf_dump, "Also write per-unit binary features as JSONL");
  rf_feat.add(rf_cmd);

  // flow
  auto* fl_cmd = app.add_subcommand("flow", "Export per-speaker smoothed sentiment flow");
  std::vector<std::string> fl_corpus;
  std::string fl_tagger, fl_out, fl_disc;
  dispute::FlowOptions fl_opts;
  fl_cmd->add_option("--corpus", fl_corpus, "Discussion JSONL file(s)")->required();
  fl_cmd->add_option("--tagger", fl_tagger, "Tagger model JSON (default: gold utterance labels)");
  fl_cmd->add_option("--discussion", fl_disc, "Discussion id (default: first)");
  fl_cmd->add_option("--sigma", fl_opts.sigma, "Gaussian kernel width in units");
  fl_cmd->add_option("--samples-per-unit", fl_opts.samples_per_unit, "Spline samples per unit");
  fl_cmd->add_option("--out", fl_out, "CSV output")->required();

  // crossval
  auto* cv_cmd = app.add_subcommand("crossval", "k-fold cross-validation");
  std::vector<std::string> cv_corpus;
  std::string cv_task = "tagger", cv_lexicon, cv_tagger, cv_out, cv_fam = "all";
  std::size_t cv_k = 5;
  bool cv_tables = false, cv_down = false, cv_no_iso = false;
  double cv_theta = 0.3;
  FeatureFlags cv_feat;
  TrainFlags cv_train;
  LogisticFlags cv_log;
  cv_cmd->add_option("--task", cv_task, "tagger or dispute")->check(CLI::IsMember({"tagger", "dispute"}));
  cv_cmd->add_option("--corpus", cv_corpus, "Discussion JSONL file(s)")->required();
  cv_cmd->add_option("--lexicon", cv_lexicon, "Lexicon TSV (tagger task)");
  cv_cmd->add_option("--tagger", cv_tagger, "Tagger model JSON (dispute task; default gold labels)");
  cv_cmd->add_option("--k", cv_k, "Folds");
  cv_cmd->add_option("--dispute-families", cv_fam, "Dispute families for the single-configuration run");
  cv_cmd->add_flag("--tables", cv_tables, "Run every table row and write <out>.md");
  cv_cmd->add_flag("--downsample", cv_down, "Tagger task: drop all-neutral training turns");
  cv_cmd->add_flag("--no-isotonic", cv_no_iso, "Tagger task: no monotonicity constraints");
  cv_cmd->add_option("--constraint-threshold", cv_theta, "Minimum |lexicon score| of a constrained feature");
  cv_cmd->add_option("--out", cv_out, "Result JSON output")->required();
  cv_feat.add(cv_cmd);
  cv_train.add(cv_cmd);
  cv_log.add(cv_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (threads <= 0)
    if (const char* env = std::getenv("STANCEKIT_THREADS")) threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*lex_cmd) {
      std::vector<fs::path> seed_paths(lex_seeds.begin(), lex_seeds.end());
      const auto seeds = lexicon::load_seeds(seed_paths, parse_policy(lex_conflict));
      const auto ds = load_corpora(lex_corpus);
      const auto built = lexicon::build_lexicon(ds, seeds, lex_opts);
      {
        auto o = open_out(lex_out);
        built.lexicon.write_tsv(o);
      }
      echo_config(*lex_cmd, lex_out);
      if (!lex_graph.empty()) {
        auto o = open_out(lex_graph);
        lexicon::write_graph_tsv(o, built.graph);
      }
      err << "lexicon: " << built.lexicon.size() << " entries, graph " << built.graph.size() << " nodes / "
          << built.graph.edge_count() << " edges, " << built.propagation.sweeps << " sweeps\n";
    } else if (*tt_cmd) {
      pipeline::TaggerOptions opts;
      opts.features = tt_feat.config();
      opts.train = tt_train.config();
      opts.isotonic = !tt_no_iso;
      opts.downsample = tt_down;
      opts.constraint_threshold = tt_theta;
      const auto ds = load_corpora(tt_corpus);
      const auto lex = lexicon::Lexicon::load(tt_lexicon);
      const auto tagger = pipeline::Tagger::train(ds, lex, opts);
      tagger.save(tt_out);
      echo_config(*tt_cmd, tt_out);
      if (!tt_dev.empty()) {
        const auto dev = load_corpora({tt_dev});
        const auto tags = tagger.tag(dev);
        write_json(tt_out + ".dev.json", pipeline::score_tagger(dev, pipeline::flatten_stances(tags)).to_json());
      }
      err << "tagger: " << tagger.model().num_features() << " features, " << tagger.model().constrained_count()
          << " constrained\n";
    } else if (*tag_cmd) {
      const auto tagger = pipeline::Tagger::load(tag_model);
      const auto ds = load_corpora(tag_corpus);
      const auto tags = tagger.tag(ds);
      auto o = open_out(tag_out);
      pipeline::write_predictions(ds, tags, o);
      o.close();
      echo_config(*tag_cmd, tag_out);
    } else if (*ev_cmd) {
      const auto ds = load_corpora(ev_corpus);
      std::ifstream in(ev_pred);
      if (!in) throw std::runtime_error("cannot open " + ev_pred);
      const auto pred = pipeline::read_predictions(in, ds);
      const auto scores = pipeline::score_tagger(ds, pred);
      const auto& report = ev_soft ? scores.soft : scores.strict;
      write_json(ev_out, report.to_json());
      echo_config(*ev_cmd, ev_out);
      for (auto s : kAllStances)
        out << to_string(s) << " f1=" << text::fixed(report[s].f1, 4) << '\n';
    } else if (*bl_cmd) {
      const auto lex = lexicon::Lexicon::load(bl_lexicon);
      const auto ds = load_corpora(bl_corpus);
      std::vector<Stance> pred;
      if (bl_kind == "polarity") {
        pred = pipeline::polarity_predictions(ds, lex);
      } else {
        if (bl_train.empty()) throw UsageError("--kind distance needs --train");
        const auto train = load_corpora(bl_train);
        pred = pipeline::DistanceBaseline::train(train, lex, bl_log.config(bl_seed)).predict(ds);
      }
      auto o = open_out(bl_out);
      std::size_t i = 0;
      for (const auto& d : ds)
        for (const auto& t : d.turns)
          for (const auto& u : t.utterances)
            o << nlohmann::json{{"discussion", d.id}, {"turn", t.ordinal}, {"utterance", u.id},
                                {"stance", to_string(pred[i++])}}
                     .dump()
              << '\n';
      o.close();
      echo_config(*bl_cmd, bl_out);
    } else if (*td_cmd) {
      dispute::DisputeConfig cfg;
      cfg.families = parse_dispute_families(td_fam);
      cfg.within_turn_transitions = td_within;
      const auto ds = load_corpora(td_corpus);
      std::vector<std::vector<dispute::TaggedUnit>> units;
      if (td_tagger.empty())
        for (const auto& d : ds) units.push_back(gold_units_of(d));
      else
        units = tag_units(pipeline::Tagger::load(td_tagger), ds);
      const auto det = pipeline::DisputeDetector::train(ds, units, cfg, td_log.config(td_seed));
      det.save(td_out);
      echo_config(*td_cmd, td_out);
    } else if (*dd_cmd) {
      const auto det = pipeline::DisputeDetector::load(dd_model);
      const auto ds = load_corpora(dd_corpus);
      std::vector<std::vector<dispute::TaggedUnit>> units;
      if (dd_tagger.empty())
        for (const auto& d : ds) units.push_back(gold_units_of(d));
      else
        units = tag_units(pipeline::Tagger::load(dd_tagger), ds);
      auto o = open_out(dd_out);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto p = det.predict(ds[i], units[i]);
        o << nlohmann::json{{"id", ds[i].id}, {"is_dispute", p.is_dispute}, {"probability", p.probability}}.dump()
          << '\n';
      }
      o.close();
      echo_config(*dd_cmd, dd_out);
    } else if (*rf_cmd) {
      const auto ds = load_corpora(rf_corpus);
      features::Featurizer fz;
      if (!rf_tagger.empty()) {
        fz = pipeline::Tagger::load(rf_tagger).featurizer();
      } else if (!rf_lexicon.empty()) {
        fz = features::Featurizer(rf_feat.config(), lexicon::Lexicon::load(rf_lexicon));
        fz.fit(ds);
      } else {
        throw UsageError("rank-features needs --tagger or --lexicon");
      }
      const auto feats = fz.extract(ds);
      std::vector<features::FeatureVector> units;
      std::vector<std::string> classes;
      for (std::size_t d = 0; d < ds.size(); ++d)
        for (std::size_t t = 0; t < ds[d].turns.size(); ++t)
          for (std::size_t u = 0; u < ds[d].turns[t].utterances.size(); ++u) {
            units.push_back(feats[d][t][u]);
            classes.emplace_back(to_string(collapse(ds[d].turns[t].utterances[u].gold_or_neutral())));
          }
      auto o = open_out(rf_out);
      for (auto s : kAllStances) {
        const std::string cls(to_string(s));
        if (rf_class != "all" && rf_class != cls) continue;
        eval::write_chi2_tsv(eval::chi2_rank(units, classes, cls), o);
      }
      o.close();
      echo_config(*rf_cmd, rf_out);
      if (!rf_dump.empty()) {
        auto dump = open_out(rf_dump);
        for (std::size_t i = 0; i < units.size(); ++i) {
          nlohmann::json names = nlohmann::json::array();
          for (const auto& [name, v] : units[i]) names.push_back(name);
          dump << nlohmann::json{{"class", classes[i]}, {"features", names}}.dump() << '\n';
        }
      }
    } else if (*fl_cmd) {
      const auto ds = load_corpora(fl_corpus);
      if (ds.empty()) throw std::runtime_error("corpus has no discussions");
      const corpus::Discussion* d = &ds.front();
      if (!fl_disc.empty()) {
        d = nullptr;
        for (const auto& x : ds)
          if (x.id == fl_disc) d = &x;
        if (!d) throw std::runtime_error("no discussion with id '" + fl_disc + "'");
      }
      const auto units =
          fl_tagger.empty() ? gold_units_of(*d) : pipeline::tagged_units(*d, pipeline::Tagger::load(fl_tagger).tag(*d));
      auto o = open_out(fl_out);
      dispute::write_flow_csv(dispute::sentiment_flow(units, fl_opts), o);
      o.close();
      echo_config(*fl_cmd, fl_out);
    } else if (*cv_cmd) {
      const auto ds = load_corpora(cv_corpus);
      pipeline::TableOptions topts;
      topts.k = cv_k;
      topts.seed = cv_train.seed;
      topts.tagger.features = cv_feat.config();
      topts.tagger.train = cv_train.config();
      topts.tagger.isotonic = !cv_no_iso;
      topts.tagger.downsample = cv_down;
      topts.tagger.constraint_threshold = cv_theta;
      topts.logistic = cv_log.config(cv_train.seed);
      nlohmann::json result;
      if (cv_task == "tagger") {
        if (cv_lexicon.empty()) throw UsageError("--task tagger needs --lexicon");
        const auto lex = lexicon::Lexicon::load(cv_lexicon);
        if (cv_tables) {
          result = pipeline::tagger_tables(ds, lex, topts);
        } else {
          const auto folds = pipeline::crossval_tagger(ds, lex, topts.tagger, cv_k, cv_train.seed);
          result = pipeline::summarize(folds);
        }
      } else {
        std::vector<std::vector<dispute::TaggedUnit>> units;
        if (cv_tagger.empty())
          for (const auto& d : ds) units.push_back(gold_units_of(d));
        else
          units = tag_units(pipeline::Tagger::load(cv_tagger), ds);
        if (cv_tables) {
          result = pipeline::dispute_tables(ds, units, topts);
        } else {
          dispute::DisputeConfig cfg;
          cfg.families = parse_dispute_families(cv_fam);
          result = pipeline::summarize(pipeline::crossval_dispute(ds, units, cfg, topts.logistic, cv_k, cv_train.seed));
        }
      }
      write_json(cv_out, result);
      if (cv_tables) {
        auto md = open_out(cv_out + ".md");
        pipeline::render_tables(result, md);
      }
      echo_config(*cv_cmd, cv_out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace stancekit::cli
