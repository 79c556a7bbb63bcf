#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "stancekit/features.hpp"
#include "stancekit/text.hpp"

namespace stancekit::features {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Lex: return "lex";
    case Family::Syn: return "syn";
    case Family::Disc: return "disc";
    case Family::Con: return "con";
    case Family::Sent: return "sent";
  }
  return "lex";
}

std::string_view family_prefix(Family f) {
  switch (f) {
    case Family::Lex: return "lex:";
    case Family::Syn: return "syn:";
    case Family::Disc: return "disc:";
    case Family::Con: return "conv:";
    case Family::Sent: return "sent:";
  }
  return "lex:";
}

FamilySet FamilySet::parse(std::string_view csv) {
  FamilySet s;
  std::string cur;
  auto flush = [&] {
    auto name = text::to_lower(text::strip_space(cur));
    cur.clear();
    if (name.empty()) return;
    if (name == "all") {
      s = all();
      return;
    }
    for (auto f : kAllFamilies)
      if (family_name(f) == name) {
        s.add(f);
        return;
      }
    throw std::invalid_argument("unknown feature family '" + name + "'");
  };
  for (char c : csv) {
    if (c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return s;
}

std::string FamilySet::to_string() const {
  std::string out;
  for (auto f : kAllFamilies)
    if (has(f)) {
      if (!out.empty()) out.push_back(',');
      out.append(family_name(f));
    }
  return out;
}

std::vector<FamilySet> cumulative_ablation() {
  std::vector<FamilySet> out;
  FamilySet s;
  for (auto f : kAllFamilies) out.push_back(s.add(f));
  return out;
}

void FeatureConfig::validate() const {
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (!(cuts[i - 1] < cuts[i])) throw std::invalid_argument("bin cut points must strictly increase");
}

FeatureConfig FeatureConfig::defaults() {
  FeatureConfig c;
  c.hedges = default_hedges();
  c.negators = default_negators();
  c.connectives = default_connectives();
  return c;
}

std::vector<std::string> default_hedges() {
  return {"may",        "might",      "could",       "should",        "would",
          "possible",   "possibly",   "probably",    "perhaps",       "likely",
          "unlikely",   "appear",     "appears",     "appeared",      "seem",
          "seems",      "seemed",     "suggest",     "suggests",      "suggested",
          "suggestion", "believe",    "think",       "assume",        "presumably",
          "apparently", "potentially", "indicate",   "indicates",     "whether",
          "or not",     "i think",    "i believe",   "it seems",      "in my opinion",
          "not sure",   "tend to",    "to confirm",  "approximately", "roughly",
          "generally",  "usually",    "suspect"};
}

std::vector<std::string> default_negators() {
  return {"not", "n't", "no", "never", "none", "nobody", "nothing", "neither", "nor", "cannot"};
}

std::vector<std::string> default_connectives() {
  return {"but",         "however",  "although",   "though",         "because",
          "since",       "so",       "therefore",  "thus",           "and",
          "or",          "also",     "while",      "whereas",        "yet",
          "instead",     "unless",   "if",         "then",           "still",
          "nevertheless", "nonetheless", "moreover", "furthermore",  "meanwhile",
          "otherwise",   "indeed",   "rather",     "besides",        "hence",
          "in contrast", "on the other hand", "for example", "for instance",
          "as a result", "in fact",  "in addition", "even though",   "so that",
          "after all"};
}

std::vector<std::string> load_phrase_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read phrase list " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto toks = text::split_ws(text::to_lower(line));
    if (!toks.empty()) out.push_back(text::join(toks, " "));
  }
  return out;
}

std::vector<std::string> numeric_feature_names(FamilySet families) {
  std::vector<std::string> out;
  if (families.has(Family::Lex)) {
    out.emplace_back(kNumUpper);
    out.emplace_back(kNumWords);
  }
  if (families.has(Family::Disc)) out.emplace_back(kNumNegators);
  if (families.has(Family::Con)) {
    out.emplace_back(kQuoteOverlap);
    out.emplace_back(kTfidfSim);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void set_nonzero(FeatureVector& v, std::string_view name, double x) {
  if (x != 0.0) v[std::string(name)] = x;
}

std::vector<std::vector<std::string>> tokenize_phrases(const std::vector<std::string>& phrases) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : phrases) {
    auto toks = text::split_ws(p);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

}  // namespace

FeatureVector lexical_features(const corpus::Utterance& u) {
  FeatureVector v;
  std::size_t upper = 0, words = 0;
  for (const auto& s : u.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      ++words;
      if (text::is_all_upper_word(t.form)) ++upper;
      v["lex:uni:" + t.lowercase] = 1.0;
      if (i + 1 < s.tokens.size()) v["lex:bi:" + t.lowercase + "_" + s.tokens[i + 1].lowercase] = 1.0;
    }
  }
  set_nonzero(v, kNumUpper, static_cast<double>(upper));
  set_nonzero(v, kNumWords, static_cast<double>(words));
  return v;
}

FeatureVector syntactic_features(const corpus::Utterance& u) {
  FeatureVector v;
  for (const auto& s : u.sentences) {
    for (const auto& t : s.tokens) {
      if (t.pos) v["syn:" + t.lowercase + "/" + *t.pos] = 1.0;
      if (!t.head || *t.head <= 0 || !t.deprel) continue;
      const auto& h = s.tokens[static_cast<std::size_t>(*t.head - 1)];
      const auto& rel = *t.deprel;
      v["syn:" + rel + "(" + h.lowercase + "," + t.lowercase + ")"] = 1.0;
      if (h.pos) v["syn:" + rel + "(" + *h.pos + "," + t.lowercase + ")"] = 1.0;
      if (t.pos) v["syn:" + rel + "(" + h.lowercase + "," + *t.pos + ")"] = 1.0;
    }
  }
  return v;
}

FeatureVector discourse_features(const corpus::Utterance& u, const FeatureConfig& cfg) {
  FeatureVector v;
  for (const auto& s : u.sentences) {
    std::vector<std::string> head;
    for (std::size_t n = 0; n < 3 && n < s.tokens.size(); ++n) {
      head.push_back(s.tokens[n].lowercase);
      v["disc:init" + std::to_string(n + 1) + ":" + text::join(head, "_")] = 1.0;
    }

    // Maximal punctuation runs, continuing across token boundaries.
    std::string run;
    auto flush = [&] {
      if (run.size() >= 2) v["disc:punct:" + (run.size() > 3 ? run.substr(0, 3) + "+" : run)] = 1.0;
      run.clear();
    };
    for (const auto& t : s.tokens)
      for (char c : t.form) {
        if (text::is_punct_token(std::string_view(&c, 1))) {
          run.push_back(c);
        } else {
          flush();
        }
      }
    flush();
  }

  const auto toks = u.lowercase_tokens();
  for (const auto& phrase : tokenize_phrases(cfg.hedges))
    if (!text::find_phrase(toks, phrase).empty()) v["disc:hedge:" + text::join(phrase, "_")] = 1.0;

  const std::set<std::string> negators(cfg.negators.begin(), cfg.negators.end());
  const auto neg = std::count_if(toks.begin(), toks.end(),
                                 [&](const std::string& t) { return negators.count(t) > 0; });
  set_nonzero(v, kNumNegators, static_cast<double>(neg));
  return v;
}

IdfTable IdfTable::fit(std::span<const corpus::Discussion> ds) {
  IdfTable t;
  for (const auto& d : ds)
    for (const auto& turn : d.turns)
      for (const auto& u : turn.utterances) {
        ++t.documents_;
        auto toks = u.lowercase_tokens();
        std::sort(toks.begin(), toks.end());
        toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
        for (auto& w : toks) ++t.df_[std::move(w)];
      }
  return t;
}

double IdfTable::idf(std::string_view word) const {
  auto it = df_.find(word);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(documents_)) / (1.0 + df)) + 1.0;
}

nlohmann::json IdfTable::to_json() const {
  nlohmann::json df = nlohmann::json::object();
  for (const auto& [w, c] : df_) df[w] = c;
  return {{"documents", documents_}, {"df", std::move(df)}};
}

IdfTable IdfTable::from_json(const nlohmann::json& j) {
  IdfTable t;
  t.documents_ = j.at("documents").get<std::size_t>();
  for (const auto& [w, c] : j.at("df").items()) t.df_[w] = c.get<std::size_t>();
  return t;
}

double tfidf_cosine(std::span<const std::string> a, std::span<const std::string> b,
                    const IdfTable& idf) {
  std::map<std::string_view, double> va, vb;
  for (const auto& w : a) va[w] += 1.0;
  for (const auto& w : b) vb[w] += 1.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (auto& [w, tf] : va) {
    tf *= idf.idf(w);
    na += tf * tf;
  }
  for (auto& [w, tf] : vb) {
    tf *= idf.idf(w);
    nb += tf * tf;
  }
  for (const auto& [w, x] : va)
    if (auto it = vb.find(w); it != vb.end()) dot += x * it->second;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

const corpus::Turn* resolve_target(const corpus::Discussion& d, std::size_t turn_index) {
  if (turn_index >= d.turns.size()) return nullptr;
  const auto& turn = d.turns[turn_index];
  if (turn.reply_to) {
    for (std::size_t k = 0; k < turn_index; ++k)
      if (d.turns[k].ordinal == *turn.reply_to) return &d.turns[k];
  }
  return turn_index > 0 ? &d.turns[turn_index - 1] : nullptr;
}

FeatureVector conversation_features(const corpus::Utterance& u, const corpus::Turn* target,
                                    const IdfTable& idf) {
  FeatureVector v;
  if (!target) return v;
  std::vector<std::string> target_toks;
  for (const auto& tu : target->utterances) {
    auto t = tu.lowercase_tokens();
    target_toks.insert(target_toks.end(), t.begin(), t.end());
  }
  const std::set<std::string> target_set(target_toks.begin(), target_toks.end());

  const auto toks = u.lowercase_tokens();
  std::vector<bool> quoted(toks.size(), false);
  for (const auto& q : u.quotes)
    for (std::size_t k = q.start; k < q.end && k < toks.size(); ++k) quoted[k] = true;

  std::set<std::string> quote_types;
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (quoted[k]) {
      quote_types.insert(toks[k]);
    } else {
      rest.push_back(toks[k]);
    }
  }
  if (!quote_types.empty()) {
    const auto hit = std::count_if(quote_types.begin(), quote_types.end(),
                                   [&](const std::string& w) { return target_set.count(w) > 0; });
    set_nonzero(v, kQuoteOverlap, static_cast<double>(hit) / static_cast<double>(quote_types.size()));
  }
  set_nonzero(v, kTfidfSim, tfidf_cosine(rest, target_toks, idf));
  return v;
}

FeatureVector sentiment_features(const corpus::Utterance& u, const lexicon::Lexicon& lex,
                                 const FeatureConfig& cfg) {
  FeatureVector v;
  auto tag = [](int pol) { return pol > 0 ? std::string("pos") : std::string("neg"); };
  auto slot = [](int pol) { return pol > 0 ? std::string("SENTpos") : std::string("SENTneg"); };

  const auto toks = u.lowercase_tokens();
  std::vector<int> pol(toks.size());
  for (std::size_t k = 0; k < toks.size(); ++k) {
    pol[k] = lex.word_polarity(toks[k]);
    if (pol[k] != 0) v["sent:word:" + toks[k] + ":" + tag(pol[k])] = 1.0;
  }

  for (const auto& phrase : tokenize_phrases(cfg.connectives)) {
    const auto name = text::join(phrase, "_");
    for (auto start : text::find_phrase(toks, phrase)) {
      if (start > 0 && pol[start - 1] != 0) v["sent:conn:" + tag(pol[start - 1]) + "+" + name] = 1.0;
      const auto after = start + phrase.size();
      if (after < toks.size() && pol[after] != 0) v["sent:conn:" + name + "+" + tag(pol[after])] = 1.0;
    }
  }

  for (const auto& s : u.sentences)
    for (const auto& t : s.tokens) {
      if (!t.head || *t.head <= 0 || !t.deprel) continue;
      const auto& h = s.tokens[static_cast<std::size_t>(*t.head - 1)];
      const int ph = lex.word_polarity(h.lowercase), pd = lex.word_polarity(t.lowercase);
      if (ph == 0 && pd == 0) continue;
      v["sent:" + *t.deprel + "(" + (ph ? slot(ph) : h.lowercase) + "," +
        (pd ? slot(pd) : t.lowercase) + ")"] = 1.0;
    }
  return v;
}

FeatureVector assemble(const corpus::Utterance& u, const Context& ctx, const FeatureConfig& cfg) {
  FeatureVector v;
  auto merge = [&](FeatureVector part) { v.merge(part); };
  if (cfg.families.has(Family::Lex)) merge(lexical_features(u));
  if (cfg.families.has(Family::Syn)) merge(syntactic_features(u));
  if (cfg.families.has(Family::Disc)) merge(discourse_features(u, cfg));
  if (cfg.families.has(Family::Con) && ctx.discussion && ctx.idf)
    merge(conversation_features(u, resolve_target(*ctx.discussion, ctx.turn), *ctx.idf));
  if (cfg.families.has(Family::Sent) && ctx.lexicon) merge(sentiment_features(u, *ctx.lexicon, cfg));
  return v;
}

FeatureVector filter_families(const FeatureVector& v, FamilySet families) {
  FeatureVector out;
  for (const auto& [name, x] : v)
    for (auto f : kAllFamilies)
      if (families.has(f) && name.starts_with(family_prefix(f))) {
        out.emplace(name, x);
        break;
      }
  return out;
}

std::optional<std::string> underlying_text_unit(std::string_view f) {
  auto unigram = [](std::string_view w) {
    return std::string(text::is_punct_token(w) ? "punct:" : "uni:") + std::string(w);
  };
  auto relation = [](std::string_view body, std::string_view kind) -> std::optional<std::string> {
    const auto open = body.find('(');
    if (open == std::string_view::npos || open == 0 || !body.ends_with(')')) return std::nullopt;
    if (body.find('/') != std::string_view::npos) return std::nullopt;
    return std::string(kind) + "Rel" + std::string(body.substr(open));
  };
  if (f.starts_with("lex:uni:")) return unigram(f.substr(8));
  if (f.starts_with("lex:bi:")) return "bi:" + std::string(f.substr(7));
  if (f.starts_with("disc:punct:")) return "punct:" + std::string(f.substr(11));
  if (f.starts_with("sent:word:")) {
    auto body = f.substr(10);
    const auto colon = body.rfind(':');
    if (colon == std::string_view::npos) return std::nullopt;
    return unigram(body.substr(0, colon));
  }
  if (f.starts_with("sent:conn:")) return std::nullopt;
  if (f.starts_with("sent:")) return relation(f.substr(5), "sdep:");
  if (f.starts_with("syn:")) return relation(f.substr(4), "dep:");
  return std::nullopt;
}

}  // namespace stancekit::features
