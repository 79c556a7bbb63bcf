#include "stancekit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <string_view>

#include <json.hpp>

#include "stancekit/text.hpp"

namespace stancekit::corpus {

using nlohmann::json;

std::size_t Utterance::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::vector<const Token*> Utterance::tokens() const {
  std::vector<const Token*> out;
  out.reserve(token_count());
  for (const auto& s : sentences)
    for (const auto& t : s.tokens) out.push_back(&t);
  return out;
}

std::vector<std::string> Utterance::lowercase_tokens() const {
  std::vector<std::string> out;
  out.reserve(token_count());
  for (const auto& s : sentences)
    for (const auto& t : s.tokens) out.push_back(t.lowercase);
  return out;
}

SentimentLabel Utterance::gold_or_neutral() const {
  return gold ? gold->label : SentimentLabel::O;
}

std::size_t Discussion::utterance_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.utterances.size();
  return n;
}

std::size_t Discussion::speaker_count() const {
  std::set<std::string_view> speakers;
  for (const auto& t : turns) speakers.insert(t.speaker);
  return speakers.size();
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Aawd: return "aawd";
    case Source::Iac: return "iac";
    case Source::Wikitalk: return "wikitalk";
  }
  return "wikitalk";
}

std::string_view to_string(DisputeSubcategory s) {
  switch (s) {
    case DisputeSubcategory::Controversy: return "controversy";
    case DisputeSubcategory::Rfc: return "rfc";
    case DisputeSubcategory::Resolved: return "resolved";
  }
  return "controversy";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Span: return "span";
    case Provenance::Turn: return "turn";
    case Provenance::Score: return "score";
  }
  return "span";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

struct FieldError {
  std::string field;
  std::string message;
};

[[noreturn]] void fail(std::string field, std::string message) {
  throw FieldError{std::move(field), std::move(message)};
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string req_string(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (!v || !v->is_string()) fail(path + key, "expected string");
  return v->get<std::string>();
}

std::optional<std::string> opt_string(const json& obj, const char* key,
                                      const std::string& path) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_string()) fail(path + key, "expected string");
  return v->get<std::string>();
}

std::optional<long long> opt_int(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_number_integer()) fail(path + key, "expected integer");
  return v->get<long long>();
}

const json& req_array(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (!v || !v->is_array()) fail(path + key, "expected array");
  return *v;
}

const json& opt_array(const json& obj, const char* key, const std::string& path) {
  static const json empty = json::array();
  const json* v = find(obj, key);
  if (!v) return empty;
  if (!v->is_array()) fail(path + key, "expected array");
  return *v;
}

bool is_number_string(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

Token parse_token(const json& j) {
  if (!j.is_object()) fail("tokens", "expected object");
  Token t;
  t.form = req_string(j, "form", "tokens.");
  t.lowercase = opt_string(j, "lowercase", "tokens.").value_or(text::to_lower(t.form));
  t.pos = opt_string(j, "pos", "tokens.");
  if (auto h = opt_int(j, "head", "tokens.")) t.head = static_cast<int>(*h);
  t.deprel = opt_string(j, "deprel", "tokens.");
  return t;
}

Sentence parse_sentence(const json& j) {
  if (!j.is_object()) fail("sentences", "expected object");
  Sentence s;
  for (const auto& tj : req_array(j, "tokens", "sentences.")) s.tokens.push_back(parse_token(tj));
  if (s.tokens.empty()) fail("sentences.tokens", "sentence has no tokens");
  const auto n = static_cast<int>(s.tokens.size());
  for (const auto& t : s.tokens)
    if (t.head && (*t.head < 0 || *t.head > n)) fail("tokens.head", "head index out of range");
  if (auto raw = opt_string(j, "raw", "sentences.")) {
    s.raw = *raw;
  } else {
    std::vector<std::string> forms;
    for (const auto& t : s.tokens) forms.push_back(t.form);
    s.raw = text::join(forms, " ");
  }
  return s;
}

Provenance parse_provenance(const std::string& s) {
  if (s == "span") return Provenance::Span;
  if (s == "turn") return Provenance::Turn;
  if (s == "score") return Provenance::Score;
  fail("gold.provenance", "unknown provenance '" + s + "'");
}

Utterance parse_utterance(const json& j, Source source) {
  if (!j.is_object()) fail("utterances", "expected object");
  Utterance u;
  u.id = req_string(j, "id", "utterances.");
  u.text = opt_string(j, "text", "utterances.").value_or("");
  for (const auto& sj : opt_array(j, "sentences", "utterances."))
    u.sentences.push_back(parse_sentence(sj));

  const std::size_t ntok = u.token_count();
  for (const auto& qj : opt_array(j, "quotes", "utterances.")) {
    if (!qj.is_object()) fail("quotes", "expected object");
    auto start = opt_int(qj, "start", "quotes.");
    auto end = opt_int(qj, "end", "quotes.");
    if (!start || !end) fail("quotes", "start and end are required");
    if (*start < 0 || *end < *start || static_cast<std::size_t>(*end) > ntok)
      fail("quotes", "span outside the utterance token range");
    Quote q{static_cast<std::size_t>(*start), static_cast<std::size_t>(*end), std::nullopt};
    if (auto st = opt_int(qj, "source_turn", "quotes.")) q.source_turn = static_cast<int>(*st);
    u.quotes.push_back(q);
  }

  if (const json* g = find(j, "gold")) {
    if (!g->is_object()) fail("gold", "expected object or null");
    const auto label_str = req_string(*g, "label", "gold.");
    auto label = parse_label(label_str);
    if (!label) fail("gold.label", "invalid label '" + label_str + "'");
    GoldLabel gold{*label, Provenance::Span};
    if (auto p = opt_string(*g, "provenance", "gold.")) gold.provenance = parse_provenance(*p);
    u.gold = gold;
  }

  for (const auto& aj : opt_array(j, "annotator_labels", "utterances.")) {
    if (!aj.is_object()) fail("annotator_labels", "expected object");
    AnnotatorLabel a;
    a.annotator = req_string(aj, "annotator", "annotator_labels.");
    const json* m = find(aj, "mark");
    if (!m) fail("annotator_labels.mark", "missing");
    if (m->is_number()) {
      a.mark = m->dump();
    } else if (m->is_string()) {
      a.mark = m->get<std::string>();
    } else {
      fail("annotator_labels.mark", "expected string or number");
    }
    if (source == Source::Iac) {
      if (!is_number_string(a.mark))
        fail("annotator_labels.mark", "expected numeric score, got '" + a.mark + "'");
    } else if (a.mark != "agree" && a.mark != "disagree" && a.mark != "neutral") {
      fail("annotator_labels.mark", "invalid mark '" + a.mark + "'");
    }
    auto origin = opt_string(aj, "origin", "annotator_labels.").value_or("span");
    if (origin == "span") {
      a.origin = MarkOrigin::Span;
    } else if (origin == "turn") {
      a.origin = MarkOrigin::Turn;
    } else {
      fail("annotator_labels.origin", "invalid origin '" + origin + "'");
    }
    u.annotator_labels.push_back(std::move(a));
  }
  return u;
}

Turn parse_turn(const json& j, Source source) {
  if (!j.is_object()) fail("turns", "expected object");
  Turn t;
  t.speaker = req_string(j, "speaker", "turns.");
  auto ord = opt_int(j, "ordinal", "turns.");
  if (!ord) fail("turns.ordinal", "missing");
  t.ordinal = static_cast<int>(*ord);
  if (auto r = opt_int(j, "reply_to", "turns.")) t.reply_to = static_cast<int>(*r);
  t.turn_label = opt_string(j, "turn_label", "turns.");
  if (t.turn_label && source == Source::Aawd && *t.turn_label != "agree" &&
      *t.turn_label != "disagree" && *t.turn_label != "neutral")
    fail("turns.turn_label", "invalid turn label '" + *t.turn_label + "'");
  for (const auto& uj : req_array(j, "utterances", "turns."))
    t.utterances.push_back(parse_utterance(uj, source));
  return t;
}

Discussion parse_discussion(const json& j) {
  if (!j.is_object()) fail("<root>", "expected object");
  Discussion d;
  d.id = req_string(j, "id", "");
  const auto source = req_string(j, "source", "");
  if (source == "aawd") {
    d.source = Source::Aawd;
  } else if (source == "iac") {
    d.source = Source::Iac;
  } else if (source == "wikitalk") {
    d.source = Source::Wikitalk;
  } else {
    fail("source", "unknown source '" + source + "'");
  }
  for (const auto& c : opt_array(j, "categories", "")) {
    if (!c.is_string()) fail("categories", "expected string");
    d.categories.push_back(c.get<std::string>());
  }
  if (auto rc = opt_int(j, "revision_count", "")) {
    if (*rc < 0) fail("revision_count", "must be non-negative");
    d.revision_count = static_cast<std::size_t>(*rc);
  }
  if (const json* g = find(j, "dispute_gold")) {
    if (!g->is_object()) fail("dispute_gold", "expected object or null");
    const json* isd = find(*g, "is_dispute");
    if (!isd || !isd->is_boolean()) fail("dispute_gold.is_dispute", "expected boolean");
    DisputeGold gold{isd->get<bool>(), std::nullopt};
    if (auto sub = opt_string(*g, "subcategory", "dispute_gold.")) {
      if (!gold.is_dispute)
        fail("dispute_gold.subcategory", "subcategory requires is_dispute=true");
      if (*sub == "controversy") {
        gold.subcategory = DisputeSubcategory::Controversy;
      } else if (*sub == "rfc") {
        gold.subcategory = DisputeSubcategory::Rfc;
      } else if (*sub == "resolved") {
        gold.subcategory = DisputeSubcategory::Resolved;
      } else {
        fail("dispute_gold.subcategory", "unknown subcategory '" + *sub + "'");
      }
    }
    d.dispute_gold = gold;
  }
  for (const auto& tj : req_array(j, "turns", "")) d.turns.push_back(parse_turn(tj, d.source));

  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    const auto& t = d.turns[i];
    if (i > 0 && t.ordinal <= d.turns[i - 1].ordinal)
      fail("turns.ordinal", "ordinals must be strictly increasing");
    if (t.reply_to && *t.reply_to >= t.ordinal)
      fail("turns.reply_to", "reply_to must precede the turn");
  }
  return d;
}

}  // namespace

std::vector<Discussion> parse_discussions(std::istream& in) {
  std::vector<Discussion> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, std::string("malformed JSON: ") + e.what());
    }
    try {
      out.push_back(parse_discussion(j));
    } catch (const FieldError& e) {
      throw ParseError(lineno, "field " + e.field + ": " + e.message);
    }
  }
  return out;
}

std::vector<Discussion> load_discussions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  try {
    return parse_discussions(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

GoldLabel induce_labels_aawd(std::span<const AnnotatorLabel> utterance_marks,
                             std::span<const AnnotatorLabel> turn_marks) {
  std::set<std::string_view> agree_span, disagree_span, agree_turn, disagree_turn;
  auto collect = [&](const AnnotatorLabel& a, bool from_turn) {
    const bool turn = from_turn || a.origin == MarkOrigin::Turn;
    if (a.mark == "agree") (turn ? agree_turn : agree_span).insert(a.annotator);
    if (a.mark == "disagree") (turn ? disagree_turn : disagree_span).insert(a.annotator);
  };
  for (const auto& a : utterance_marks) collect(a, false);
  for (const auto& a : turn_marks) collect(a, true);

  if (!agree_span.empty() || !disagree_span.empty()) {
    if (!agree_span.empty() && !disagree_span.empty()) return {SentimentLabel::O, Provenance::Span};
    if (agree_span.size() >= 2) return {SentimentLabel::PP, Provenance::Span};
    if (agree_span.size() == 1) return {SentimentLabel::P, Provenance::Span};
    if (disagree_span.size() >= 2) return {SentimentLabel::NN, Provenance::Span};
    return {SentimentLabel::N, Provenance::Span};
  }
  // Turn-level labels only apply to utterances lacking a span label.
  if (!agree_turn.empty() && !disagree_turn.empty()) return {SentimentLabel::O, Provenance::Span};
  if (!agree_turn.empty()) return {SentimentLabel::P, Provenance::Turn};
  if (!disagree_turn.empty()) return {SentimentLabel::N, Provenance::Turn};
  return {SentimentLabel::O, Provenance::Span};
}

SentimentLabel induce_labels_iac(double s) {
  if (!(s >= -5.0 && s <= 5.0))
    throw std::out_of_range("IAC score outside [-5, 5]: " + std::to_string(s));
  if (s <= -3.0) return SentimentLabel::NN;
  if (s > -3.0 && s <= -1.0) return SentimentLabel::N;
  if (s >= 3.0) return SentimentLabel::PP;
  if (s >= 1.0 && s < 3.0) return SentimentLabel::P;
  return SentimentLabel::O;
}

void induce_gold_labels(Discussion& d) {
  for (auto& turn : d.turns) {
    std::vector<AnnotatorLabel> turn_marks;
    if (d.source == Source::Aawd && turn.turn_label)
      turn_marks.push_back({"turn:" + turn.speaker, *turn.turn_label, MarkOrigin::Turn});
    for (auto& u : turn.utterances) {
      if (d.source == Source::Aawd) {
        if (u.annotator_labels.empty() && turn_marks.empty()) continue;
        u.gold = induce_labels_aawd(u.annotator_labels, turn_marks);
      } else if (d.source == Source::Iac) {
        if (u.annotator_labels.empty()) continue;
        double sum = 0.0;
        for (const auto& a : u.annotator_labels) sum += std::stod(a.mark);
        const double mean = sum / static_cast<double>(u.annotator_labels.size());
        u.gold = GoldLabel{induce_labels_iac(mean), Provenance::Score};
      }
    }
  }
}

void induce_gold_labels(std::vector<Discussion>& ds) {
  for (auto& d : ds) induce_gold_labels(d);
}

Discussion downsample(const Discussion& d) {
  Discussion out = d;
  out.turns.clear();
  for (const auto& t : d.turns) {
    const bool keep = std::any_of(t.utterances.begin(), t.utterances.end(), [](const Utterance& u) {
      return u.gold_or_neutral() != SentimentLabel::O;
    });
    if (keep) out.turns.push_back(t);
  }
  return out;
}

std::vector<Discussion> downsample(std::span<const Discussion> ds) {
  std::vector<Discussion> out;
  out.reserve(ds.size());
  for (const auto& d : ds) out.push_back(downsample(d));
  return out;
}

std::vector<std::vector<std::size_t>> split_folds(std::size_t n, std::size_t k,
                                                  std::uint64_t seed) {
  if (k < 2 || k > n)
    throw std::invalid_argument("fold count " + std::to_string(k) + " out of range for " +
                                std::to_string(n) + " discussions");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);

  std::vector<std::vector<std::size_t>> folds(k);
  const std::size_t base = n / k, extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

bool is_nondispute_candidate(const Discussion& d) {
  return d.speaker_count() >= 3 && d.turns.size() >= 10;
}

std::vector<Discussion> filter_nondispute_candidates(std::span<const Discussion> ds) {
  std::vector<Discussion> out;
  for (const auto& d : ds)
    if (is_nondispute_candidate(d)) out.push_back(d);
  return out;
}

}  // namespace stancekit::corpus
