#include <algorithm>
#include <set>

#include "stancekit/lexicon.hpp"
#include "stancekit/text.hpp"

namespace stancekit::lexicon {

std::string_view to_string(UnitKind k) {
  switch (k) {
    case UnitKind::Unigram: return "unigram";
    case UnitKind::Bigram: return "bigram";
    case UnitKind::DepRel: return "deprel";
    case UnitKind::SentiDepRel: return "sentideprel";
    case UnitKind::Punct: return "punct";
  }
  return "unigram";
}

std::optional<UnitKind> parse_unit_kind(std::string_view s) {
  for (auto k : {UnitKind::Unigram, UnitKind::Bigram, UnitKind::DepRel, UnitKind::SentiDepRel,
                 UnitKind::Punct})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<UnitKind> kind_of_payload(std::string_view p) {
  if (p.starts_with("uni:")) return UnitKind::Unigram;
  if (p.starts_with("bi:")) return UnitKind::Bigram;
  if (p.starts_with("dep:")) return UnitKind::DepRel;
  if (p.starts_with("sdep:")) return UnitKind::SentiDepRel;
  if (p.starts_with("punct:")) return UnitKind::Punct;
  return std::nullopt;
}

int SeedSet::polarity(std::string_view word) const {
  if (positive.find(word) != positive.end()) return 1;
  if (negative.find(word) != negative.end()) return -1;
  return 0;
}

namespace {

std::string polar_slot(const std::string& word, const SeedSet& seeds) {
  switch (seeds.polarity(word)) {
    case 1: return "SENTpos";
    case -1: return "SENTneg";
    default: return word;
  }
}

}  // namespace

std::vector<std::string> sentence_units(const corpus::Sentence& s, const SeedSet* seeds,
                                        const UnitOptions& opts) {
  std::vector<std::string> out;
  const auto& toks = s.tokens;
  std::vector<std::string> lower;
  lower.reserve(toks.size());
  for (const auto& t : toks) lower.push_back(text::strip_space(text::to_lower(t.lowercase)));

  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (lower[i].empty()) continue;
    if (text::is_punct_token(lower[i])) {
      if (opts.punct) out.push_back("punct:" + lower[i]);
    } else {
      out.push_back("uni:" + lower[i]);
    }
    if (opts.bigrams && i + 1 < toks.size() && !lower[i + 1].empty())
      out.push_back("bi:" + lower[i] + "_" + lower[i + 1]);
  }

  if (opts.deprels || opts.senti_deprels) {
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (!t.head || *t.head <= 0 || !t.deprel) continue;
      const auto& head = lower[static_cast<std::size_t>(*t.head - 1)];
      const auto& dep = lower[i];
      if (head.empty() || dep.empty()) continue;
      // Relation names are generalized to a single label.
      if (opts.deprels) out.push_back("dep:Rel(" + head + "," + dep + ")");
      if (opts.senti_deprels && seeds) {
        auto h = polar_slot(head, *seeds), d = polar_slot(dep, *seeds);
        if (h != head || d != dep) out.push_back("sdep:Rel(" + h + "," + d + ")");
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<std::string, std::size_t> extract_text_units(std::span<const corpus::Discussion> ds,
                                                      const SeedSet* seeds,
                                                      std::size_t min_discussions,
                                                      const UnitOptions& opts) {
  std::map<std::string, std::size_t> freq;
  for (const auto& d : ds) {
    std::set<std::string> seen;
    for (const auto& turn : d.turns)
      for (const auto& u : turn.utterances)
        for (const auto& s : u.sentences)
          for (auto& unit : sentence_units(s, seeds, opts)) seen.insert(std::move(unit));
    for (const auto& unit : seen) ++freq[unit];
  }
  std::erase_if(freq, [&](const auto& kv) { return kv.second < min_discussions; });
  return freq;
}

}  // namespace stancekit::lexicon
