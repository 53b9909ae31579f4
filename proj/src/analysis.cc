#include "stylevox/analysis.h"

#include <algorithm>
#include <map>

#include "stylevox/error.h"
#include "stylevox/phrase_matcher.h"
#include "stylevox/stats.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

struct MarkerPattern {
  FeatureId feature;
  std::string_view text;
};

constexpr MarkerPattern kMarkerPatterns[] = {
    {FeatureId::kAckDefinitive, "right"},
    {FeatureId::kAckDefinitive, "ok"},
    {FeatureId::kAckJustification, "i see, well"},
    {FeatureId::kAckJustification, "i see"},
    {FeatureId::kAckJustification, "well"},
    {FeatureId::kAckYeah, "yeah"},
    {FeatureId::kConfirmation, "let's see what we can find on"},
    {FeatureId::kConfirmation, "let's see what we can find"},
    {FeatureId::kConfirmation, "let's see"},
    {FeatureId::kConfirmation, "did you say"},
    {FeatureId::kInitialRejection, "mmm"},
    {FeatureId::kInitialRejection, "i'm not sure"},
    {FeatureId::kInitialRejection, "i don't know"},
    {FeatureId::kCompetenceMitigation, "come on"},
    {FeatureId::kCompetenceMitigation, "obviously"},
    {FeatureId::kCompetenceMitigation, "everybody knows that"},
    {FeatureId::kFilledPauseStative, "err"},
    {FeatureId::kFilledPauseStative, "i mean"},
    {FeatureId::kFilledPauseStative, "mmhm"},
    {FeatureId::kDownKindOf, "kind of"},
    {FeatureId::kDownLike, "like"},
    {FeatureId::kDownAround, "around"},
    {FeatureId::kIndicateSurprise, "oh"},
    {FeatureId::kGeneralSoftener, "sort of"},
    {FeatureId::kGeneralSoftener, "somewhat"},
    {FeatureId::kGeneralSoftener, "quite"},
    {FeatureId::kGeneralSoftener, "rather"},
    {FeatureId::kDownSubord, "i think that"},
    {FeatureId::kDownSubord, "i guess"},
    {FeatureId::kEmphasizer, "really"},
    {FeatureId::kEmphasizer, "basically"},
    {FeatureId::kEmphasizer, "actually"},
    {FeatureId::kEmphasizer, "just"},
    {FeatureId::kEmphYouKnow, "you know"},
    {FeatureId::kExpletives, "oh god"},
    {FeatureId::kExpletives, "damn"},
    {FeatureId::kExpletives, "oh gosh"},
    {FeatureId::kExpletives, "darn"},
    {FeatureId::kInGroupMarker, "pal"},
    {FeatureId::kInGroupMarker, "mate"},
    {FeatureId::kInGroupMarker, "buddy"},
    {FeatureId::kInGroupMarker, "friend"},
    {FeatureId::kTagQuestion, "alright?"},
    {FeatureId::kTagQuestion, "you see?"},
    {FeatureId::kTagQuestion, "ok?"},
};

const PhraseMatcher& marker_matcher() {
  static const PhraseMatcher matcher = [] {
    PhraseMatcher m;
    for (const MarkerPattern& p : kMarkerPatterns) m.add(std::string(p.text), static_cast<int>(p.feature));
    return m;
  }();
  return matcher;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Case-insensitive whole-token "it is" / "it's" starting at pos.
bool clause_subject_at(std::string_view text, std::size_t pos) {
  for (std::string_view lead : {"it is", "it's"}) {
    if (pos + lead.size() <= text.size() && iequals(text.substr(pos, lead.size()), lead) &&
        at_token_boundary(text, pos, pos + lead.size())) {
      return true;
    }
  }
  return false;
}

std::size_t skip_spaces(std::string_view text, std::size_t pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
  return pos;
}

int count_cue(std::string_view text, std::string_view cue) {
  int n = 0;
  for (std::size_t i = 0; i + cue.size() <= text.size(); ++i) {
    if (iequals(text.substr(i, cue.size()), cue) &&
        (i + cue.size() == text.size() || !is_word_byte(text[i + cue.size()]))) {
      ++n;
    }
  }
  return n;
}

}  // namespace

FeatureCounts count_features(std::string_view text) {
  FeatureCounts counts{};
  const auto at = [&](FeatureId f) -> int& { return counts[index_of(f)]; };

  std::vector<std::size_t> marker_ends;
  for (const PhraseMatch& m : marker_matcher().scan(text)) {
    const auto f = static_cast<FeatureId>(m.id);
    ++at(f);
    if (f != FeatureId::kEmphYouKnow) marker_ends.push_back(m.end);
  }

  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '!') ++at(FeatureId::kExclaim);
    if (text[i] == '.' && (i + 1 == text.size() || is_space(text[i + 1]))) ++at(FeatureId::kPeriod);
  }

  at(FeatureId::kAlsoCue) = count_cue(text, ", also");
  at(FeatureId::kWithCue) = count_cue(text, ", with");

  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    if (iequals(text.substr(i, 3), "and") && at_token_boundary(text, i, i + 3)) {
      const std::size_t next = skip_spaces(text, i + 3);
      if (next > i + 3 && clause_subject_at(text, next)) {
        ++at(FeatureId::kConjunction);
      } else {
        ++at(FeatureId::kAllMerge);
      }
    }
    if (text[i] == ',') {
      const std::size_t next = skip_spaces(text, i + 1);
      if (next > i + 1 && clause_subject_at(text, next) &&
          std::find(marker_ends.begin(), marker_ends.end(), i) == marker_ends.end()) {
        ++at(FeatureId::kConjunction);
      }
    }
  }
  return counts;
}

ModelFeatureStats mean_feature_vector(const std::vector<FeatureCounts>& corpus, std::string model) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no utterances for " + model);
  ModelFeatureStats stats;
  stats.model = std::move(model);
  stats.n = corpus.size();
  std::vector<double> column(corpus.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (std::size_t i = 0; i < corpus.size(); ++i) column[i] = corpus[i][f];
    stats.mean[f] = pairwise_sum(column) / static_cast<double>(corpus.size());
  }
  return stats;
}

FeatureObservation observe(std::size_t mr_id, const FeatureCounts& counts) {
  FeatureObservation o;
  o.mr_id = mr_id;
  for (std::size_t f = 0; f < kFeatureCount; ++f) o.values[f] = counts[f];
  return o;
}

std::string_view correlation_mode_name(CorrelationMode m) {
  return m == CorrelationMode::kPairedByMr ? "PAIRED_BY_MR" : "MEAN_BY_FEATURE";
}

std::optional<CorrelationMode> parse_correlation_mode(std::string_view token) {
  const std::string t = ascii_lower(token);
  if (t == "paired_by_mr") return CorrelationMode::kPairedByMr;
  if (t == "mean_by_feature") return CorrelationMode::kMeanByFeature;
  return std::nullopt;
}

CorrelationResult correlate_models(const FeatureCorpus& a, const FeatureCorpus& b, FeatureClass cls,
                                   CorrelationMode mode) {
  std::map<std::size_t, std::vector<const FeatureObservation*>> by_a;
  std::map<std::size_t, std::vector<const FeatureObservation*>> by_b;
  for (const auto& o : a) by_a[o.mr_id].push_back(&o);
  for (const auto& o : b) by_b[o.mr_id].push_back(&o);
  if (by_a.size() != by_b.size() ||
      !std::equal(by_a.begin(), by_a.end(), by_b.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw Error(ErrorCode::kMrSetMismatch, "corpora cover different MR sets");
  }
  if (a.empty()) throw Error(ErrorCode::kEmptyCorpus, "no observations");
  const std::vector<FeatureId> features = features_of(cls);

  std::vector<double> x;
  std::vector<double> y;
  if (mode == CorrelationMode::kMeanByFeature) {
    const auto mean_of = [](const FeatureCorpus& corpus, FeatureId f) {
      std::vector<double> column;
      for (const auto& o : corpus) column.push_back(o.values[index_of(f)]);
      return pairwise_sum(column) / static_cast<double>(column.size());
    };
    for (FeatureId f : features) {
      x.push_back(mean_of(a, f));
      y.push_back(mean_of(b, f));
    }
  } else {
    const auto push_pair = [&](const FeatureObservation& oa, const FeatureObservation& ob) {
      for (FeatureId f : features) {
        x.push_back(oa.values[index_of(f)]);
        y.push_back(ob.values[index_of(f)]);
      }
    };
    for (auto ia = by_a.begin(), ib = by_b.begin(); ia != by_a.end(); ++ia, ++ib) {
      const auto& la = ia->second;
      const auto& lb = ib->second;
      if (lb.size() == 1) {
        for (const auto* oa : la) push_pair(*oa, *lb[0]);
      } else if (la.size() == 1) {
        for (const auto* ob : lb) push_pair(*la[0], *ob);
      } else if (la.size() == lb.size()) {
        for (std::size_t i = 0; i < la.size(); ++i) push_pair(*la[i], *lb[i]);
      } else {
        throw Error(ErrorCode::kMrSetMismatch, "MR " + std::to_string(ia->first) + " has " +
                                                   std::to_string(la.size()) + " vs " +
                                                   std::to_string(lb.size()) + " outputs");
      }
    }
  }
  CorrelationResult out;
  out.r = pearson(x, y);
  out.n = x.size();
  out.p = pearson_significance(out.r, out.n);
  return out;
}

std::string_view verdict_name(NoveltyVerdict v) { return v == NoveltyVerdict::kNovel ? "NOVEL" : "NOT_NOVEL"; }

NoveltyVerdict novelty_verdict(double r_child_a, double r_child_b, std::optional<double> r_child_oracle,
                               std::optional<double> r_oracle_a, const NoveltyThresholds& t) {
  if (std::max(r_child_a, r_child_b) >= t.max_parent_r) return NoveltyVerdict::kNotNovel;
  if (r_child_oracle && r_oracle_a && !(*r_child_oracle < *r_oracle_a)) return NoveltyVerdict::kNotNovel;
  return NoveltyVerdict::kNovel;
}

NoveltyReport novelty_report(const FeatureCorpus& child, const FeatureCorpus& parent_a,
                             const FeatureCorpus& parent_b, const FeatureCorpus* oracle, FeatureClass cls,
                             CorrelationMode mode, const NoveltyThresholds& t) {
  NoveltyReport report;
  report.child_a = correlate_models(child, parent_a, cls, mode);
  report.child_b = correlate_models(child, parent_b, cls, mode);
  report.a_b = correlate_models(parent_a, parent_b, cls, mode);
  std::optional<double> r_co;
  std::optional<double> r_oa;
  if (oracle) {
    report.child_oracle = correlate_models(child, *oracle, cls, mode);
    report.oracle_a = correlate_models(*oracle, parent_a, cls, mode);
    r_co = report.child_oracle->r;
    r_oa = report.oracle_a->r;
  }
  report.verdict = novelty_verdict(report.child_a.r, report.child_b.r, r_co, r_oa, t);
  return report;
}

}  // namespace stylevox
