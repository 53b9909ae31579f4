#include "stylevox/realizer.h"

#include <algorithm>

#include "stylevox/embedded_data.h"
#include "stylevox/error.h"
#include "stylevox/rng.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

constexpr std::uint64_t kPragmaticsStream = 0x70726167ULL;

[[noreturn]] void bad_lexicon(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kInvalidLexicon, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_variants(std::string_view text, std::size_t line) {
  std::vector<std::string> out;
  for (const std::string& v : split_trimmed(text, '|')) {
    if (v.empty()) bad_lexicon(line, "empty variant");
    out.push_back(v);
  }
  return out;
}

// Replaces whole-token, case-sensitive occurrences of `token`.
std::string replace_token(std::string_view text, std::string_view token, std::string_view value) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, token.size()) == token && at_token_boundary(text, i, i + token.size())) {
      out += value;
      i += token.size();
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

bool contains_token(std::string_view text, std::string_view token) {
  for (std::size_t pos = text.find(token); pos != std::string_view::npos; pos = text.find(token, pos + 1)) {
    if (at_token_boundary(text, pos, pos + token.size())) return true;
  }
  return false;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

std::optional<Attachment> parse_attachment(std::string_view token) {
  for (Attachment a : {Attachment::kInitial, Attachment::kInitialAnonymous, Attachment::kClauseStart,
                       Attachment::kPrePredicate, Attachment::kClauseSuffix, Attachment::kFinal}) {
    if (attachment_name(a) == token) return a;
  }
  return std::nullopt;
}

void capitalize_sentences(std::string& text) {
  bool start = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (start && c != ' ') {
      if (c >= 'a' && c <= 'z') text[i] = static_cast<char>(c - 'a' + 'A');
      start = false;
    }
    if ((c == '.' || c == '!' || c == '?') && i + 1 < text.size() && text[i + 1] == ' ') start = true;
  }
}

}  // namespace

const TemplateLexicon& TemplateLexicon::defaults() {
  static const TemplateLexicon lex = parse(embedded::kTemplates);
  return lex;
}

TemplateLexicon TemplateLexicon::parse(std::string_view text) {
  TemplateLexicon lex;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto open = line.find('[');
    const auto close = line.find(']', open == std::string_view::npos ? 0 : open);
    const auto eq = line.find('=', close == std::string_view::npos ? 0 : close);
    if (open == std::string_view::npos || close == std::string_view::npos || eq == std::string_view::npos) {
      bad_lexicon(line_no, "expected slot[value] form = variants");
    }
    const std::string_view slot_token = trim(line.substr(0, open));
    const auto slot = parse_slot_name(slot_token);
    if (!slot) bad_lexicon(line_no, "unknown slot '" + std::string(slot_token) + "'");
    const std::string value = ascii_lower(trim(line.substr(open + 1, close - open - 1)));
    if (value.empty()) bad_lexicon(line_no, "empty value");
    const std::string_view form = trim(line.substr(close + 1, eq - close - 1));
    TemplateEntry& entry = lex.entries_[{*slot, value}];
    std::vector<std::string> variants = split_variants(line.substr(eq + 1), line_no);
    if (form == "is") {
      entry.is_forms = std::move(variants);
    } else if (form == "with") {
      entry.with_forms = std::move(variants);
    } else {
      bad_lexicon(line_no, "unknown form '" + std::string(form) + "'");
    }
  }
  return lex;
}

TemplateLexicon TemplateLexicon::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

TemplateEntry TemplateLexicon::lookup(SlotName slot, std::string_view value) const {
  auto it = entries_.find({slot, ascii_lower(value)});
  bool wildcard = false;
  if (it == entries_.end()) {
    it = entries_.find({slot, "*"});
    wildcard = true;
  }
  if (it == entries_.end() || it->second.is_forms.empty() || it->second.with_forms.empty()) {
    throw Error(ErrorCode::kLexiconGap,
                "no template for " + std::string(slot_name_str(slot)) + "[" + std::string(value) + "]");
  }
  if (!wildcard) return it->second;
  std::string_view token;
  if (slot == SlotName::kName) token = kNamePlaceholder;
  if (slot == SlotName::kNear) token = kNearPlaceholder;
  TemplateEntry out = it->second;
  if (!token.empty()) {
    for (auto* forms : {&out.is_forms, &out.with_forms}) {
      for (std::string& f : *forms) f = replace_token(f, token, value);
    }
  }
  return out;
}

std::string_view attachment_name(Attachment a) {
  switch (a) {
    case Attachment::kInitial: return "initial";
    case Attachment::kInitialAnonymous: return "initial_anonymous";
    case Attachment::kClauseStart: return "clause_start";
    case Attachment::kPrePredicate: return "pre_predicate";
    case Attachment::kClauseSuffix: return "clause_suffix";
    case Attachment::kFinal: return "final";
  }
  return "initial";
}

MarkerPosition position_class(Attachment a) {
  switch (a) {
    case Attachment::kInitial:
    case Attachment::kInitialAnonymous:
      return MarkerPosition::kInitial;
    case Attachment::kFinal:
      return MarkerPosition::kFinal;
    default:
      return MarkerPosition::kMedial;
  }
}

const MarkerLexicon& MarkerLexicon::defaults() {
  static const MarkerLexicon lex = parse(embedded::kMarkers);
  return lex;
}

MarkerLexicon MarkerLexicon::parse(std::string_view text) {
  MarkerLexicon lex;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad_lexicon(line_no, "expected FEATURE attachment = texts");
    const std::vector<std::string> head = split_whitespace(line.substr(0, eq));
    if (head.size() != 2) bad_lexicon(line_no, "expected FEATURE attachment");
    const auto feature = parse_feature(head[0]);
    if (!feature) bad_lexicon(line_no, "unknown feature '" + head[0] + "'");
    if (feature_class(*feature) != FeatureClass::kPragmatic) {
      bad_lexicon(line_no, head[0] + " is not a pragmatic marker");
    }
    const auto attachment = parse_attachment(head[1]);
    if (!attachment) bad_lexicon(line_no, "unknown attachment '" + head[1] + "'");
    if (lex.entries_.count({*feature, *attachment}) != 0) bad_lexicon(line_no, "entry repeated");
    lex.entries_[{*feature, *attachment}] = split_variants(line.substr(eq + 1), line_no);
    if (*attachment != Attachment::kInitialAnonymous) lex.order_[*feature].push_back(*attachment);
  }
  return lex;
}

MarkerLexicon MarkerLexicon::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

const std::vector<std::string>* MarkerLexicon::texts(FeatureId f, Attachment a) const {
  const auto it = entries_.find({f, a});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Attachment> MarkerLexicon::attachments(FeatureId f) const {
  const auto it = order_.find(f);
  return it == order_.end() ? std::vector<Attachment>{} : it->second;
}

const RealizerResources& RealizerResources::defaults() {
  static const RealizerResources res{TemplateLexicon::defaults(), MarkerLexicon::defaults()};
  return res;
}

std::vector<bool> predicate_forms(const SentenceGroup& group) {
  std::vector<bool> out;
  for (std::size_t i = 0; i < group.clauses.size(); ++i) {
    if (i == 0) {
      out.push_back(true);
      continue;
    }
    switch (group.joins[i - 1].op) {
      case FeatureId::kWithCue: out.push_back(false); break;
      case FeatureId::kAllMerge: out.push_back(out.back()); break;
      default: out.push_back(true); break;
    }
  }
  return out;
}

SentencePlan plan(const MeaningRepresentation& mr, const StyleProfile& profile, std::uint64_t seed,
                  const TemplateLexicon& templates) {
  if (mr.slots.empty()) throw Error(ErrorCode::kEmptyMr, "MR has no slots");
  Rng rng(seed);
  SentencePlan out;
  if (const Slot* name = mr.find(SlotName::kName)) out.subject = name->value;

  std::vector<Clause> clauses;
  for (const Slot& slot : mr.slots) {
    if (slot.name == SlotName::kName) continue;
    const TemplateEntry entry = templates.lookup(slot.name, slot.value);
    Clause c{slot.name, pick(rng, entry.is_forms), ""};
    c.with_text = pick(rng, entry.with_forms);
    clauses.push_back(std::move(c));
  }

  std::array<double, kAggregationCount> w{};
  double total = 0.0;
  for (std::size_t i = 0; i < kAggregationCount; ++i) {
    w[i] = profile.weights[i];
    total += w[i];
  }
  if (total <= 0.0) {
    w.fill(1.0);
    total = static_cast<double>(kAggregationCount);
  }

  out.groups.emplace_back();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    SentenceGroup& current = out.groups.back();
    if (i == 0) {
      current.clauses.push_back(std::move(clauses[i]));
      continue;
    }
    double u = rng.uniform01() * total;
    std::size_t op = 0;
    while (op + 1 < kAggregationCount && u >= w[op]) {
      u -= w[op];
      ++op;
    }
    while (w[op] <= 0.0 && op > 0) --op;
    const FeatureId f = feature_at(op);
    if (f == FeatureId::kPeriod) {
      out.groups.emplace_back();
      out.groups.back().clauses.push_back(std::move(clauses[i]));
      continue;
    }
    Join join{f, 0};
    if (f == FeatureId::kAlsoCue) join.variant = static_cast<std::uint8_t>(rng.below(2));
    if (f == FeatureId::kConjunction) join.variant = static_cast<std::uint8_t>(rng.below(3));
    current.joins.push_back(join);
    current.clauses.push_back(std::move(clauses[i]));
  }
  return out;
}

SentencePlan insert_pragmatics(SentencePlan p, const StyleProfile& profile, std::uint64_t seed,
                               const MarkerLexicon& markers) {
  Rng rng(seed);
  struct Site {
    std::size_t group;
    std::size_t clause;
  };
  for (FeatureId f : features_of(FeatureClass::kPragmatic)) {
    const std::vector<Attachment> attachments = markers.attachments(f);
    if (attachments.empty()) continue;
    if (!rng.bernoulli(profile.weight(f))) continue;

    struct Option {
      Attachment attachment;
      std::vector<Site> sites;
      std::vector<std::string> texts;
    };
    std::vector<Option> options;
    for (Attachment a : attachments) {
      Option opt{a, {}, *markers.texts(f, a)};
      switch (a) {
        case Attachment::kInitial:
          if (!p.subject) {
            if (const auto* anon = markers.texts(f, Attachment::kInitialAnonymous)) {
              opt.texts = *anon;
            } else {
              std::erase_if(opt.texts, [](const std::string& t) { return contains_token(t, kNamePlaceholder); });
            }
          }
          opt.sites.push_back({0, 0});
          break;
        case Attachment::kFinal:
          opt.sites.push_back({0, 0});
          break;
        case Attachment::kClauseStart:
          for (std::size_t g = 0; g < p.groups.size(); ++g) opt.sites.push_back({g, 0});
          break;
        case Attachment::kPrePredicate:
          for (std::size_t g = 0; g < p.groups.size(); ++g) {
            const std::vector<bool> forms = predicate_forms(p.groups[g]);
            for (std::size_t c = 0; c < forms.size(); ++c) {
              if (forms[c]) opt.sites.push_back({g, c});
            }
          }
          break;
        case Attachment::kClauseSuffix:
          for (std::size_t g = 0; g < p.groups.size(); ++g) {
            for (std::size_t c = 0; c < p.groups[g].clauses.size(); ++c) opt.sites.push_back({g, c});
          }
          break;
        case Attachment::kInitialAnonymous:
          break;
      }
      if (!opt.sites.empty() && !opt.texts.empty()) options.push_back(std::move(opt));
    }
    if (options.empty()) continue;

    const Option& chosen = pick(rng, options);
    const Site site = pick(rng, chosen.sites);
    MarkerInsertion m{f, chosen.attachment, site.group, site.clause, pick(rng, chosen.texts), false};
    if (chosen.attachment == Attachment::kInitial && p.subject && contains_token(m.text, kNamePlaceholder)) {
      m.text = replace_token(m.text, kNamePlaceholder, *p.subject);
      m.takes_name = true;
    }
    p.markers.push_back(std::move(m));
  }
  return p;
}

std::string realize(const SentencePlan& p, const MeaningRepresentation& mr) {
  std::vector<SlotName> expected;
  for (const Slot& s : mr.slots) {
    if (s.name != SlotName::kName) expected.push_back(s.name);
  }
  std::vector<SlotName> planned;
  for (const SentenceGroup& g : p.groups) {
    if (g.joins.size() + 1 != std::max<std::size_t>(g.clauses.size(), 1) ||
        (g.clauses.empty() && !g.joins.empty())) {
      throw Error(ErrorCode::kPlanMrMismatch, "join count does not match clause count");
    }
    for (const Join& j : g.joins) {
      if (feature_class(j.op) != FeatureClass::kAggregation || j.op == FeatureId::kPeriod) {
        throw Error(ErrorCode::kPlanMrMismatch, "invalid join operator");
      }
    }
    for (const Clause& c : g.clauses) planned.push_back(c.slot);
  }
  std::sort(expected.begin(), expected.end());
  std::sort(planned.begin(), planned.end());
  if (expected != planned) throw Error(ErrorCode::kPlanMrMismatch, "plan clauses do not cover the MR slots");
  const Slot* name = mr.find(SlotName::kName);
  if (p.groups.empty() || (name == nullptr) != !p.subject || (name && name->value != *p.subject)) {
    throw Error(ErrorCode::kPlanMrMismatch, "plan subject does not match the MR name");
  }
  for (const MarkerInsertion& m : p.markers) {
    if (m.group >= p.groups.size() ||
        (m.clause > 0 && m.clause >= p.groups[m.group].clauses.size())) {
      throw Error(ErrorCode::kPlanMrMismatch, "marker position outside the plan");
    }
  }

  const auto markers_at = [&](Attachment a, std::size_t g, std::size_t c) {
    std::vector<const MarkerInsertion*> out;
    for (const MarkerInsertion& m : p.markers) {
      if (m.attachment == a && m.group == g && m.clause == c) out.push_back(&m);
    }
    return out;
  };
  const auto predicate = [&](std::size_t g, std::size_t c, const std::string& text) {
    std::string out;
    for (const MarkerInsertion* m : markers_at(Attachment::kPrePredicate, g, c)) out += m->text + " ";
    return out + text;
  };
  const auto suffix = [&](std::size_t g, std::size_t c) {
    std::string out;
    for (const MarkerInsertion* m : markers_at(Attachment::kClauseSuffix, g, c)) out += ", " + m->text;
    return out;
  };

  bool name_taken = false;
  std::string initial;
  std::string final_group;
  bool exclaim = false;
  std::string tag;
  std::vector<const MarkerInsertion*> openers;
  for (const MarkerInsertion& m : p.markers) {
    if (m.attachment == Attachment::kInitial) {
      openers.push_back(&m);
      name_taken = name_taken || m.takes_name;
    } else if (m.attachment == Attachment::kFinal) {
      if (m.feature == FeatureId::kExclaim) {
        exclaim = true;
      } else if (m.feature == FeatureId::kTagQuestion) {
        tag = m.text;
      } else {
        final_group += ", " + m.text;
      }
    }
  }

  // Stand-alone sentences first, then "oh," ahead of the other lead-ins.
  const auto rank = [](const MarkerInsertion* m) {
    const char last = m->text.back();
    if (last == '.' || last == '?') return 0;
    return m->feature == FeatureId::kIndicateSurprise ? 1 : 2;
  };
  std::stable_sort(openers.begin(), openers.end(),
                   [&](const MarkerInsertion* a, const MarkerInsertion* b) { return rank(a) < rank(b); });
  for (const MarkerInsertion* m : openers) initial += m->text + " ";

  std::string body;
  for (std::size_t g = 0; g < p.groups.size(); ++g) {
    const SentenceGroup& group = p.groups[g];
    std::string sentence;
    for (const MarkerInsertion* m : markers_at(Attachment::kClauseStart, g, 0)) sentence += m->text + " ";
    const bool named = g == 0 && p.subject && !name_taken;
    sentence += named ? *p.subject : std::string("it");
    if (group.clauses.empty()) {
      sentence += " is a place";
    } else {
      const std::vector<bool> forms = predicate_forms(group);
      sentence += " is " + predicate(g, 0, group.clauses[0].text) + suffix(g, 0);
      for (std::size_t c = 1; c < group.clauses.size(); ++c) {
        const Clause& clause = group.clauses[c];
        const Join& join = group.joins[c - 1];
        switch (join.op) {
          case FeatureId::kAlsoCue:
            sentence += join.variant == 1 ? ", also it's " : ", also it is ";
            sentence += predicate(g, c, clause.text);
            break;
          case FeatureId::kConjunction:
            sentence += join.variant == 1 ? " and it's " : join.variant == 2 ? ", it is " : " and it is ";
            sentence += predicate(g, c, clause.text);
            break;
          case FeatureId::kWithCue:
            sentence += ", with " + clause.with_text;
            break;
          case FeatureId::kAllMerge: {
            const bool more = c < group.joins.size() && group.joins[c].op == FeatureId::kAllMerge;
            sentence += more ? ", " : " and ";
            sentence += forms[c] ? predicate(g, c, clause.text) : clause.with_text;
            break;
          }
          default:
            throw Error(ErrorCode::kPlanMrMismatch, "invalid join operator");
        }
        sentence += suffix(g, c);
      }
    }
    if (g + 1 == p.groups.size()) {
      sentence += final_group;
      if (!tag.empty()) {
        sentence += exclaim ? "! " + tag : ", " + tag;
      } else {
        sentence += exclaim ? "!" : ".";
      }
    } else {
      sentence += ".";
    }
    if (!body.empty()) body += ' ';
    body += sentence;
  }

  std::string text = initial + body;
  capitalize_sentences(text);
  return text;
}

std::string realize_with_profile(const MeaningRepresentation& mr, const StyleProfile& profile,
                                 std::uint64_t seed, const RealizerResources& res) {
  const Delexicalized delex = delexicalize(mr, "");
  SentencePlan p = plan(delex.mr, profile, seed, res.templates);
  p = insert_pragmatics(std::move(p), profile, mix_seed(seed, kPragmaticsStream), res.markers);
  return relexicalize(realize(p, delex.mr), delex.map);
}

Realization generate(const MeaningRepresentation& mr, const std::vector<PersonalityId>& voices,
                     CombinationStrategy strategy, std::uint64_t seed, const ProfileSet& profiles,
                     const RealizerResources& res) {
  const StyleProfile profile = profile_for_voices(profiles, voices, strategy);
  Realization out;
  out.mr = mr;
  out.mr.style_tags = voices;
  out.voices = voices;
  if (voices.size() == 2) out.strategy = strategy;
  out.seed = seed;
  out.text = realize_with_profile(mr, profile, seed, res);
  return out;
}

}  // namespace stylevox
