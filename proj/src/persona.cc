#include "stylevox/persona.h"

#include <algorithm>
#include <charconv>

#include "stylevox/embedded_data.h"
#include "stylevox/error.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "PERIOD",
    "WITH_CUE",
    "CONJUNCTION",
    "ALL_MERGE",
    "ALSO_CUE",
    "ACK_DEFINITIVE",
    "ACK_JUSTIFICATION",
    "ACK_YEAH",
    "CONFIRMATION",
    "INITIAL_REJECTION",
    "COMPETENCE_MITIGATION",
    "FILLED_PAUSE_STATIVE",
    "DOWN_KIND_OF",
    "DOWN_LIKE",
    "DOWN_AROUND",
    "EXCLAIM",
    "INDICATE_SURPRISE",
    "GENERAL_SOFTENER",
    "DOWN_SUBORD",
    "EMPHASIZER",
    "EMPH_YOU_KNOW",
    "EXPLETIVES",
    "IN_GROUP_MARKER",
    "TAG_QUESTION",
};

[[noreturn]] void bad_profile(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kInvalidProfile, "line " + std::to_string(line) + ": " + what);
}

void check_weight(ParamLevel level, double w, const std::string& where) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::kInvalidProfile, where + ": weight outside [0,1]");
  const double dc = default_weight(ParamLevel::kDontCare);
  if (level == ParamLevel::kHigh && w < dc) {
    throw Error(ErrorCode::kInvalidProfile, where + ": HIGH weight below the DONT_CARE default");
  }
  if (level == ParamLevel::kLow && w > dc) {
    throw Error(ErrorCode::kInvalidProfile, where + ": LOW weight above the DONT_CARE default");
  }
}

}  // namespace

std::string_view feature_name(FeatureId f) { return kFeatureNames[index_of(f)]; }

std::optional<FeatureId> parse_feature(std::string_view token) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureNames[i] == token) return feature_at(i);
  }
  return std::nullopt;
}

FeatureClass feature_class(FeatureId f) {
  return index_of(f) < kAggregationCount ? FeatureClass::kAggregation : FeatureClass::kPragmatic;
}

std::vector<FeatureId> features_of(FeatureClass c) {
  std::vector<FeatureId> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (feature_class(feature_at(i)) == c) out.push_back(feature_at(i));
  }
  return out;
}

std::string_view feature_class_name(FeatureClass c) {
  return c == FeatureClass::kAggregation ? "aggregation" : "pragmatic";
}

std::string_view level_name(ParamLevel level) {
  switch (level) {
    case ParamLevel::kHigh: return "HIGH";
    case ParamLevel::kLow: return "LOW";
    case ParamLevel::kDontCare: return "DONT_CARE";
  }
  return "DONT_CARE";
}

std::optional<ParamLevel> parse_level(std::string_view token) {
  if (token == "HIGH") return ParamLevel::kHigh;
  if (token == "LOW") return ParamLevel::kLow;
  if (token == "DONT_CARE") return ParamLevel::kDontCare;
  return std::nullopt;
}

double default_weight(ParamLevel level) {
  switch (level) {
    case ParamLevel::kHigh: return 0.9;
    case ParamLevel::kLow: return 0.05;
    case ParamLevel::kDontCare: return 0.2;
  }
  return 0.2;
}

StyleProfile StyleProfile::neutral(std::string id) {
  StyleProfile p;
  p.id = std::move(id);
  p.levels.fill(ParamLevel::kDontCare);
  p.weights.fill(default_weight(ParamLevel::kDontCare));
  return p;
}

StyleProfile StyleProfile::silent(std::string id) {
  StyleProfile p = neutral(std::move(id));
  p.weights.fill(0.0);
  return p;
}

void StyleProfile::set(FeatureId f, ParamLevel level, std::optional<double> weight) {
  levels[index_of(f)] = level;
  weights[index_of(f)] = weight.value_or(default_weight(level));
}

std::string_view strategy_name(CombinationStrategy s) {
  switch (s) {
    case CombinationStrategy::kFirstWins: return "FIRST_WINS";
    case CombinationStrategy::kAverage: return "AVERAGE";
    case CombinationStrategy::kUnionHigh: return "UNION_HIGH";
  }
  return "FIRST_WINS";
}

std::optional<CombinationStrategy> parse_strategy(std::string_view token) {
  const std::string t = ascii_lower(token);
  if (t == "first_wins") return CombinationStrategy::kFirstWins;
  if (t == "average") return CombinationStrategy::kAverage;
  if (t == "union_high") return CombinationStrategy::kUnionHigh;
  return std::nullopt;
}

StyleProfile combine_profiles(const StyleProfile& p1, const StyleProfile& p2,
                              CombinationStrategy s) {
  StyleProfile out;
  out.id = p1.id + "+" + p2.id;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const ParamLevel l1 = p1.levels[i];
    const ParamLevel l2 = p2.levels[i];
    const double w1 = p1.weights[i];
    const double w2 = p2.weights[i];
    switch (s) {
      case CombinationStrategy::kFirstWins:
        if (l1 != ParamLevel::kDontCare) {
          out.levels[i] = l1;
          out.weights[i] = w1;
        } else {
          out.levels[i] = l2;
          out.weights[i] = w2;
        }
        break;
      case CombinationStrategy::kAverage:
        out.levels[i] = l1 == l2 ? l1 : ParamLevel::kDontCare;
        out.weights[i] = 0.5 * (w1 + w2);
        break;
      case CombinationStrategy::kUnionHigh:
        if (l1 == ParamLevel::kHigh || l2 == ParamLevel::kHigh) {
          out.levels[i] = ParamLevel::kHigh;
          out.weights[i] = std::max(l1 == ParamLevel::kHigh ? w1 : 0.0, l2 == ParamLevel::kHigh ? w2 : 0.0);
        } else if (l1 == ParamLevel::kLow || l2 == ParamLevel::kLow) {
          out.levels[i] = ParamLevel::kLow;
          out.weights[i] = std::min(l1 == ParamLevel::kLow ? w1 : 1.0, l2 == ParamLevel::kLow ? w2 : 1.0);
        } else {
          out.levels[i] = ParamLevel::kDontCare;
          out.weights[i] = 0.5 * (w1 + w2);
        }
        break;
    }
  }
  return out;
}

std::optional<PersonalityId> antonym(PersonalityId p) {
  switch (p) {
    case PersonalityId::kAgreeable: return PersonalityId::kDisagreeable;
    case PersonalityId::kDisagreeable: return PersonalityId::kAgreeable;
    case PersonalityId::kConscientious: return PersonalityId::kUnconscientious;
    case PersonalityId::kUnconscientious: return PersonalityId::kConscientious;
    case PersonalityId::kExtravert: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::pair<PersonalityId, PersonalityId>> enumerate_pairs() {
  std::vector<std::pair<PersonalityId, PersonalityId>> out;
  for (std::size_t i = 0; i < kPersonalityCount; ++i) {
    for (std::size_t j = i + 1; j < kPersonalityCount; ++j) {
      const PersonalityId a = kAllPersonalities[i];
      const PersonalityId b = kAllPersonalities[j];
      if (antonym(a) == b) continue;
      out.emplace_back(a, b);
    }
  }
  return out;
}

const ProfileSet& ProfileSet::defaults() {
  static const ProfileSet set = [] {
    ProfileSet base;
    for (PersonalityId p : kAllPersonalities) {
      base.profiles_[static_cast<std::size_t>(p)] = StyleProfile::neutral(std::string(personality_str(p)));
    }
    return parse(embedded::kProfiles, &base);
  }();
  return set;
}

ProfileSet ProfileSet::parse(std::string_view text, const ProfileSet* base) {
  ProfileSet out = base ? *base : defaults();
  std::optional<PersonalityId> current;
  std::vector<PersonalityId> seen;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad_profile(line_no, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      current = parse_personality(name);
      if (!current) bad_profile(line_no, "unknown personality '" + std::string(name) + "'");
      if (std::find(seen.begin(), seen.end(), *current) != seen.end()) {
        bad_profile(line_no, "section repeated");
      }
      seen.push_back(*current);
      out.profiles_[static_cast<std::size_t>(*current)] = StyleProfile::neutral(std::string(name));
      continue;
    }
    if (!current) bad_profile(line_no, "entry outside a section");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad_profile(line_no, "expected FEATURE = LEVEL");
    const std::string_view key = trim(line.substr(0, eq));
    const auto feature = parse_feature(key);
    if (!feature) bad_profile(line_no, "unknown feature '" + std::string(key) + "'");
    const std::vector<std::string> parts = split_whitespace(line.substr(eq + 1));
    if (parts.empty() || parts.size() > 2) bad_profile(line_no, "expected LEVEL [weight]");
    const auto level = parse_level(parts[0]);
    if (!level) bad_profile(line_no, "unknown level '" + parts[0] + "'");
    std::optional<double> weight;
    if (parts.size() == 2) {
      double w = 0.0;
      const auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), w);
      if (ec != std::errc() || ptr != parts[1].data() + parts[1].size()) {
        bad_profile(line_no, "bad weight '" + parts[1] + "'");
      }
      weight = w;
    }
    StyleProfile& profile = out.profiles_[static_cast<std::size_t>(*current)];
    profile.set(*feature, *level, weight);
    check_weight(*level, profile.weight(*feature), "line " + std::to_string(line_no));
  }
  return out;
}

ProfileSet ProfileSet::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), &defaults());
}

void ProfileSet::set(PersonalityId p, StyleProfile profile) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    check_weight(profile.levels[i], profile.weights[i], profile.id + " " + std::string(kFeatureNames[i]));
  }
  profiles_[static_cast<std::size_t>(p)] = std::move(profile);
}

std::string ProfileSet::serialize() const {
  std::string out;
  for (PersonalityId p : kAllPersonalities) {
    if (!out.empty()) out += '\n';
    out += "[";
    out += personality_str(p);
    out += "]\n";
    const StyleProfile& profile = get(p);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      out += kFeatureNames[i];
      out += " = ";
      out += level_name(profile.levels[i]);
      if (profile.weights[i] != default_weight(profile.levels[i])) {
        out += ' ';
        out += format_double(profile.weights[i]);
      }
      out += '\n';
    }
  }
  return out;
}

const StyleProfile& default_profile(PersonalityId p) { return ProfileSet::defaults().get(p); }

StyleProfile profile_for_voices(const ProfileSet& set, const std::vector<PersonalityId>& voices,
                                CombinationStrategy s) {
  if (voices.empty() || voices.size() > 2) {
    throw Error(ErrorCode::kInvalidVoices, "expected one or two voices, got " + std::to_string(voices.size()));
  }
  if (voices.size() == 1) return set.get(voices[0]);
  if (voices[0] == voices[1]) throw Error(ErrorCode::kInvalidVoices, "voice listed twice");
  if (antonym(voices[0]) == voices[1]) {
    throw Error(ErrorCode::kInvalidVoices, "opposite personalities are not combined");
  }
  return combine_profiles(set.get(voices[0]), set.get(voices[1]), s);
}

}  // namespace stylevox
