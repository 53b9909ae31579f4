#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylevox/mr.h"

namespace stylevox {

// The five aggregation operations come first, then the pragmatic markers.
enum class FeatureId : std::uint8_t {
  kPeriod,
  kWithCue,
  kConjunction,
  kAllMerge,
  kAlsoCue,
  kAckDefinitive,
  kAckJustification,
  kAckYeah,
  kConfirmation,
  kInitialRejection,
  kCompetenceMitigation,
  kFilledPauseStative,
  kDownKindOf,
  kDownLike,
  kDownAround,
  kExclaim,
  kIndicateSurprise,
  kGeneralSoftener,
  kDownSubord,
  kEmphasizer,
  kEmphYouKnow,
  kExpletives,
  kInGroupMarker,
  kTagQuestion,
};

inline constexpr std::size_t kFeatureCount = 24;
inline constexpr std::size_t kAggregationCount = 5;

enum class FeatureClass : std::uint8_t { kAggregation, kPragmatic };

inline constexpr FeatureId feature_at(std::size_t i) { return static_cast<FeatureId>(i); }
inline constexpr std::size_t index_of(FeatureId f) { return static_cast<std::size_t>(f); }

std::string_view feature_name(FeatureId f);  // "EMPH_YOU_KNOW"
std::optional<FeatureId> parse_feature(std::string_view token);
FeatureClass feature_class(FeatureId f);
std::vector<FeatureId> features_of(FeatureClass c);
std::string_view feature_class_name(FeatureClass c);  // "aggregation" / "pragmatic"

enum class ParamLevel : std::uint8_t { kHigh, kLow, kDontCare };

std::string_view level_name(ParamLevel level);
std::optional<ParamLevel> parse_level(std::string_view token);
double default_weight(ParamLevel level);

struct StyleProfile {
  std::string id;
  std::array<ParamLevel, kFeatureCount> levels;
  std::array<double, kFeatureCount> weights;

  // Every feature DONT_CARE at its default weight.
  static StyleProfile neutral(std::string id);
  // Every feature at weight zero.
  static StyleProfile silent(std::string id);

  ParamLevel level(FeatureId f) const { return levels[index_of(f)]; }
  double weight(FeatureId f) const { return weights[index_of(f)]; }
  void set(FeatureId f, ParamLevel level, std::optional<double> weight = std::nullopt);

  friend bool operator==(const StyleProfile&, const StyleProfile&) = default;
};

enum class CombinationStrategy : std::uint8_t { kFirstWins, kAverage, kUnionHigh };

std::string_view strategy_name(CombinationStrategy s);  // "FIRST_WINS"
std::optional<CombinationStrategy> parse_strategy(std::string_view token);

StyleProfile combine_profiles(const StyleProfile& p1, const StyleProfile& p2,
                              CombinationStrategy s);

std::optional<PersonalityId> antonym(PersonalityId p);

// The eight unordered non-antonym pairs, first member earlier in enum order.
std::vector<std::pair<PersonalityId, PersonalityId>> enumerate_pairs();

// One profile per personality. Text format:
//   [PERSONALITY]
//   FEATURE = HIGH | LOW | DONT_CARE [weight]
class ProfileSet {
 public:
  static const ProfileSet& defaults();
  // Sections replace the matching profile of `base`; others are kept.
  static ProfileSet parse(std::string_view text, const ProfileSet* base = nullptr);
  static ProfileSet load(const std::filesystem::path& path);

  const StyleProfile& get(PersonalityId p) const { return profiles_[static_cast<std::size_t>(p)]; }
  void set(PersonalityId p, StyleProfile profile);
  std::string serialize() const;

 private:
  std::array<StyleProfile, kPersonalityCount> profiles_;
};

const StyleProfile& default_profile(PersonalityId p);

// Profile for 1 or 2 voices; `s` is ignored for a single voice.
StyleProfile profile_for_voices(const ProfileSet& set, const std::vector<PersonalityId>& voices,
                                CombinationStrategy s);

}  // namespace stylevox
