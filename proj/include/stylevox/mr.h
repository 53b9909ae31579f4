#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylevox {

enum class SlotName : std::uint8_t {
  kName,
  kEatType,
  kFood,
  kPriceRange,
  kCustomerRating,
  kArea,
  kFamilyFriendly,
  kNear,
};

inline constexpr std::size_t kSlotCount = 8;
inline constexpr std::array<SlotName, kSlotCount> kAllSlots = {
    SlotName::kName,  SlotName::kEatType,        SlotName::kFood,
    SlotName::kPriceRange, SlotName::kCustomerRating, SlotName::kArea,
    SlotName::kFamilyFriendly, SlotName::kNear};

// Canonical attribute spelling ("customerRating", "eatType", ...).
std::string_view slot_name_str(SlotName slot);
std::optional<SlotName> parse_slot_name(std::string_view token);

// Enumerators are ordered by their short label so that pair enumeration
// comes out in the conventional table order (Agree, Consc, Disagr, ...).
enum class PersonalityId : std::uint8_t {
  kAgreeable,
  kConscientious,
  kDisagreeable,
  kExtravert,
  kUnconscientious,
};

inline constexpr std::size_t kPersonalityCount = 5;
inline constexpr std::array<PersonalityId, kPersonalityCount> kAllPersonalities = {
    PersonalityId::kAgreeable, PersonalityId::kConscientious,
    PersonalityId::kDisagreeable, PersonalityId::kExtravert,
    PersonalityId::kUnconscientious};

std::string_view personality_str(PersonalityId p);    // "AGREEABLE"
std::string_view personality_label(PersonalityId p);  // "Agree"
std::optional<PersonalityId> parse_personality(std::string_view token);

struct Slot {
  SlotName name;
  std::string value;

  friend bool operator==(const Slot&, const Slot&) = default;
};

// A dialog act with its ordered slots and personality convert tags.
struct MeaningRepresentation {
  std::string act = "inform";
  std::vector<Slot> slots;
  std::vector<PersonalityId> style_tags;

  const Slot* find(SlotName name) const;
  bool has(SlotName name) const { return find(name) != nullptr; }

  friend bool operator==(const MeaningRepresentation&,
                         const MeaningRepresentation&) = default;
};

// Throws Error when an invariant is broken (duplicate slots, bracketed or
// empty values, more than two or repeated style tags, non-inform act).
void validate_mr(const MeaningRepresentation& mr);

// Strict parser for the canonical single-line form
//   inform(slot[value], slot[value]) convert(personality[P]) ...
MeaningRepresentation parse_mr(std::string_view text);

// Rewrites loose renderings into the canonical form: bare E2E slot lists
// ("name[X], customer rating[5 out of 5]"), misplaced closing parens, and
// irregular whitespace. Slot keys are matched ignoring case and spaces.
std::string normalize_mr_text(std::string_view text);
MeaningRepresentation parse_mr_lenient(std::string_view text);

std::string serialize_mr(const MeaningRepresentation& mr);

enum class Placeholder : std::uint8_t { kName, kNear };

inline constexpr std::string_view kNamePlaceholder = "NAME";
inline constexpr std::string_view kNearPlaceholder = "NEAR";

std::string_view placeholder_token(Placeholder p);

struct DelexMap {
  std::map<Placeholder, std::string> placeholders;

  friend bool operator==(const DelexMap&, const DelexMap&) = default;
};

struct Delexicalized {
  MeaningRepresentation mr;
  std::string utterance;
  DelexMap map;
};

// Replaces the name and near values (case-insensitive, whole tokens) with
// NAME / NEAR in both the MR and the utterance.
Delexicalized delexicalize(const MeaningRepresentation& mr, std::string_view utterance);

// Restores NAME / NEAR tokens. Throws kUnboundPlaceholder when a token in
// the utterance has no entry in `map`.
std::string relexicalize(std::string_view utterance, const DelexMap& map);

}  // namespace stylevox
