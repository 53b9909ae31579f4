#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylevox/mr.h"
#include "stylevox/persona.h"

namespace stylevox {

struct TemplateEntry {
  std::vector<std::string> is_forms;    // follows "<subject> is"
  std::vector<std::string> with_forms;  // follows ", with"
};

// Lexicalization templates keyed by (slot, lowercased value); a "*" value
// applies to any value and has the slot's placeholder substituted.
class TemplateLexicon {
 public:
  static const TemplateLexicon& defaults();
  static TemplateLexicon parse(std::string_view text);
  static TemplateLexicon load(const std::filesystem::path& path);

  // Throws kLexiconGap when (slot, value) has no usable entry.
  TemplateEntry lookup(SlotName slot, std::string_view value) const;

 private:
  std::map<std::pair<SlotName, std::string>, TemplateEntry> entries_;
};

enum class Attachment : std::uint8_t {
  kInitial,
  kInitialAnonymous,
  kClauseStart,
  kPrePredicate,
  kClauseSuffix,
  kFinal,
};

enum class MarkerPosition : std::uint8_t { kInitial, kMedial, kFinal };

std::string_view attachment_name(Attachment a);
MarkerPosition position_class(Attachment a);

class MarkerLexicon {
 public:
  static const MarkerLexicon& defaults();
  static MarkerLexicon parse(std::string_view text);
  static MarkerLexicon load(const std::filesystem::path& path);

  const std::vector<std::string>* texts(FeatureId f, Attachment a) const;
  // Attachments other than kInitialAnonymous, in file order.
  std::vector<Attachment> attachments(FeatureId f) const;

 private:
  std::map<std::pair<FeatureId, Attachment>, std::vector<std::string>> entries_;
  std::map<FeatureId, std::vector<Attachment>> order_;
};

struct RealizerResources {
  TemplateLexicon templates;
  MarkerLexicon markers;

  static const RealizerResources& defaults();
};

struct Clause {
  SlotName slot;
  std::string text;
  std::string with_text;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Join {
  FeatureId op;
  std::uint8_t variant = 0;

  friend bool operator==(const Join&, const Join&) = default;
};

// joins[i] connects clauses[i] and clauses[i + 1]; never PERIOD.
struct SentenceGroup {
  std::vector<Clause> clauses;
  std::vector<Join> joins;

  friend bool operator==(const SentenceGroup&, const SentenceGroup&) = default;
};

struct MarkerInsertion {
  FeatureId feature;
  Attachment attachment;
  std::size_t group = 0;
  std::size_t clause = 0;
  std::string text;
  bool takes_name = false;  // text carries the subject mention

  friend bool operator==(const MarkerInsertion&, const MarkerInsertion&) = default;
};

struct SentencePlan {
  std::optional<std::string> subject;  // name value, if the MR has one
  std::vector<SentenceGroup> groups;
  std::vector<MarkerInsertion> markers;

  friend bool operator==(const SentencePlan&, const SentencePlan&) = default;
};

// True for each clause of `group` realized as an "is" predicate.
std::vector<bool> predicate_forms(const SentenceGroup& group);

SentencePlan plan(const MeaningRepresentation& mr, const StyleProfile& profile, std::uint64_t seed,
                  const TemplateLexicon& templates = TemplateLexicon::defaults());

SentencePlan insert_pragmatics(SentencePlan plan, const StyleProfile& profile, std::uint64_t seed,
                               const MarkerLexicon& markers = MarkerLexicon::defaults());

std::string realize(const SentencePlan& plan, const MeaningRepresentation& mr);

struct Realization {
  MeaningRepresentation mr;  // carries the voices as style tags
  std::vector<PersonalityId> voices;
  std::optional<CombinationStrategy> strategy;  // empty for a single voice
  std::uint64_t seed = 0;
  std::string text;
};

// Delexicalize, plan, add markers, realize, relexicalize.
std::string realize_with_profile(const MeaningRepresentation& mr, const StyleProfile& profile,
                                 std::uint64_t seed,
                                 const RealizerResources& res = RealizerResources::defaults());

Realization generate(const MeaningRepresentation& mr, const std::vector<PersonalityId>& voices,
                     CombinationStrategy strategy, std::uint64_t seed,
                     const ProfileSet& profiles = ProfileSet::defaults(),
                     const RealizerResources& res = RealizerResources::defaults());

}  // namespace stylevox
