#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "fixtures.h"
#include "stylevox/analysis.h"
#include "stylevox/fidelity.h"
#include "stylevox/realizer.h"
#include "test_util.h"

using namespace stylevox;
using stylevox::testing::error_code_of;

using P = PersonalityId;
using F = FeatureId;

namespace {

MeaningRepresentation browns() { return parse_mr(fixtures::kBrownsMr); }

MeaningRepresentation browns_delex() { return delexicalize(browns(), "").mr; }

SentenceGroup group_of(std::vector<Clause> clauses, std::vector<Join> joins) {
  return SentenceGroup{std::move(clauses), std::move(joins)};
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

// Output shape checks applied to every generated text.
void check_shape(const std::string& text) {
  INFO(text);
  REQUIRE_FALSE(text.empty());
  const char last = text.back();
  CHECK((last == '.' || last == '!' || last == '?'));
  static const std::regex placeholder(R"(\b(NAME|NEAR)\b)");
  CHECK_FALSE(std::regex_search(text, placeholder));
  static const std::regex doubled(R"([.!?,;:]\s*[.!?,;:])");
  CHECK_FALSE(std::regex_search(text, doubled));
  CHECK(text.find("  ") == std::string::npos);
  CHECK(text.front() != ' ');
  CHECK(std::isupper(static_cast<unsigned char>(text.front())));
}

}  // namespace

TEST_CASE("single clause realization") {
  const auto mr = parse_mr("inform(name[NAME], eatType[pub])");
  SentencePlan p;
  p.subject = "NAME";
  p.groups.push_back(group_of({{SlotName::kEatType, "a pub", "a pub atmosphere"}}, {}));
  CHECK(realize(p, mr) == "NAME is a pub.");
}

TEST_CASE("also-cue join") {
  const auto mr = parse_mr("inform(name[NAME], eatType[pub], near[NEAR])");
  SentencePlan p;
  p.subject = "NAME";
  p.groups.push_back(group_of({{SlotName::kEatType, "a pub", "a pub atmosphere"},
                               {SlotName::kNear, "near NEAR", "NEAR nearby"}},
                              {{F::kAlsoCue, 0}}));
  CHECK(realize(p, mr) == "NAME is a pub, also it is near NEAR.");
}

TEST_CASE("all-merge join") {
  const auto mr = parse_mr("inform(name[NAME], food[Italian], priceRange[average])");
  SentencePlan p;
  p.subject = "NAME";
  p.groups.push_back(group_of({{SlotName::kFood, "an italian place", "italian food"},
                               {SlotName::kPriceRange, "moderately priced", "moderate prices"}},
                              {{F::kAllMerge, 0}}));
  CHECK(realize(p, mr) == "NAME is an italian place and moderately priced.");
}

TEST_CASE("period, conjunction and with-cue joins") {
  const auto mr = parse_mr("inform(name[NAME], eatType[pub], food[Italian], area[riverside], near[NEAR])");
  SentencePlan p;
  p.subject = "NAME";
  p.groups.push_back(group_of({{SlotName::kEatType, "a pub", "a pub atmosphere"},
                               {SlotName::kFood, "an italian place", "italian food"}},
                              {{F::kConjunction, 0}}));
  p.groups.push_back(group_of({{SlotName::kArea, "by the riverside", "a riverside location"},
                               {SlotName::kNear, "near NEAR", "NEAR nearby"}},
                              {{F::kWithCue, 0}}));
  CHECK(realize(p, mr) ==
        "NAME is a pub and it is an italian place. It is by the riverside, with NEAR nearby.");
}

TEST_CASE("plan and MR must agree") {
  const auto mr = parse_mr("inform(name[NAME], eatType[pub], near[NEAR])");
  SentencePlan p;
  p.subject = "NAME";
  p.groups.push_back(group_of({{SlotName::kEatType, "a pub", "a pub atmosphere"}}, {}));
  CHECK(error_code_of([&] { realize(p, mr); }) == ErrorCode::kPlanMrMismatch);
  p.groups[0].clauses.push_back({SlotName::kNear, "near NEAR", "NEAR nearby"});
  p.groups[0].joins.push_back({F::kPeriod, 0});
  CHECK(error_code_of([&] { realize(p, mr); }) == ErrorCode::kPlanMrMismatch);
  p.groups[0].joins[0] = {F::kAlsoCue, 0};
  CHECK_NOTHROW(realize(p, mr));
  p.subject = "Other";
  CHECK(error_code_of([&] { realize(p, mr); }) == ErrorCode::kPlanMrMismatch);
}

TEST_CASE("plan invariants") {
  const auto mr = browns_delex();
  for (P voice : kAllPersonalities) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SentencePlan p = plan(mr, default_profile(voice), seed);
      std::vector<SlotName> slots;
      for (const auto& g : p.groups) {
        CHECK(g.joins.size() + 1 == g.clauses.size());
        for (const Join& j : g.joins) CHECK(j.op != F::kPeriod);
        for (const Clause& c : g.clauses) slots.push_back(c.slot);
      }
      // Name is the subject; the remaining clauses keep MR order.
      const std::vector<SlotName> expected = {SlotName::kEatType, SlotName::kPriceRange, SlotName::kFood,
                                              SlotName::kNear, SlotName::kFamilyFriendly, SlotName::kArea};
      CHECK(slots == expected);
      CHECK(p.subject == std::optional<std::string>("NAME"));
    }
  }
}

TEST_CASE("plan edge cases") {
  const auto one = parse_mr("inform(eatType[pub])");
  const SentencePlan p = plan(one, default_profile(P::kDisagreeable), 3);
  REQUIRE(p.groups.size() == 1);
  CHECK(p.groups[0].joins.empty());
  CHECK(p.groups[0].clauses.size() == 1);

  CHECK(error_code_of([] { plan(MeaningRepresentation{}, default_profile(P::kAgreeable), 1); }) ==
        ErrorCode::kEmptyMr);
  CHECK(error_code_of([] { plan(parse_mr("inform(food[Thai])"), default_profile(P::kAgreeable), 1); }) ==
        ErrorCode::kLexiconGap);

  const auto mr = browns_delex();
  CHECK(plan(mr, default_profile(P::kExtravert), 9) == plan(mr, default_profile(P::kExtravert), 9));
}

TEST_CASE("disagreeable plans split into many sentences") {
  const auto mr = browns_delex();
  const StyleProfile& d = default_profile(P::kDisagreeable);
  CHECK(plan(mr, d, 7).groups.size() >= 4);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) total += static_cast<double>(plan(mr, d, seed).groups.size());
  CHECK(total / 200.0 >= 4.0);
}

TEST_CASE("sentence splitting grows with the period weight") {
  const auto mr = browns();
  StyleProfile high = StyleProfile::neutral("high");
  StyleProfile low = StyleProfile::neutral("low");
  high.set(F::kPeriod, ParamLevel::kHigh);
  low.set(F::kPeriod, ParamLevel::kLow);
  double sum_high = 0.0;
  double sum_low = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    sum_high += count_features(realize_with_profile(mr, high, seed))[index_of(F::kPeriod)];
    sum_low += count_features(realize_with_profile(mr, low, seed))[index_of(F::kPeriod)];
  }
  CHECK(sum_high > sum_low);
}

TEST_CASE("silent profile inserts nothing") {
  const auto mr = browns_delex();
  const StyleProfile silent = StyleProfile::silent("silent");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SentencePlan p = plan(mr, default_profile(P::kAgreeable), seed);
    CHECK(insert_pragmatics(p, silent, seed) == p);
  }
}

TEST_CASE("confirmation opens with the name") {
  const auto mr = browns_delex();
  StyleProfile prof = StyleProfile::silent("confirm");
  prof.set(F::kConfirmation, ParamLevel::kHigh, 1.0);
  prof.set(F::kPeriod, ParamLevel::kHigh, 1.0);
  int lets_see = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SentencePlan p = insert_pragmatics(plan(mr, prof, seed), prof, seed);
    REQUIRE(p.markers.size() == 1);
    CHECK(p.markers[0].attachment == Attachment::kInitial);
    const std::string text = realize(p, mr);
    if (text.rfind("Let's see", 0) == 0) {
      ++lets_see;
      CHECK(text.rfind("Let's see what we can find on NAME. It is ", 0) == 0);
    }
    CHECK(count_of(text, "NAME") == 1);
  }
  CHECK(lets_see > 0);

  const auto anon = parse_mr("inform(eatType[pub], food[Italian])");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string text = realize(insert_pragmatics(plan(anon, prof, seed), prof, seed), anon);
    CHECK(text.rfind("Let's see what we can find. It is a pub.", 0) == 0);
  }
}

TEST_CASE("exclaim replaces the final period") {
  const auto mr = browns_delex();
  StyleProfile prof = StyleProfile::silent("exclaim");
  prof.set(F::kExclaim, ParamLevel::kHigh, 1.0);
  prof.set(F::kAlsoCue, ParamLevel::kHigh, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string text = realize(insert_pragmatics(plan(mr, prof, seed), prof, seed), mr);
    CHECK(text.back() == '!');
    CHECK(text.find('.') == std::string::npos);
  }
}

TEST_CASE("generated texts are well formed and audit clean") {
  const auto mr = browns();
  for (P voice : kAllPersonalities) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Realization r = generate(mr, {voice}, CombinationStrategy::kFirstWins, seed);
      check_shape(r.text);
      CHECK(audit(r.text, mr).clean());
    }
  }
  const auto anon = parse_mr("inform(eatType[coffee shop], customerRating[5 out of 5], area[riverside])");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Realization r = generate(anon, {P::kConscientious}, CombinationStrategy::kFirstWins, seed);
    check_shape(r.text);
    CHECK(audit(r.text, anon).clean());
  }
}

TEST_CASE("generate on the reference MR") {
  const auto mr = browns();
  const Realization r = generate(mr, {P::kDisagreeable}, CombinationStrategy::kFirstWins, 1);
  CHECK(audit(r.text, mr).clean());
  CHECK(r.voices == std::vector<P>{P::kDisagreeable});
  CHECK_FALSE(r.strategy.has_value());
  CHECK(r.mr.style_tags == std::vector<P>{P::kDisagreeable});
  CHECK(r.seed == 1);

  const Realization a = generate(mr, {P::kAgreeable}, CombinationStrategy::kFirstWins, 42);
  const Realization b = generate(mr, {P::kAgreeable}, CombinationStrategy::kFirstWins, 42);
  CHECK(a.text == b.text);

  int differ = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ed = generate(mr, {P::kExtravert, P::kDisagreeable}, CombinationStrategy::kFirstWins, seed);
    const auto de = generate(mr, {P::kDisagreeable, P::kExtravert}, CombinationStrategy::kFirstWins, seed);
    if (ed.text != de.text) ++differ;
    CHECK(ed.strategy == CombinationStrategy::kFirstWins);
  }
  CHECK(differ >= 1);

  CHECK(error_code_of([&] {
          generate(mr, {P::kAgreeable, P::kDisagreeable}, CombinationStrategy::kFirstWins, 1);
        }) == ErrorCode::kInvalidVoices);
}

TEST_CASE("lexicon parsing") {
  const TemplateLexicon lex = TemplateLexicon::parse("eatType[pub] is = a pub | a bar\neatType[pub] with = beer\n");
  const TemplateEntry e = lex.lookup(SlotName::kEatType, "PUB");
  CHECK(e.is_forms == std::vector<std::string>{"a pub", "a bar"});
  CHECK(e.with_forms == std::vector<std::string>{"beer"});
  CHECK(error_code_of([&] { lex.lookup(SlotName::kFood, "Italian"); }) == ErrorCode::kLexiconGap);
  CHECK(TemplateLexicon::defaults().lookup(SlotName::kNear, "NEAR").is_forms.front() == "near NEAR");

  const MarkerLexicon markers = MarkerLexicon::parse("EXCLAIM final = !\nEXPLETIVES pre_predicate = damn | darn\n");
  REQUIRE(markers.texts(F::kExpletives, Attachment::kPrePredicate) != nullptr);
  CHECK(markers.texts(F::kExpletives, Attachment::kPrePredicate)->size() == 2);
  CHECK(markers.texts(F::kExclaim, Attachment::kInitial) == nullptr);
  CHECK(markers.attachments(F::kExclaim) == std::vector<Attachment>{Attachment::kFinal});
  CHECK(error_code_of([] { MarkerLexicon::parse("NOPE final = x\n"); }).has_value());
  CHECK(error_code_of([] { MarkerLexicon::parse("EXCLAIM middle = x\n"); }).has_value());
}
