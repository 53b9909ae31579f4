#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylevox/mr.h"

namespace stylevox {

// Surface patterns per (slot, value). Name and near are open-class: their
// patterns come from the MR being audited ("{value}" entries).
class SlotMatchLexicon {
 public:
  static const SlotMatchLexicon& defaults();
  static SlotMatchLexicon parse(std::string_view text);
  static SlotMatchLexicon load(const std::filesystem::path& path);

  bool is_open(SlotName slot) const;
  // nullptr when (slot, value) has no entry; open slots always return nullptr.
  const std::vector<std::string>* patterns(SlotName slot, std::string_view value) const;

  struct Entry {
    SlotName slot;
    std::string value;  // lowercased
    std::vector<std::string> patterns;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
  std::array<bool, kSlotCount> open_{};
};

using SlotCounts = std::array<int, kSlotCount>;

struct Hallucination {
  SlotName slot;
  std::string found;  // lowercased surface text

  friend bool operator==(const Hallucination&, const Hallucination&) = default;
};

struct ErrorReport {
  std::vector<SlotName> deletions;
  std::vector<std::pair<SlotName, int>> repetitions;
  std::vector<Hallucination> hallucinations;

  bool clean() const { return deletions.empty() && repetitions.empty() && hallucinations.empty(); }
};

SlotCounts match_slots(std::string_view utterance, const MeaningRepresentation& mr,
                       const SlotMatchLexicon& lex = SlotMatchLexicon::defaults());

ErrorReport audit(std::string_view utterance, const MeaningRepresentation& mr,
                  const SlotMatchLexicon& lex = SlotMatchLexicon::defaults());

struct ErrorRatios {
  std::string model;
  double deletions = 0.0;
  double repetitions = 0.0;
  double hallucinations = 0.0;
};

// Each repeated slot counts as one error regardless of its match count.
ErrorRatios aggregate_ratios(const std::vector<ErrorReport>& reports, std::size_t unique_mr_count,
                             std::string model);

}  // namespace stylevox
