#include "stylevox/fidelity.h"

#include <algorithm>

#include "stylevox/embedded_data.h"
#include "stylevox/error.h"
#include "stylevox/phrase_matcher.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

[[noreturn]] void bad_lexicon(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kInvalidLexicon, "line " + std::to_string(line) + ": " + what);
}

struct Scan {
  SlotCounts counts{};
  std::vector<Hallucination> hallucinations;
};

Scan scan(std::string_view utterance, const MeaningRepresentation& mr, const SlotMatchLexicon& lex) {
  // ids >= 0 index lexicon entries; negative ids mark the MR's own open-slot values.
  PhraseMatcher matcher;
  for (const Slot& s : mr.slots) {
    if (lex.is_open(s.name)) {
      // placeholders count only against a delexicalized MR
      const bool placeholder = (s.name == SlotName::kName && s.value == kNamePlaceholder) ||
                               (s.name == SlotName::kNear && s.value == kNearPlaceholder);
      matcher.add(s.value, -1 - static_cast<int>(s.name), placeholder);
    } else if (lex.patterns(s.name, s.value) == nullptr) {
      throw Error(ErrorCode::kLexiconGap, "no patterns for " + std::string(slot_name_str(s.name)) + "[" +
                                              s.value + "]");
    }
  }
  const auto& entries = lex.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const std::string& p : entries[i].patterns) matcher.add(p, static_cast<int>(i));
  }

  Scan out;
  for (const PhraseMatch& m : matcher.scan(utterance)) {
    if (m.id < 0) {
      ++out.counts[static_cast<std::size_t>(-1 - m.id)];
      continue;
    }
    const auto& entry = entries[static_cast<std::size_t>(m.id)];
    const Slot* own = mr.find(entry.slot);
    if (own && ascii_lower(own->value) == entry.value) {
      ++out.counts[static_cast<std::size_t>(entry.slot)];
    } else {
      out.hallucinations.push_back(
          Hallucination{entry.slot, ascii_lower(utterance.substr(m.begin, m.end - m.begin))});
    }
  }
  return out;
}

}  // namespace

const SlotMatchLexicon& SlotMatchLexicon::defaults() {
  static const SlotMatchLexicon lex = parse(embedded::kSlotLexicon);
  return lex;
}

SlotMatchLexicon SlotMatchLexicon::parse(std::string_view text) {
  SlotMatchLexicon lex;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto open = line.find('[');
    const auto close = line.find(']', open == std::string_view::npos ? 0 : open);
    const auto eq = line.find('=', close == std::string_view::npos ? 0 : close);
    if (open == std::string_view::npos || close == std::string_view::npos || eq == std::string_view::npos) {
      bad_lexicon(line_no, "expected slot[value] = patterns");
    }
    const std::string_view slot_token = trim(line.substr(0, open));
    const auto slot = parse_slot_name(slot_token);
    if (!slot) bad_lexicon(line_no, "unknown slot '" + std::string(slot_token) + "'");
    const std::string value = ascii_lower(trim(line.substr(open + 1, close - open - 1)));
    const std::vector<std::string> patterns = split_trimmed(line.substr(eq + 1), '|');
    if (value == "*") {
      if (patterns.size() != 1 || patterns[0] != "{value}") bad_lexicon(line_no, "[*] takes {value} only");
      lex.open_[static_cast<std::size_t>(*slot)] = true;
      continue;
    }
    if (value.empty()) bad_lexicon(line_no, "empty value");
    if (lex.patterns(*slot, value) != nullptr) bad_lexicon(line_no, "entry repeated");
    Entry entry{*slot, value, {}};
    for (const std::string& p : patterns) {
      if (p.empty()) bad_lexicon(line_no, "empty pattern");
      const std::string lowered = ascii_lower(p);
      for (const Entry& other : lex.entries_) {
        if (other.slot != *slot) continue;
        if (std::find(other.patterns.begin(), other.patterns.end(), lowered) != other.patterns.end()) {
          bad_lexicon(line_no, "pattern '" + p + "' already used by " + other.value);
        }
      }
      entry.patterns.push_back(lowered);
    }
    lex.entries_.push_back(std::move(entry));
  }
  for (const Entry& e : lex.entries_) {
    if (lex.open_[static_cast<std::size_t>(e.slot)]) {
      throw Error(ErrorCode::kInvalidLexicon, std::string(slot_name_str(e.slot)) + " is open and listed");
    }
  }
  return lex;
}

SlotMatchLexicon SlotMatchLexicon::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

bool SlotMatchLexicon::is_open(SlotName slot) const { return open_[static_cast<std::size_t>(slot)]; }

const std::vector<std::string>* SlotMatchLexicon::patterns(SlotName slot, std::string_view value) const {
  const std::string key = ascii_lower(value);
  for (const Entry& e : entries_) {
    if (e.slot == slot && e.value == key) return &e.patterns;
  }
  return nullptr;
}

SlotCounts match_slots(std::string_view utterance, const MeaningRepresentation& mr,
                       const SlotMatchLexicon& lex) {
  return scan(utterance, mr, lex).counts;
}

ErrorReport audit(std::string_view utterance, const MeaningRepresentation& mr, const SlotMatchLexicon& lex) {
  Scan s = scan(utterance, mr, lex);
  ErrorReport report;
  for (const Slot& slot : mr.slots) {
    const int count = s.counts[static_cast<std::size_t>(slot.name)];
    if (count == 0) report.deletions.push_back(slot.name);
    if (count >= 2) report.repetitions.emplace_back(slot.name, count);
  }
  report.hallucinations = std::move(s.hallucinations);
  return report;
}

ErrorRatios aggregate_ratios(const std::vector<ErrorReport>& reports, std::size_t unique_mr_count,
                             std::string model) {
  if (unique_mr_count == 0) throw Error(ErrorCode::kInvalidArgument, "unique MR count must be positive");
  std::size_t del = 0;
  std::size_t rep = 0;
  std::size_t hal = 0;
  for (const ErrorReport& r : reports) {
    del += r.deletions.size();
    rep += r.repetitions.size();
    hal += r.hallucinations.size();
  }
  const double n = static_cast<double>(unique_mr_count);
  return ErrorRatios{std::move(model), static_cast<double>(del) / n, static_cast<double>(rep) / n,
                     static_cast<double>(hal) / n};
}

}  // namespace stylevox
