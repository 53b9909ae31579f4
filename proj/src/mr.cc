#include "stylevox/mr.h"

#include <algorithm>

#include "stylevox/error.h"
#include "stylevox/text_util.h"

namespace stylevox {
namespace {

constexpr std::array<std::string_view, kSlotCount> kSlotNames = {
    "name", "eatType", "food", "priceRange", "customerRating", "area", "familyFriendly", "near"};

constexpr std::array<std::string_view, kPersonalityCount> kPersonalityNames = {
    "AGREEABLE", "CONSCIENTIOUS", "DISAGREEABLE", "EXTRAVERT", "UNCONSCIENTIOUS"};

constexpr std::array<std::string_view, kPersonalityCount> kPersonalityLabels = {
    "Agree", "Consc", "Disagr", "Extra", "Unconsc"};

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Recursive-descent reader over the canonical grammar.
class MrReader {
 public:
  explicit MrReader(std::string_view text) : text_(text) {}

  MeaningRepresentation read() {
    MeaningRepresentation mr;
    skip_ws();
    const std::string_view act = ident();
    if (act.empty()) fail(ErrorCode::kMalformedBrackets, "expected a dialog act");
    if (act != "inform") {
      fail(ErrorCode::kUnsupportedAct, "only inform acts are supported, got '" + std::string(act) + "'");
    }
    mr.act = std::string(act);
    expect('(');
    skip_ws();
    if (!eat(')')) {
      while (true) {
        read_slot(mr);
        skip_ws();
        if (eat(',')) continue;
        if (eat(')')) break;
        fail(ErrorCode::kMalformedBrackets, "expected ',' or ')'");
      }
    }
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      const std::string_view next = ident();
      if (next != "convert") {
        if (!next.empty() && peek() == '(') {
          fail(ErrorCode::kUnsupportedAct, "unexpected act '" + std::string(next) + "'");
        }
        fail(ErrorCode::kMalformedBrackets, "trailing text after the inform act");
      }
      read_convert(mr);
    }
    return mr;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& what) const {
    throw Error(code, what + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    if (peek() == c && pos_ < text_.size()) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!eat(c)) fail(ErrorCode::kMalformedBrackets, std::string("expected '") + c + "'");
  }

  std::string_view ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string bracket_value() {
    if (!eat('[')) fail(ErrorCode::kMalformedBrackets, "expected '['");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ']') {
      const char c = text_[pos_];
      if (c == '[' || c == '\n' || c == '\r') fail(ErrorCode::kMalformedBrackets, "bad character in value");
      ++pos_;
    }
    if (pos_ >= text_.size()) fail(ErrorCode::kMalformedBrackets, "unterminated '['");
    std::string value(text_.substr(start, pos_ - start));
    ++pos_;
    if (value.empty()) fail(ErrorCode::kMalformedBrackets, "empty slot value");
    return value;
  }

  void read_slot(MeaningRepresentation& mr) {
    skip_ws();
    const std::string_view key = ident();
    if (key.empty()) fail(ErrorCode::kMalformedBrackets, "expected a slot name");
    if (peek() != '[') fail(ErrorCode::kMalformedBrackets, "expected '[' after slot name");
    const auto slot = parse_slot_name(key);
    if (!slot) fail(ErrorCode::kUnknownSlot, "unknown slot '" + std::string(key) + "'");
    std::string value = bracket_value();
    if (mr.has(*slot)) fail(ErrorCode::kDuplicateSlot, "duplicate slot '" + std::string(key) + "'");
    mr.slots.push_back(Slot{*slot, std::move(value)});
  }

  void read_convert(MeaningRepresentation& mr) {
    expect('(');
    skip_ws();
    if (ident() != "personality") fail(ErrorCode::kMalformedBrackets, "expected personality[...]");
    const std::string value = bracket_value();
    expect(')');
    const auto p = parse_personality(value);
    if (!p) fail(ErrorCode::kUnknownPersonality, "unknown personality '" + value + "'");
    if (mr.style_tags.size() >= 2) fail(ErrorCode::kTooManyStyleTags, "more than two convert tags");
    if (std::find(mr.style_tags.begin(), mr.style_tags.end(), *p) != mr.style_tags.end()) {
      fail(ErrorCode::kDuplicateStyleTag, "repeated convert tag '" + value + "'");
    }
    mr.style_tags.push_back(*p);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Lowercases and drops spaces/underscores, so "customer rating" and
// "customerRating" compare equal.
std::string squash_key(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == ' ' || c == '_' || c == '\t') continue;
    out.push_back(ascii_lower(c));
  }
  return out;
}

}  // namespace

std::string_view slot_name_str(SlotName slot) { return kSlotNames[static_cast<std::size_t>(slot)]; }

std::optional<SlotName> parse_slot_name(std::string_view token) {
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if (kSlotNames[i] == token) return static_cast<SlotName>(i);
  }
  return std::nullopt;
}

std::string_view personality_str(PersonalityId p) {
  return kPersonalityNames[static_cast<std::size_t>(p)];
}

std::string_view personality_label(PersonalityId p) {
  return kPersonalityLabels[static_cast<std::size_t>(p)];
}

std::optional<PersonalityId> parse_personality(std::string_view token) {
  for (std::size_t i = 0; i < kPersonalityCount; ++i) {
    if (kPersonalityNames[i] == token) return static_cast<PersonalityId>(i);
  }
  return std::nullopt;
}

const Slot* MeaningRepresentation::find(SlotName name) const {
  for (const Slot& s : slots) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void validate_mr(const MeaningRepresentation& mr) {
  if (mr.act != "inform") throw Error(ErrorCode::kUnsupportedAct, "act '" + mr.act + "'");
  std::array<bool, kSlotCount> seen{};
  for (const Slot& s : mr.slots) {
    auto& flag = seen[static_cast<std::size_t>(s.name)];
    if (flag) throw Error(ErrorCode::kDuplicateSlot, std::string(slot_name_str(s.name)));
    flag = true;
    if (s.value.empty() || s.value.find_first_of("[]\n\r") != std::string::npos) {
      throw Error(ErrorCode::kMalformedBrackets, "invalid value for " + std::string(slot_name_str(s.name)));
    }
  }
  if (mr.style_tags.size() > 2) throw Error(ErrorCode::kTooManyStyleTags, "more than two convert tags");
  if (mr.style_tags.size() == 2 && mr.style_tags[0] == mr.style_tags[1]) {
    throw Error(ErrorCode::kDuplicateStyleTag, std::string(personality_str(mr.style_tags[0])));
  }
}

MeaningRepresentation parse_mr(std::string_view text) { return MrReader(text).read(); }

std::string normalize_mr_text(std::string_view text) {
  std::string flat;
  for (char c : text) {
    const char d = (c == '\n' || c == '\r' || c == '\t') ? ' ' : c;
    if (d == ' ' && (flat.empty() || flat.back() == ' ')) continue;
    flat.push_back(d);
  }
  const std::string_view body = trim(flat);

  std::string act = "inform";
  std::size_t lead = 0;
  while (lead < body.size() && is_ident_char(body[lead])) ++lead;
  if (lead > 0 && lead < body.size() && body[lead] == '(' && body.substr(0, lead) != "convert") {
    act = std::string(body.substr(0, lead));
  }

  std::vector<std::string> slots;
  std::vector<std::string> tags;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = body.find('[', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = body.find(']', open);
    if (close == std::string_view::npos) return std::string(text);
    std::size_t key_start = open;
    while (key_start > pos && body[key_start - 1] != ',' && body[key_start - 1] != '(' &&
           body[key_start - 1] != ')') {
      --key_start;
    }
    const std::string_view key = trim(body.substr(key_start, open - key_start));
    const std::string_view value = body.substr(open + 1, close - open - 1);
    const std::string squashed = squash_key(key);
    if (squashed == "personality") {
      tags.emplace_back(trim(value));
    } else {
      std::string canonical(key);
      for (std::string_view name : kSlotNames) {
        if (squash_key(name) == squashed) canonical = std::string(name);
      }
      slots.push_back(canonical + "[" + std::string(value) + "]");
    }
    pos = close + 1;
  }
  if (slots.empty() && tags.empty()) return std::string(text);

  std::string out = act + "(";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out += ", ";
    out += slots[i];
  }
  out += ")";
  for (const std::string& tag : tags) out += " convert(personality[" + tag + "])";
  return out;
}

MeaningRepresentation parse_mr_lenient(std::string_view text) {
  return parse_mr(normalize_mr_text(text));
}

std::string serialize_mr(const MeaningRepresentation& mr) {
  std::string out = mr.act + "(";
  for (std::size_t i = 0; i < mr.slots.size(); ++i) {
    if (i > 0) out += ", ";
    out += slot_name_str(mr.slots[i].name);
    out += '[';
    out += mr.slots[i].value;
    out += ']';
  }
  out += ')';
  for (PersonalityId p : mr.style_tags) {
    out += " convert(personality[";
    out += personality_str(p);
    out += "])";
  }
  return out;
}

std::string_view placeholder_token(Placeholder p) {
  return p == Placeholder::kName ? kNamePlaceholder : kNearPlaceholder;
}

Delexicalized delexicalize(const MeaningRepresentation& mr, std::string_view utterance) {
  Delexicalized out;
  out.mr = mr;

  struct Target {
    std::string value;
    Placeholder placeholder;
  };
  std::vector<Target> targets;
  for (Slot& slot : out.mr.slots) {
    std::optional<Placeholder> ph;
    if (slot.name == SlotName::kName) ph = Placeholder::kName;
    if (slot.name == SlotName::kNear) ph = Placeholder::kNear;
    if (!ph) continue;
    out.map.placeholders[*ph] = slot.value;
    targets.push_back(Target{slot.value, *ph});
    slot.value = std::string(placeholder_token(*ph));
  }
  std::stable_sort(targets.begin(), targets.end(),
                   [](const Target& a, const Target& b) { return a.value.size() > b.value.size(); });

  std::string& result = out.utterance;
  std::size_t i = 0;
  while (i < utterance.size()) {
    bool replaced = false;
    for (const Target& t : targets) {
      const std::size_t end = i + t.value.size();
      if (end <= utterance.size() && iequals(utterance.substr(i, t.value.size()), t.value) &&
          at_token_boundary(utterance, i, end)) {
        result += placeholder_token(t.placeholder);
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) result.push_back(utterance[i++]);
  }
  return out;
}

std::string relexicalize(std::string_view utterance, const DelexMap& map) {
  std::string out;
  std::size_t i = 0;
  while (i < utterance.size()) {
    bool replaced = false;
    for (Placeholder p : {Placeholder::kName, Placeholder::kNear}) {
      const std::string_view token = placeholder_token(p);
      const std::size_t end = i + token.size();
      if (end <= utterance.size() && utterance.substr(i, token.size()) == token &&
          at_token_boundary(utterance, i, end)) {
        const auto it = map.placeholders.find(p);
        if (it == map.placeholders.end()) {
          throw Error(ErrorCode::kUnboundPlaceholder, std::string(token) + " has no value");
        }
        out += it->second;
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(utterance[i++]);
  }
  return out;
}

}  // namespace stylevox
