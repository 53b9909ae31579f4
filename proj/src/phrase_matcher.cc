#include "stylevox/phrase_matcher.h"

#include <algorithm>

#include "stylevox/text_util.h"

namespace stylevox {

void PhraseMatcher::add(std::string pattern, int id, bool case_sensitive) {
  if (pattern.empty()) return;
  const auto key = static_cast<unsigned char>(ascii_lower(pattern[0]));
  patterns_.push_back(Pattern{std::move(pattern), id, case_sensitive});
  auto& bucket = buckets_[key];
  bucket.push_back(patterns_.size() - 1);
  std::stable_sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
    return patterns_[a].text.size() > patterns_[b].text.size();
  });
}

bool PhraseMatcher::matches_at(const Pattern& p, std::string_view text, std::size_t pos) const {
  const std::size_t end = pos + p.text.size();
  if (end > text.size()) return false;
  const std::string_view window = text.substr(pos, p.text.size());
  const bool same = p.case_sensitive ? window == p.text : iequals(window, p.text);
  return same && at_token_boundary(text, pos, end);
}

std::vector<PhraseMatch> PhraseMatcher::scan(std::string_view text) const {
  std::vector<PhraseMatch> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto& bucket = buckets_[static_cast<unsigned char>(ascii_lower(text[i]))];
    bool hit = false;
    for (std::size_t idx : bucket) {
      const Pattern& p = patterns_[idx];
      if (matches_at(p, text, i)) {
        out.push_back(PhraseMatch{i, i + p.text.size(), p.id});
        i += p.text.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  return out;
}

}  // namespace stylevox
