#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stylevox {

struct PhraseMatch {
  std::size_t begin;
  std::size_t end;
  int id;
};

// Left-to-right, longest-pattern-first, non-overlapping matching on token
// boundaries. Patterns are case-insensitive unless added otherwise.
class PhraseMatcher {
 public:
  void add(std::string pattern, int id, bool case_sensitive = false);
  std::vector<PhraseMatch> scan(std::string_view text) const;
  bool empty() const { return patterns_.empty(); }

 private:
  struct Pattern {
    std::string text;
    int id;
    bool case_sensitive;
  };

  bool matches_at(const Pattern& p, std::string_view text, std::size_t pos) const;

  std::vector<Pattern> patterns_;
  std::array<std::vector<std::size_t>, 256> buckets_;
};

}  // namespace stylevox
