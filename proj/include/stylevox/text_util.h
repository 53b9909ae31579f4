#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stylevox {

// ASCII-only case folding; UTF-8 continuation bytes pass through untouched.
char ascii_lower(char c);
std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Letters, digits, apostrophes and every non-ASCII byte count as word
// characters for token-boundary checks.
bool is_word_byte(char c);

// True when [begin, end) in `text` does not split a word on either side.
// A side whose edge byte is punctuation imposes no constraint.
bool at_token_boundary(std::string_view text, std::size_t begin, std::size_t end);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_trimmed(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);

// Whole-file helpers. Throw FileNotFound / IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace stylevox
