#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stylevox/mr.h"

namespace stylevox {

struct CorpusRecord {
  std::size_t mr_id = 0;  // index of first appearance
  MeaningRepresentation mr;
  std::vector<std::string> refs;  // every reference row for this MR
  std::size_t first_row = 0;      // 1-based data row
};

// RFC 4180 rows. Throws CsvSyntax naming the line.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// First column is the MR (any E2E rendering), optional second column a
// reference. A header row starting with "mr" is skipped. Identical MRs
// collapse into one record.
std::vector<CorpusRecord> parse_e2e_csv(std::string_view text);
std::vector<CorpusRecord> load_e2e_csv(const std::filesystem::path& path);

}  // namespace stylevox
