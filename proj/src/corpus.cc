#include "stylevox/corpus.h"

#include <map>

#include "stylevox/error.h"
#include "stylevox/text_util.h"

namespace stylevox {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool row_has_content = false;

  const auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    if (row_has_content) rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '"' && field.empty()) {
      const std::size_t start_line = line;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (text[i] == '\n') ++line;
        field.push_back(text[i++]);
      }
      if (!closed) throw Error(ErrorCode::kCsvSyntax, "unterminated quote opened on line " + std::to_string(start_line));
      row_has_content = true;
      if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        throw Error(ErrorCode::kCsvSyntax, "text after closing quote on line " + std::to_string(line));
      }
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_content = true;
      ++i;
    } else if (c == '\r' || c == '\n') {
      end_row();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      ++line;
    } else if (c == '"') {
      throw Error(ErrorCode::kCsvSyntax, "stray quote on line " + std::to_string(line));
    } else {
      field.push_back(c);
      row_has_content = true;
      ++i;
    }
  }
  if (row_has_content || !field.empty()) end_row();
  return rows;
}

std::vector<CorpusRecord> parse_e2e_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  std::vector<CorpusRecord> records;
  std::map<std::string, std::size_t> index;
  std::size_t data_row = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && iequals(trim(row[0]), "mr")) continue;
    ++data_row;
    if (trim(row[0]).empty()) throw Error(ErrorCode::kMrParse, "row " + std::to_string(data_row) + ": empty MR");
    MeaningRepresentation mr;
    try {
      mr = parse_mr_lenient(row[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMrParse, "row " + std::to_string(data_row) + ": " + e.what());
    }
    const std::string key = serialize_mr(mr);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, records.size()).first;
      records.push_back(CorpusRecord{records.size(), std::move(mr), {}, data_row});
    }
    if (row.size() > 1 && !trim(row[1]).empty()) records[it->second].refs.emplace_back(row[1]);
  }
  if (records.empty()) throw Error(ErrorCode::kEmptyCorpus, "no MR rows");
  return records;
}

std::vector<CorpusRecord> load_e2e_csv(const std::filesystem::path& path) {
  return parse_e2e_csv(read_text_file(path));
}

}  // namespace stylevox
