#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace floodrisk::detail {

struct CsvTable {
  std::vector<std::string> header;
  struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;

  /// Column index by name; throws InputError naming the file and column.
  std::size_t column(const std::string& name) const;
  std::filesystem::path source;
};

/// Comma-separated, UTF-8, one header row; quoted fields allowed. Blank
/// lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);

/// Strict numeric parse of a whole field.
bool parse_double(const std::string& text, double& out);
bool parse_int(const std::string& text, long long& out);

std::string trim(const std::string& s);

}  // namespace floodrisk::detail
