#include "csv.hpp"

#include <boost/tokenizer.hpp>

#include <charconv>
#include <fstream>

#include "floodrisk/error.hpp"

namespace floodrisk::detail {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  boost::tokenizer<Separator> tokens(line, Separator('\\', ',', '"'));
  std::vector<std::string> fields;
  for (const auto& token : tokens) fields.push_back(trim(token));
  return fields;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  CsvTable table;
  table.source = path;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    try {
      auto fields = split(line);
      if (!have_header) {
        table.header = std::move(fields);
        have_header = true;
      } else {
        table.rows.push_back({line_number, std::move(fields)});
      }
    } catch (const boost::escaped_list_error& e) {
      throw InputError(path.string() + ":" + std::to_string(line_number) + ": malformed CSV line: " + e.what());
    }
  }
  if (!have_header) throw InputError(path.string() + ": missing header row");
  return table;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw InputError(source.string() + ": missing column '" + name + "'");
}

bool parse_double(const std::string& text, double& out) {
  const std::string s = trim(text);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(const std::string& text, long long& out) {
  const std::string s = trim(text);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace floodrisk::detail
