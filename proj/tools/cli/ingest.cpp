#include "cli/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace familial::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

char detect_delimiter(const std::string& line) {
  for (char c : {',', '\t', ';'}) {
    if (line.find(c) != std::string::npos) return c;
  }
  return ' ';
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> cells;
  if (delim == ' ') {
    std::istringstream is(line);
    std::string cell;
    while (is >> cell) cells.push_back(cell);
    return cells;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    cells.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Columns parse_columns(const std::string& text, const std::string& source) {
  Columns out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  char delim = 0;
  std::size_t width = 0;
  bool first_row = true;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (delim == 0) delim = detect_delimiter(line);
    const std::vector<std::string> cells = split(line, delim);

    if (first_row) {
      first_row = false;
      width = cells.size();
      out.columns.resize(width);
      double probe = 0.0;
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && parse_number(c, probe);
      if (!numeric) {
        out.had_header = true;
        out.names = cells;
        continue;
      }
    }
    if (cells.size() != width) {
      throw input_error(source + ": line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                        " column(s), found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_number(cells[c], v) || !std::isfinite(v)) {
        throw input_error(source + ": line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                          ": not a finite number: '" + cells[c] + "'");
      }
      out.columns[c].push_back(v);
    }
  }
  if (out.rows() == 0) throw input_error(source + ": no data rows");
  return out;
}

Columns ingest_columns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_columns(buf.str(), path);
}

}  // namespace familial::cli
