#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace familial::cli {

// Malformed input file or flag; maps to exit code 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Columns {
  std::vector<std::vector<double>> columns;
  bool had_header = false;
  std::vector<std::string> names;  // header names when present

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Reads comma-, tab-, semicolon- or whitespace-delimited numeric columns. A
// first row with any non-numeric cell is taken as a header. Blank lines are
// skipped. Errors carry 1-based line and column positions.
Columns ingest_columns(const std::string& path);
Columns parse_columns(const std::string& text, const std::string& source = "<input>");

}  // namespace familial::cli
