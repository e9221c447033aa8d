#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace familial::cli {

using Json = nlohmann::ordered_json;

// 17 significant digits; non-finite values print as inf, -inf or nan.
std::string format_number(double v);

// Pretty-printed JSON (two-space indent, keys in insertion order), newline
// terminated. Floats use format_number; non-finite floats become null.
void write_json(const Json& doc, std::ostream& out);

// Comma-separated row, newline terminated.
void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace familial::cli
