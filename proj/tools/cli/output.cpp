#include "cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace familial::cli {

namespace {

void write_string(const std::string& s, std::ostream& out) {
  // Reuse the library's escaping rules for strings.
  out << Json(s).dump();
}

void write_value(const Json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write_string(it.key(), out);
        out << ": ";
        write_value(it.value(), out, indent + 1);
      }
      out << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          write_value(v[i], out, indent + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        write_value(v[i], out, indent + 1);
      }
      out << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_number(d) : std::string("null"));
      return;
    }
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void write_json(const Json& doc, std::ostream& out) {
  write_value(doc, out, 0);
  out << '\n';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace familial::cli
