#include "cqt/pointfile.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace cqt {

RealPointSet parse_point_text(std::string_view text) {
  RealPointSet out;
  out.dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<double> row;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    row.clear();
    const char* cursor = line.c_str();
    for (;;) {
      while (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') ++cursor;
      if (*cursor == '\0') break;
      char* after = nullptr;
      errno = 0;
      const double value = std::strtod(cursor, &after);
      if (after == cursor || errno == ERANGE) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": not a decimal number near '" +
                         std::string(cursor).substr(0, 16) + "'");
      }
      row.push_back(value);
      cursor = after;
    }
    if (out.dim == 0) {
      out.dim = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != out.dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(out.dim) + " coordinates, got " +
                       std::to_string(row.size()));
    }
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  if (out.dim == 0) out.dim = 2;  // empty file: adopt the default arity
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ParseError("read failure on '" + path + "'");
  return std::move(buffer).str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw ParseError("write failure on '" + path + "'");
}

RealPointSet read_point_file(const std::string& path) {
  return parse_point_text(read_text_file(path));
}

std::string format_point_file(const RealPointSet& points,
                              const std::string& header_comment) {
  std::string out;
  if (!header_comment.empty()) {
    out += "# ";
    out += header_comment;
    out += '\n';
  }
  char buffer[64];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buffer, sizeof buffer, "%.17g", p[k]);
      if (k > 0) out += ' ';
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

void write_point_file(const std::string& path, const RealPointSet& points,
                      const std::string& header_comment) {
  write_text_file(path, format_point_file(points, header_comment));
}

}  // namespace cqt
