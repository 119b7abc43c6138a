#pragma once

#include <string>
#include <string_view>

#include "cqt/geometry.hpp"

namespace cqt {

// Point file format: one point per line, d whitespace-separated decimal
// reals; lines starting with '#' and blank lines are skipped; every data
// line must have the arity of the first one.
RealPointSet parse_point_text(std::string_view text);

RealPointSet read_point_file(const std::string& path);

// Render with enough digits to round-trip doubles exactly.
std::string format_point_file(const RealPointSet& points,
                              const std::string& header_comment);

void write_point_file(const std::string& path, const RealPointSet& points,
                      const std::string& header_comment);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace cqt
