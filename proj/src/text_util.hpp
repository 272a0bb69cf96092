#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace qacurve::detail {

// Drops everything from the first '#' and splits on whitespace.
std::vector<std::string_view> tokens(std::string_view line, bool strip_comment = true);

double parse_real(std::string_view token, std::size_t line_no);
std::size_t parse_index(std::string_view token, std::size_t line_no);

// Opens for reading or throws IoError.
std::ifstream open_input(const std::string& path);

}  // namespace qacurve::detail
