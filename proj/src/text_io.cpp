#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "qacurve/error.hpp"
#include "qacurve/metrics.hpp"
#include "text_util.hpp"

namespace qacurve {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DomainError: return "domain error";
    case ErrorCode::CapExceeded: return "enumeration cap exceeded";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::DegenerateFit: return "degenerate fit";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::IoError: return "i/o error";
  }
  return "unknown error";
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) fail(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf.data(), end);
}

namespace detail {

std::vector<std::string_view> tokens(std::string_view line, bool strip_comment) {
  if (strip_comment) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  }
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_real(std::string_view token, std::size_t line_no) {
  double v = 0.0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line_no) + ": bad number '" + std::string(token) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view token, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line_no) + ": bad index '" + std::string(token) + "'");
  }
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return in;
}

}  // namespace detail
}  // namespace qacurve
