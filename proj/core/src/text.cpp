#include "text.hpp"

#include <charconv>
#include <fstream>

#include "fink/block.hpp"
#include "fink/error.hpp"

namespace fink::detail {

std::size_t parse_unsigned(std::string_view token, std::size_t line,
                           std::size_t column, std::string_view what) {
  if (token.empty()) {
    throw ParseError("expected " + std::string(what), line, column);
  }
  std::size_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(std::string(what) + " out of range", line, column);
  }
  if (ec != std::errc() || ptr != last) {
    const auto bad = static_cast<std::size_t>(ptr - first);
    throw ParseError("invalid " + std::string(what) + " '" +
                         std::string(token) + "'",
                     line, column + bad);
  }
  return value;
}

std::string_view trim(std::string_view text) noexcept {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<Piece> split(std::string_view text, char separator) {
  std::vector<Piece> pieces;
  std::size_t start = 0;
  while (true) {
    const auto next = text.find(separator, start);
    if (next == std::string_view::npos) {
      pieces.push_back({text.substr(start), start});
      return pieces;
    }
    pieces.push_back({text.substr(start, next - start), start});
    start = next + 1;
  }
}

int parse_level_field(std::string_view text, std::size_t line,
                      std::size_t column) {
  if (text.substr(0, 2) != "k=") {
    throw ParseError("expected 'k=<level>'", line, column);
  }
  const auto level = parse_unsigned(text.substr(2), line, column + 2, "level");
  if (level < 1 || level > static_cast<std::size_t>(kMaxLevel)) {
    throw ParseError("level must be in 1.." + std::to_string(kMaxLevel), line,
                     column + 2);
  }
  return static_cast<int>(level);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "'");
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace fink::detail
