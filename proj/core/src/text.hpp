#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fink::detail {

/// Parses a nonnegative decimal integer occupying all of `token`.
/// `column` is the 1-based column of the token's first character.
std::size_t parse_unsigned(std::string_view token, std::size_t line,
                           std::size_t column, std::string_view what);

std::string_view trim(std::string_view text) noexcept;

struct Piece {
  std::string_view text;
  std::size_t offset;  // 0-based offset within the split input
};

/// Splits on `separator`, keeping empty pieces.
std::vector<Piece> split(std::string_view text, char separator);

/// Parses a "k=<K>" header and validates the level range.
int parse_level_field(std::string_view text, std::size_t line,
                      std::size_t column);

std::vector<std::string> read_lines(const std::string& path);

}  // namespace fink::detail
