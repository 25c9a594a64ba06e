#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fink {

enum class ErrorCode {
  parse_error,
  invalid_argument,
  mismatched_level,
  overlapping_support,
  not_a_block,
  index_out_of_range,
  invalid_sequence,
  enumeration_cap_exceeded,
  past_end,
  witness_mismatch,
  not_intertwined,
  claim_violation,
  minimality_violation,
  horizon_exhausted,
  not_almost_disjoint,
};

/// Stable CamelCase name of an error code, e.g. "OverlappingSupport".
std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::parse_error, what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Thrown when (i, j) fail the pairwise smallness certificate.
class NotAlmostDisjoint : public Error {
 public:
  NotAlmostDisjoint(std::size_t first, std::size_t second);

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace fink
