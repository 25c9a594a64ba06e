#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fink {

/// Largest supported level. Values are stored one byte per position.
inline constexpr int kMaxLevel = 255;

/// Largest supported support position (storage is dense).
inline constexpr std::size_t kMaxPosition = 1u << 20;

/// A finitely supported map from positions to {0, ..., k}.
///
/// Values are stored densely from position 0 up to the last nonzero
/// position; trailing zeros are always trimmed, so two subblocks are equal
/// iff they agree pointwise and share a level. A subblock that attains the
/// value k somewhere is a block (an element of FIN_k); the empty subblock is
/// allowed and has no support.
class Subblock {
 public:
  /// Validates `values` against `level` and trims trailing zeros.
  Subblock(int level, std::vector<std::uint8_t> values);

  static Subblock empty(int level);

  /// Builds from (position, value) pairs. Positions must be strictly
  /// increasing and values in 1..level.
  static Subblock from_pairs(
      int level, const std::vector<std::pair<std::size_t, int>>& entries);

  int level() const noexcept { return level_; }
  std::span<const std::uint8_t> values() const noexcept { return values_; }

  /// Value at `position`; zero past the stored range.
  int at(std::size_t position) const noexcept {
    return position < values_.size() ? values_[position] : 0;
  }

  bool is_empty() const noexcept { return values_.empty(); }

  /// True iff the level k is attained, i.e. this is a block.
  bool is_block() const noexcept;

  /// Smallest support position. Requires a nonempty subblock.
  std::size_t min_support() const;
  /// Largest support position. Requires a nonempty subblock.
  std::size_t max_support() const;

  std::vector<std::size_t> support() const;

  /// Copy of this subblock with positions outside [first, last] zeroed.
  Subblock restrict_to(std::size_t first, std::size_t last) const;

  /// Canonical order: level first, then lexicographic on the value vector.
  friend std::strong_ordering operator<=>(const Subblock& a,
                                          const Subblock& b) noexcept;
  friend bool operator==(const Subblock& a, const Subblock& b) noexcept {
    return a.level_ == b.level_ && a.values_ == b.values_;
  }

 private:
  Subblock(int level, std::vector<std::uint8_t> values, bool trusted);
  void normalise();

  int level_;
  std::vector<std::uint8_t> values_;
  std::size_t first_ = 0;

  friend Subblock tetris(const Subblock&, int);
  friend Subblock add(const Subblock&, const Subblock&);
  friend Subblock star(const Subblock&, const Subblock&);
};

/// Blocks and subblocks share storage; block-typed parameters are validated
/// with `require_block` at operation entry.
using Block = Subblock;

/// Throws NotABlock unless `p` attains its level.
void require_block(const Subblock& p, std::string_view context);

/// Throws MismatchedLevel unless both operands share a level.
void require_same_level(const Subblock& p, const Subblock& q);

/// Pointwise max(p(n) - times, 0).
Subblock tetris(const Subblock& p, int times);

/// Partial addition: union of disjoint supports. Throws OverlappingSupport.
Subblock add(const Subblock& p, const Subblock& q);

/// Pointwise maximum.
Subblock star(const Subblock& p, const Subblock& q);

/// Largest position at which `p` equals its level. Throws NotABlock.
std::size_t last_full_position(const Subblock& p);

/// Block order: max supp(p) < min supp(q), or either side is empty.
bool precedes(const Subblock& p, const Subblock& q) noexcept;

bool supports_intersect(const Subblock& p, const Subblock& q) noexcept;

/// Canonical literal, e.g. "k=2|0:2,3:1" or "k=2|-".
std::string to_literal(const Subblock& p);

/// Body without the level prefix, e.g. "0:2,3:1" or "-".
std::string to_body(const Subblock& p);

/// Parses a full literal "k=<K>|<body>".
Subblock parse_block(std::string_view literal);

/// Parses a body "<pos>:<val>,..." or "-" at the given level. `line` is
/// reported in parse errors.
Subblock parse_block_body(int level, std::string_view body,
                          std::size_t line = 1, std::size_t column_offset = 0);

}  // namespace fink
