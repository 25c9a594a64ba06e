#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fink/block.hpp"

namespace fink {

/// A finite block sequence p_0 < p_1 < ... < p_{N-1}, all at one level.
class BlockSequence {
 public:
  /// Throws InvalidSequence if the blocks are not strictly ordered or some
  /// entry does not attain the level, MismatchedLevel on mixed levels.
  BlockSequence(int level, std::vector<Block> blocks);

  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }
  const Block& at(std::size_t i) const;
  std::span<const Block> blocks() const noexcept { return blocks_; }

  /// Index of the generator whose support contains `position`, if any.
  std::optional<std::size_t> owner(std::size_t position) const noexcept {
    if (position >= owner_.size() || owner_[position] < 0) return std::nullopt;
    return static_cast<std::size_t>(owner_[position]);
  }

  /// The first `count` generators.
  BlockSequence prefix(std::size_t count) const;
  /// All but the first `count` generators.
  BlockSequence drop(std::size_t count) const;

  friend bool operator==(const BlockSequence& a, const BlockSequence& b) {
    return a.level_ == b.level_ && a.blocks_ == b.blocks_;
  }

 private:
  int level_;
  std::vector<Block> blocks_;
  std::vector<int> owner_;
};

/// One summand T^exponent(p_index) of a span element.
struct Term {
  std::size_t index = 0;
  int exponent = 0;

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Membership witness: generator indices (strictly increasing) with tetris
/// exponents in 0..k-1. Unstarred witnesses have minimum exponent 0.
struct Combination {
  std::vector<Term> terms;
  bool starred = false;

  /// Throws InvalidArgument unless the invariants above hold at `level`.
  void validate(int level) const;

  /// Exponent used for generator `index`, if it is a summand.
  std::optional<int> exponent_of(std::size_t index) const noexcept;

  /// Output order: by index list, then by exponent list.
  friend std::strong_ordering operator<=>(const Combination& a,
                                          const Combination& b) noexcept;
  friend bool operator==(const Combination& a, const Combination& b) noexcept {
    return a.terms == b.terms && a.starred == b.starred;
  }
};

/// F over a set of blocks: the largest last-full-position, or Bottom
/// (nullopt) for the empty set.
struct HorizonValuation {
  std::optional<std::size_t> value;
  std::size_t horizon = 0;
  std::size_t element_count = 0;

  bool is_bottom() const noexcept { return !value.has_value(); }
};

/// Bottom is the neutral element; otherwise the larger value.
std::optional<std::size_t> join(std::optional<std::size_t> a,
                                std::optional<std::size_t> b) noexcept;

/// "bottom" or the decimal value.
std::string to_string(std::optional<std::size_t> value);

struct EnumerationLimits {
  /// Maximum log2 of the search space (k+1)^N.
  unsigned cap_bits = 24;
};

/// Throws EnumerationCapExceeded when (level+1)^generators > 2^cap_bits.
void check_enumeration_cap(int level, std::size_t generators,
                           const EnumerationLimits& limits);

struct SpanElement {
  Subblock value;
  Combination witness;
};

struct SpanEnumeration {
  /// Distinct elements, ordered by witness.
  std::vector<SpanElement> elements;
  /// Starred spans contain the empty subblock (T^k of anything); it is kept
  /// out of `elements` and flagged here.
  bool contains_empty = false;
};

struct CommonElement {
  Block value;
  Combination in_first;
  Combination in_second;
};

/// Sum of T^{j}(p_n) over the terms. Throws IndexOutOfRange.
Subblock evaluate(const BlockSequence& generators, const Combination& c);

/// All elements of the span, or of the starred span when `starred`.
SpanEnumeration enumerate_span(const BlockSequence& generators, bool starred,
                               const EnumerationLimits& limits = {});

/// Decides membership of `t` and returns its unique witness. The empty
/// subblock is never reported as a member; see SpanEnumeration.
std::optional<Combination> is_member(const Subblock& t,
                                     const BlockSequence& generators,
                                     bool starred);

/// Elements of span(first) that also lie in span(second), with both
/// witnesses, ordered by the first witness. Enumerates `first`.
std::vector<CommonElement> intersect_spans(const BlockSequence& first,
                                           const BlockSequence& second,
                                           const EnumerationLimits& limits = {});

/// F(X) over a set of blocks. Throws NotABlock for subblock inputs.
HorizonValuation valuation(std::span<const Block> blocks,
                           std::size_t horizon = 0);

HorizonValuation valuation(std::span<const CommonElement> elements,
                           std::size_t horizon = 0);

/// "n0^j0 + n1^j1 + ...".
std::string to_string(const Combination& c);

/// Parses the rendering of `to_string(Combination)`. The result is starred
/// when `starred` is set; otherwise its minimum exponent must be 0.
Combination parse_combination(std::string_view text, int level, bool starred);

/// Sequence file: "k=<K>" then one block body per line.
std::string to_text(const BlockSequence& sequence);
BlockSequence parse_sequence(std::string_view text);
BlockSequence load_sequence(const std::string& path);

}  // namespace fink
