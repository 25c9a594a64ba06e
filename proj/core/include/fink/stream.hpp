#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fink/block.hpp"
#include "fink/span.hpp"

namespace fink {

/// Named infinite block sequences shipped with the library.
enum class BuiltinFamily {
  /// {0:k}, then {2n+1:k} for n = 0, 1, ...
  example13_P,
  /// {0:k}, then {2n+1:k, 2n+2:1} for n = 0, 1, ...
  example13_Q,
  /// {2n:k} for n = 0, 1, ...
  evens,
};

std::string_view to_string(BuiltinFamily family) noexcept;
std::optional<BuiltinFamily> builtin_from_name(std::string_view name) noexcept;

/// A lazily produced block sequence. Streams are immutable values; `tail`
/// returns a new stream sharing the same description.
class SequenceStream {
 public:
  /// Finite stream over an explicit list; reading past the end throws PastEnd.
  static SequenceStream explicit_list(BlockSequence blocks);

  /// Block n is base[n % B] shifted right by shift * (n / B). Throws
  /// InvalidArgument unless the base is a valid block sequence and `shift`
  /// exceeds its support width (last max minus first min).
  static SequenceStream periodic(std::vector<Block> base, std::size_t shift);

  static SequenceStream builtin(BuiltinFamily family, int level);

  int level() const noexcept { return level_; }

  /// Number of blocks for explicit streams, nullopt for infinite ones.
  std::optional<std::size_t> length() const noexcept;

  Block nth_block(std::size_t n) const;

  /// Drops the first `n` blocks.
  SequenceStream tail(std::size_t n) const;

  /// All blocks whose support lies within [0, horizon], in order.
  BlockSequence truncate(std::size_t horizon) const;

  /// Stream spec rendering, e.g. "kind=builtin name=evens k=2".
  std::string describe() const;

 private:
  struct Explicit {
    std::shared_ptr<const BlockSequence> blocks;
  };
  struct Periodic {
    std::shared_ptr<const std::vector<Block>> base;
    std::size_t shift;
  };
  struct Builtin {
    BuiltinFamily family;
  };

  SequenceStream(int level, std::variant<Explicit, Periodic, Builtin> kind)
      : level_(level), kind_(std::move(kind)) {}

  Block raw_block(std::size_t n) const;

  int level_;
  std::variant<Explicit, Periodic, Builtin> kind_;
  std::size_t offset_ = 0;
};

/// Parses a stream spec document:
///   kind=periodic shift=2 k=2 base=0:2[;<body>...]
///   kind=builtin name=example13_P k=2
///   kind=explicit file=<path>
/// `default_level` fills in a missing k= field.
SequenceStream parse_stream_spec(std::string_view spec,
                                 std::optional<int> default_level = {});

}  // namespace fink
