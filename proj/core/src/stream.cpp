#include "fink/stream.hpp"

#include <map>

#include "fink/error.hpp"
#include "text.hpp"

namespace fink {
namespace {

Block shifted(const Block& block, std::size_t amount) {
  if (amount > kMaxPosition) {
    throw Error(ErrorCode::invalid_argument,
                "stream position beyond " + std::to_string(kMaxPosition));
  }
  std::vector<std::uint8_t> values(amount, 0);
  const auto source = block.values();
  values.insert(values.end(), source.begin(), source.end());
  return Block(block.level(), std::move(values));
}

Block single(int level, std::size_t position) {
  return Block::from_pairs(level, {{position, level}});
}

}  // namespace

std::string_view to_string(BuiltinFamily family) noexcept {
  switch (family) {
    case BuiltinFamily::example13_P: return "example13_P";
    case BuiltinFamily::example13_Q: return "example13_Q";
    case BuiltinFamily::evens: return "evens";
  }
  return "unknown";
}

std::optional<BuiltinFamily> builtin_from_name(std::string_view name) noexcept {
  for (auto family : {BuiltinFamily::example13_P, BuiltinFamily::example13_Q,
                      BuiltinFamily::evens}) {
    if (to_string(family) == name) return family;
  }
  return std::nullopt;
}

SequenceStream SequenceStream::explicit_list(BlockSequence blocks) {
  const int level = blocks.level();
  return SequenceStream(
      level, Explicit{std::make_shared<const BlockSequence>(std::move(blocks))});
}

SequenceStream SequenceStream::periodic(std::vector<Block> base,
                                        std::size_t shift) {
  if (base.empty()) {
    throw Error(ErrorCode::invalid_argument, "periodic base is empty");
  }
  const int level = base.front().level();
  BlockSequence checked(level, base);
  const auto width = base.back().max_support() - base.front().min_support();
  if (shift <= width) {
    throw Error(ErrorCode::invalid_argument,
                "shift " + std::to_string(shift) +
                    " must exceed the base support width " +
                    std::to_string(width));
  }
  return SequenceStream(
      level,
      Periodic{std::make_shared<const std::vector<Block>>(std::move(base)),
               shift});
}

SequenceStream SequenceStream::builtin(BuiltinFamily family, int level) {
  if (level < 1 || level > kMaxLevel) {
    throw Error(ErrorCode::invalid_argument,
                "level " + std::to_string(level) + " out of range");
  }
  return SequenceStream(level, Builtin{family});
}

std::optional<std::size_t> SequenceStream::length() const noexcept {
  if (const auto* list = std::get_if<Explicit>(&kind_)) {
    const auto size = list->blocks->size();
    return size > offset_ ? size - offset_ : 0;
  }
  return std::nullopt;
}

Block SequenceStream::raw_block(std::size_t n) const {
  if (const auto* list = std::get_if<Explicit>(&kind_)) {
    if (n >= list->blocks->size()) {
      throw Error(ErrorCode::past_end,
                  "explicit stream has " +
                      std::to_string(list->blocks->size() - offset_) +
                      " blocks; requested index " +
                      std::to_string(n - offset_));
    }
    return (*list->blocks)[n];
  }
  if (const auto* cycle = std::get_if<Periodic>(&kind_)) {
    const auto& base = *cycle->base;
    const auto period = n / base.size();
    if (period > kMaxPosition / cycle->shift) {
      throw Error(ErrorCode::invalid_argument,
                  "stream position beyond " + std::to_string(kMaxPosition));
    }
    return shifted(base[n % base.size()], period * cycle->shift);
  }
  switch (std::get<Builtin>(kind_).family) {
    case BuiltinFamily::example13_P:
      return single(level_, n == 0 ? 0 : 2 * n - 1);
    case BuiltinFamily::example13_Q:
      if (n == 0) return single(level_, 0);
      return Block::from_pairs(level_, {{2 * n - 1, level_}, {2 * n, 1}});
    case BuiltinFamily::evens:
      return single(level_, 2 * n);
  }
  throw Error(ErrorCode::invalid_argument, "unknown builtin family");
}

Block SequenceStream::nth_block(std::size_t n) const {
  return raw_block(offset_ + n);
}

SequenceStream SequenceStream::tail(std::size_t n) const {
  SequenceStream copy = *this;
  copy.offset_ += n;
  return copy;
}

BlockSequence SequenceStream::truncate(std::size_t horizon) const {
  std::vector<Block> blocks;
  const auto limit = length();
  for (std::size_t n = 0; !limit || n < *limit; ++n) {
    auto block = nth_block(n);
    // Supports increase along the stream, so nothing later fits either.
    if (block.max_support() > horizon) break;
    blocks.push_back(std::move(block));
  }
  return BlockSequence(level_, std::move(blocks));
}

std::string SequenceStream::describe() const {
  std::string out;
  if (const auto* list = std::get_if<Explicit>(&kind_)) {
    out = "kind=explicit k=" + std::to_string(level_) +
          " length=" + std::to_string(list->blocks->size());
  } else if (const auto* cycle = std::get_if<Periodic>(&kind_)) {
    out = "kind=periodic shift=" + std::to_string(cycle->shift) +
          " k=" + std::to_string(level_) + " base=";
    for (std::size_t i = 0; i < cycle->base->size(); ++i) {
      if (i > 0) out += ';';
      out += to_body((*cycle->base)[i]);
    }
  } else {
    out = "kind=builtin name=" +
          std::string(to_string(std::get<Builtin>(kind_).family)) +
          " k=" + std::to_string(level_);
  }
  if (offset_ > 0) out += " tail=" + std::to_string(offset_);
  return out;
}

SequenceStream parse_stream_spec(std::string_view spec,
                                 std::optional<int> default_level) {
  struct Field {
    std::string_view value;
    std::size_t column;
  };
  std::map<std::string_view, Field, std::less<>> fields;
  std::size_t position = 0;
  while (position < spec.size()) {
    const auto start = spec.find_first_not_of(" \t", position);
    if (start == std::string_view::npos) break;
    auto end = spec.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = spec.size();
    const auto token = spec.substr(start, end - start);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected '<key>=<value>'", 1, start + 1);
    }
    const auto key = token.substr(0, eq);
    if (!fields.emplace(key, Field{token.substr(eq + 1), start + eq + 2})
             .second) {
      throw ParseError("duplicate key '" + std::string(key) + "'", 1,
                       start + 1);
    }
    position = end;
  }

  const auto require = [&](std::string_view key) -> const Field& {
    const auto it = fields.find(key);
    if (it == fields.end()) {
      throw ParseError("missing '" + std::string(key) + "='", 1,
                       spec.size() + 1);
    }
    return it->second;
  };
  const auto known = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& [key, field] : fields) {
      bool ok = false;
      for (auto allowed : keys) ok = ok || key == allowed;
      if (!ok) {
        throw ParseError("unknown key '" + std::string(key) + "'", 1,
                         field.column - key.size() - 1);
      }
    }
  };

  std::optional<int> spec_level;
  if (const auto it = fields.find("k"); it != fields.end()) {
    spec_level = detail::parse_level_field(
        "k=" + std::string(it->second.value), 1, it->second.column - 2);
  }
  const auto level = spec_level ? spec_level : default_level;

  const auto& kind = require("kind");
  if (kind.value == "builtin") {
    known({"kind", "name", "k"});
    const auto& name = require("name");
    const auto family = builtin_from_name(name.value);
    if (!family) {
      throw ParseError("unknown builtin '" + std::string(name.value) + "'", 1,
                       name.column);
    }
    if (!level) throw ParseError("missing 'k='", 1, spec.size() + 1);
    return SequenceStream::builtin(*family, *level);
  }
  if (kind.value == "periodic") {
    known({"kind", "shift", "k", "base"});
    const auto& shift_field = require("shift");
    const auto shift = detail::parse_unsigned(shift_field.value, 1,
                                              shift_field.column, "shift");
    if (shift == 0) {
      throw ParseError("shift must be positive", 1, shift_field.column);
    }
    if (!level) throw ParseError("missing 'k='", 1, spec.size() + 1);
    const auto& base_field = require("base");
    std::vector<Block> base;
    for (const auto& piece : detail::split(base_field.value, ';')) {
      base.push_back(parse_block_body(*level, piece.text, 1,
                                      base_field.column - 1 + piece.offset));
    }
    return SequenceStream::periodic(std::move(base), shift);
  }
  if (kind.value == "explicit") {
    known({"kind", "file", "k"});
    auto blocks = load_sequence(std::string(require("file").value));
    if (spec_level && *spec_level != blocks.level()) {
      throw Error(ErrorCode::mismatched_level,
                  "k=" + std::to_string(*spec_level) + " but the file declares k=" +
                      std::to_string(blocks.level()));
    }
    return SequenceStream::explicit_list(std::move(blocks));
  }
  throw ParseError("unknown kind '" + std::string(kind.value) + "'", 1,
                   kind.column);
}

}  // namespace fink
