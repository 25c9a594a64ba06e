#include "fink/block.hpp"

#include <algorithm>

#include "fink/error.hpp"
#include "text.hpp"

namespace fink {
namespace {

void check_level(int level) {
  if (level < 1 || level > kMaxLevel) {
    throw Error(ErrorCode::invalid_argument,
                "level " + std::to_string(level) + " outside 1.." +
                    std::to_string(kMaxLevel));
  }
}

}  // namespace

Subblock::Subblock(int level, std::vector<std::uint8_t> values)
    : level_(level), values_(std::move(values)) {
  check_level(level_);
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (values_[n] > level_) {
      throw Error(ErrorCode::invalid_argument,
                  "value " + std::to_string(values_[n]) + " at position " +
                      std::to_string(n) + " exceeds level " +
                      std::to_string(level_));
    }
  }
  normalise();
}

Subblock::Subblock(int level, std::vector<std::uint8_t> values, bool)
    : level_(level), values_(std::move(values)) {
  normalise();
}

void Subblock::normalise() {
  while (!values_.empty() && values_.back() == 0) values_.pop_back();
  first_ = 0;
  while (first_ < values_.size() && values_[first_] == 0) ++first_;
}

Subblock Subblock::empty(int level) { return Subblock(level, {}); }

Subblock Subblock::from_pairs(
    int level, const std::vector<std::pair<std::size_t, int>>& entries) {
  check_level(level);
  std::vector<std::uint8_t> values;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [position, value] = entries[i];
    if (i > 0 && position <= entries[i - 1].first) {
      throw Error(ErrorCode::invalid_argument,
                  "positions must be strictly increasing");
    }
    if (position > kMaxPosition) {
      throw Error(ErrorCode::invalid_argument,
                  "position " + std::to_string(position) + " exceeds " +
                      std::to_string(kMaxPosition));
    }
    if (value < 1 || value > level) {
      throw Error(ErrorCode::invalid_argument,
                  "value " + std::to_string(value) + " outside 1.." +
                      std::to_string(level));
    }
    values.resize(position + 1, 0);
    values[position] = static_cast<std::uint8_t>(value);
  }
  return Subblock(level, std::move(values), true);
}

bool Subblock::is_block() const noexcept {
  return std::find(values_.begin() + static_cast<std::ptrdiff_t>(first_),
                   values_.end(), level_) != values_.end();
}

std::size_t Subblock::min_support() const {
  if (values_.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty subblock has no support");
  }
  return first_;
}

std::size_t Subblock::max_support() const {
  if (values_.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty subblock has no support");
  }
  return values_.size() - 1;
}

std::vector<std::size_t> Subblock::support() const {
  std::vector<std::size_t> positions;
  for (auto n = first_; n < values_.size(); ++n) {
    if (values_[n] != 0) positions.push_back(n);
  }
  return positions;
}

Subblock Subblock::restrict_to(std::size_t first, std::size_t last) const {
  std::vector<std::uint8_t> values(values_);
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (n < first || n > last) values[n] = 0;
  }
  return Subblock(level_, std::move(values), true);
}

std::strong_ordering operator<=>(const Subblock& a,
                                 const Subblock& b) noexcept {
  if (auto c = a.level_ <=> b.level_; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end());
}

void require_block(const Subblock& p, std::string_view context) {
  if (!p.is_block()) {
    throw Error(ErrorCode::not_a_block,
                std::string(context) + ": " + to_literal(p) +
                    " does not attain its level");
  }
}

void require_same_level(const Subblock& p, const Subblock& q) {
  if (p.level() != q.level()) {
    throw Error(ErrorCode::mismatched_level,
                "levels " + std::to_string(p.level()) + " and " +
                    std::to_string(q.level()) + " differ");
  }
}

Subblock tetris(const Subblock& p, int times) {
  if (times < 0) {
    throw Error(ErrorCode::invalid_argument, "negative tetris exponent");
  }
  if (times == 0) return p;
  std::vector<std::uint8_t> values(p.values_);
  for (auto& v : values) {
    v = v > times ? static_cast<std::uint8_t>(v - times) : 0;
  }
  return Subblock(p.level_, std::move(values), true);
}

Subblock add(const Subblock& p, const Subblock& q) {
  require_same_level(p, q);
  const auto& longer = p.values_.size() >= q.values_.size() ? p : q;
  const auto& shorter = p.values_.size() >= q.values_.size() ? q : p;
  std::vector<std::uint8_t> values(longer.values_);
  for (std::size_t n = 0; n < shorter.values_.size(); ++n) {
    if (shorter.values_[n] == 0) continue;
    if (values[n] != 0) {
      throw Error(ErrorCode::overlapping_support,
                  "supports of " + to_literal(p) + " and " + to_literal(q) +
                      " share position " + std::to_string(n));
    }
    values[n] = shorter.values_[n];
  }
  return Subblock(p.level_, std::move(values), true);
}

Subblock star(const Subblock& p, const Subblock& q) {
  require_same_level(p, q);
  const auto& longer = p.values_.size() >= q.values_.size() ? p : q;
  const auto& shorter = p.values_.size() >= q.values_.size() ? q : p;
  std::vector<std::uint8_t> values(longer.values_);
  for (std::size_t n = 0; n < shorter.values_.size(); ++n) {
    values[n] = std::max(values[n], shorter.values_[n]);
  }
  return Subblock(p.level_, std::move(values), true);
}

std::size_t last_full_position(const Subblock& p) {
  require_block(p, "last_full_position");
  const auto values = p.values();
  for (std::size_t n = values.size(); n-- > 0;) {
    if (values[n] == p.level()) return n;
  }
  return 0;  // unreachable after require_block
}

bool precedes(const Subblock& p, const Subblock& q) noexcept {
  if (p.is_empty() || q.is_empty()) return true;
  return p.max_support() < q.min_support();
}

bool supports_intersect(const Subblock& p, const Subblock& q) noexcept {
  const auto a = p.values();
  const auto b = q.values();
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0 && b[i] != 0) return true;
  }
  return false;
}

std::string to_body(const Subblock& p) {
  if (p.is_empty()) return "-";
  std::string out;
  const auto values = p.values();
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (values[n] == 0) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(n);
    out += ':';
    out += std::to_string(values[n]);
  }
  return out;
}

std::string to_literal(const Subblock& p) {
  return "k=" + std::to_string(p.level()) + "|" + to_body(p);
}

Subblock parse_block_body(int level, std::string_view body, std::size_t line,
                          std::size_t column_offset) {
  const auto column = [&](std::size_t offset) {
    return column_offset + offset + 1;
  };
  if (body == "-") return Subblock::empty(level);
  if (body.empty()) {
    throw ParseError("empty block body (use '-' for the empty subblock)", line,
                     column(0));
  }
  std::vector<std::pair<std::size_t, int>> entries;
  for (const auto& piece : detail::split(body, ',')) {
    const auto colon = piece.text.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected '<pos>:<val>'", line, column(piece.offset));
    }
    const auto position = detail::parse_unsigned(
        piece.text.substr(0, colon), line, column(piece.offset), "position");
    if (position > kMaxPosition) {
      throw ParseError("position exceeds " + std::to_string(kMaxPosition),
                       line, column(piece.offset));
    }
    const auto value_column = column(piece.offset + colon + 1);
    const auto value = detail::parse_unsigned(piece.text.substr(colon + 1),
                                              line, value_column, "value");
    if (value < 1 || value > static_cast<std::size_t>(level)) {
      throw ParseError("value must be in 1.." + std::to_string(level), line,
                       value_column);
    }
    if (!entries.empty() && position <= entries.back().first) {
      throw ParseError("positions must be strictly increasing", line,
                       column(piece.offset));
    }
    entries.emplace_back(position, static_cast<int>(value));
  }
  return Subblock::from_pairs(level, entries);
}

Subblock parse_block(std::string_view literal) {
  const auto bar = literal.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError("expected 'k=<K>|<body>'", 1, literal.size() + 1);
  }
  const int level = detail::parse_level_field(literal.substr(0, bar), 1, 1);
  return parse_block_body(level, literal.substr(bar + 1), 1, bar + 1);
}

}  // namespace fink
