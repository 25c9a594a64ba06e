#include "fink/span.hpp"

#include <algorithm>
#include <limits>

#include "fink/error.hpp"
#include "text.hpp"

namespace fink {

BlockSequence::BlockSequence(int level, std::vector<Block> blocks)
    : level_(level), blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& block = blocks_[i];
    if (block.level() != level_) {
      throw Error(ErrorCode::mismatched_level,
                  "generator " + std::to_string(i) + " has level " +
                      std::to_string(block.level()) + ", sequence has " +
                      std::to_string(level_));
    }
    if (!block.is_block()) {
      throw Error(ErrorCode::invalid_sequence,
                  "generator " + std::to_string(i) + " (" + to_literal(block) +
                      ") does not attain the level");
    }
    if (i > 0 && !precedes(blocks_[i - 1], block)) {
      throw Error(ErrorCode::invalid_sequence,
                  "generator " + std::to_string(i) + " (" + to_literal(block) +
                      ") does not lie strictly after generator " +
                      std::to_string(i - 1));
    }
  }
  if (!blocks_.empty()) {
    owner_.assign(blocks_.back().max_support() + 1, -1);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (const auto position : blocks_[i].support()) {
        owner_[position] = static_cast<int>(i);
      }
    }
  }
}

const Block& BlockSequence::at(std::size_t i) const {
  if (i >= blocks_.size()) {
    throw Error(ErrorCode::index_out_of_range,
                "generator index " + std::to_string(i) + " >= length " +
                    std::to_string(blocks_.size()));
  }
  return blocks_[i];
}

BlockSequence BlockSequence::prefix(std::size_t count) const {
  count = std::min(count, blocks_.size());
  return BlockSequence(level_, {blocks_.begin(),
                                blocks_.begin() +
                                    static_cast<std::ptrdiff_t>(count)});
}

BlockSequence BlockSequence::drop(std::size_t count) const {
  count = std::min(count, blocks_.size());
  return BlockSequence(
      level_,
      {blocks_.begin() + static_cast<std::ptrdiff_t>(count), blocks_.end()});
}

void Combination::validate(int level) const {
  if (terms.empty()) {
    throw Error(ErrorCode::invalid_argument, "combination has no terms");
  }
  int min_exponent = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && terms[i].index <= terms[i - 1].index) {
      throw Error(ErrorCode::invalid_argument,
                  "combination indices must be strictly increasing");
    }
    if (terms[i].exponent < 0 || terms[i].exponent >= level) {
      throw Error(ErrorCode::invalid_argument,
                  "exponent " + std::to_string(terms[i].exponent) +
                      " outside 0.." + std::to_string(level - 1));
    }
    min_exponent = std::min(min_exponent, terms[i].exponent);
  }
  if (!starred && min_exponent != 0) {
    throw Error(ErrorCode::invalid_argument,
                "unstarred combination needs a term with exponent 0");
  }
}

std::optional<int> Combination::exponent_of(std::size_t index) const noexcept {
  const auto it = std::lower_bound(
      terms.begin(), terms.end(), index,
      [](const Term& term, std::size_t i) { return term.index < i; });
  if (it == terms.end() || it->index != index) return std::nullopt;
  return it->exponent;
}

std::strong_ordering operator<=>(const Combination& a,
                                 const Combination& b) noexcept {
  const auto by_index = std::lexicographical_compare_three_way(
      a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
      [](const Term& x, const Term& y) { return x.index <=> y.index; });
  if (by_index != 0) return by_index;
  const auto by_exponent = std::lexicographical_compare_three_way(
      a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
      [](const Term& x, const Term& y) { return x.exponent <=> y.exponent; });
  if (by_exponent != 0) return by_exponent;
  return a.starred <=> b.starred;
}

std::optional<std::size_t> join(std::optional<std::size_t> a,
                                std::optional<std::size_t> b) noexcept {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

std::string to_string(std::optional<std::size_t> value) {
  return value ? std::to_string(*value) : "bottom";
}

void check_enumeration_cap(int level, std::size_t generators,
                           const EnumerationLimits& limits) {
  const unsigned bits = std::min(limits.cap_bits, 62u);
  const std::uint64_t cap = std::uint64_t{1} << bits;
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < generators; ++i) {
    space *= static_cast<std::uint64_t>(level) + 1;
    if (space > cap) {
      throw Error(ErrorCode::enumeration_cap_exceeded,
                  std::to_string(generators) + " generators at level " +
                      std::to_string(level) + " exceed the search cap of 2^" +
                      std::to_string(bits));
    }
  }
}

Subblock evaluate(const BlockSequence& generators, const Combination& c) {
  c.validate(generators.level());
  auto sum = Subblock::empty(generators.level());
  for (const auto& term : c.terms) {
    sum = add(sum, tetris(generators.at(term.index), term.exponent));
  }
  return sum;
}

namespace {

// Depth-first walk over {unused, 0, ..., k-1} per generator. Supports are
// disjoint, so each choice writes its own positions of the shared buffer.
//
// With a filter sequence, branches are cut as soon as a finished prefix of
// the buffer cannot be matched by the filter's generators. Positions before
// the next generator's support never change again, so a filter generator
// lying entirely inside that prefix is either unused or fixed for good.
class SpanWalker {
 public:
  SpanWalker(const BlockSequence& generators, bool starred,
             const BlockSequence* filter = nullptr)
      : generators_(generators),
        starred_(starred),
        level_(generators.level()),
        filter_(filter) {
    if (!generators.empty()) {
      buffer_.assign(generators[generators.size() - 1].max_support() + 1, 0);
    }
  }

  SpanEnumeration run() {
    walk(0, 0);
    std::sort(out_.elements.begin(), out_.elements.end(),
              [](const SpanElement& a, const SpanElement& b) {
                return a.witness < b.witness;
              });
    out_.contains_empty = starred_ && !generators_.empty();
    return std::move(out_);
  }

 private:
  void walk(std::size_t index, std::size_t checked) {
    if (index == generators_.size()) {
      if (terms_.empty()) return;
      if (!starred_ && zero_terms_ == 0) return;
      out_.elements.push_back(
          {Subblock(level_, buffer_), Combination{terms_, starred_}});
      return;
    }
    const auto settled = index + 1 < generators_.size()
                             ? generators_[index + 1].min_support()
                             : buffer_.size();
    const auto descend = [&] {
      if (filter_ == nullptr || matches(checked, settled)) {
        walk(index + 1, settled);
      }
    };
    descend();
    const auto& generator = generators_[index];
    const auto values = generator.values();
    const auto first = generator.min_support();
    for (int exponent = 0; exponent < level_; ++exponent) {
      for (std::size_t n = first; n < values.size(); ++n) {
        buffer_[n] = values[n] > exponent
                         ? static_cast<std::uint8_t>(values[n] - exponent)
                         : 0;
      }
      terms_.push_back({index, exponent});
      if (exponent == 0) ++zero_terms_;
      descend();
      if (exponent == 0) --zero_terms_;
      terms_.pop_back();
    }
    for (std::size_t n = first; n < values.size(); ++n) buffer_[n] = 0;
  }

  // Checks the buffer on [begin, end) against the filter generators.
  bool matches(std::size_t begin, std::size_t end) const {
    for (auto m = begin; m < end; ++m) {
      const auto owner = filter_->owner(m);
      if (!owner) {
        if (buffer_[m] != 0) return false;
        continue;
      }
      const auto& g = (*filter_)[*owner];
      if (m == g.max_support() && !matches_generator(g)) return false;
    }
    return true;
  }

  // The buffer over supp(g) is zero or equals T^e(g) for some e < k.
  bool matches_generator(const Block& g) const {
    const auto values = g.values();
    std::optional<int> exponent;
    for (auto m = g.min_support(); m < values.size(); ++m) {
      if (buffer_[m] != 0) {
        exponent = values[m] - buffer_[m];
        break;
      }
    }
    if (!exponent) return true;
    if (*exponent < 0 || *exponent >= level_) return false;
    for (auto m = g.min_support(); m < values.size(); ++m) {
      const int expected = std::max(values[m] - *exponent, 0);
      if (buffer_[m] != expected) return false;
    }
    return true;
  }

  const BlockSequence& generators_;
  bool starred_;
  int level_;
  const BlockSequence* filter_;
  std::vector<std::uint8_t> buffer_;
  std::vector<Term> terms_;
  std::size_t zero_terms_ = 0;
  SpanEnumeration out_;
};

}  // namespace

SpanEnumeration enumerate_span(const BlockSequence& generators, bool starred,
                               const EnumerationLimits& limits) {
  check_enumeration_cap(generators.level(), generators.size(), limits);
  return SpanWalker(generators, starred).run();
}

std::optional<Combination> is_member(const Subblock& t,
                                     const BlockSequence& generators,
                                     bool starred) {
  if (t.level() != generators.level()) {
    throw Error(ErrorCode::mismatched_level,
                "subblock level " + std::to_string(t.level()) +
                    " differs from sequence level " +
                    std::to_string(generators.level()));
  }
  if (t.is_empty()) return std::nullopt;

  // Owners appear in increasing order as positions increase, so the terms
  // come out sorted by generator index.
  std::vector<Term> terms;
  const auto values = t.values();
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (values[m] == 0) continue;
    const auto owner = generators.owner(m);
    if (!owner) return std::nullopt;
    const int exponent = generators[*owner].at(m) - values[m];
    if (exponent < 0) return std::nullopt;
    if (terms.empty() || terms.back().index != *owner) {
      terms.push_back({*owner, exponent});
    } else if (terms.back().exponent != exponent) {
      return std::nullopt;
    }
  }

  int min_exponent = std::numeric_limits<int>::max();
  for (const auto& term : terms) {
    if (term.exponent > generators.level() - 1) return std::nullopt;
    const auto& generator = generators[term.index];
    // Positions of the generator missing from t must be annihilated.
    const auto generator_values = generator.values();
    for (auto m = generator.min_support(); m < generator_values.size(); ++m) {
      if (t.at(m) == 0 && generator_values[m] > term.exponent) {
        return std::nullopt;
      }
    }
    min_exponent = std::min(min_exponent, term.exponent);
  }
  if (!starred && min_exponent != 0) return std::nullopt;
  return Combination{std::move(terms), starred};
}

std::vector<CommonElement> intersect_spans(const BlockSequence& first,
                                           const BlockSequence& second,
                                           const EnumerationLimits& limits) {
  if (first.level() != second.level()) {
    throw Error(ErrorCode::mismatched_level,
                "sequences have levels " + std::to_string(first.level()) +
                    " and " + std::to_string(second.level()));
  }
  check_enumeration_cap(first.level(), first.size(), limits);
  std::vector<CommonElement> common;
  auto span = SpanWalker(first, false, &second).run();
  for (auto& element : span.elements) {
    if (auto other = is_member(element.value, second, false)) {
      common.push_back({std::move(element.value), std::move(element.witness),
                        std::move(*other)});
    }
  }
  return common;
}

HorizonValuation valuation(std::span<const Block> blocks,
                           std::size_t horizon) {
  HorizonValuation result{std::nullopt, horizon, blocks.size()};
  for (const auto& block : blocks) {
    result.value = join(result.value, last_full_position(block));
  }
  return result;
}

HorizonValuation valuation(std::span<const CommonElement> elements,
                           std::size_t horizon) {
  HorizonValuation result{std::nullopt, horizon, elements.size()};
  for (const auto& element : elements) {
    result.value = join(result.value, last_full_position(element.value));
  }
  return result;
}

std::string to_string(const Combination& c) {
  std::string out;
  for (const auto& term : c.terms) {
    if (!out.empty()) out += " + ";
    out += std::to_string(term.index);
    out += '^';
    out += std::to_string(term.exponent);
  }
  return out;
}

Combination parse_combination(std::string_view text, int level,
                              bool starred) {
  Combination c;
  c.starred = starred;
  for (const auto& piece : detail::split(text, '+')) {
    const auto term = detail::trim(piece.text);
    const auto lead = piece.text.find_first_not_of(" \t");
    const auto column =
        piece.offset + (lead == std::string_view::npos ? 0 : lead) + 1;
    const auto caret = term.find('^');
    if (caret == std::string_view::npos) {
      throw ParseError("expected '<index>^<exponent>'", 1, column);
    }
    const auto index =
        detail::parse_unsigned(term.substr(0, caret), 1, column, "index");
    const auto exponent = detail::parse_unsigned(
        term.substr(caret + 1), 1, column + caret + 1, "exponent");
    if (exponent >= static_cast<std::size_t>(level)) {
      throw ParseError("exponent must be below the level", 1,
                       column + caret + 1);
    }
    c.terms.push_back({index, static_cast<int>(exponent)});
  }
  try {
    c.validate(level);
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return c;
}

std::string to_text(const BlockSequence& sequence) {
  std::string out = "k=" + std::to_string(sequence.level()) + "\n";
  for (const auto& block : sequence.blocks()) {
    out += to_body(block);
    out += '\n';
  }
  return out;
}

namespace {

BlockSequence parse_sequence_lines(const std::vector<std::string>& lines) {
  std::optional<int> level;
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line_number = i + 1;
    const auto text = detail::trim(lines[i]);
    if (text.empty() || text.front() == '#') continue;
    const auto column =
        static_cast<std::size_t>(text.data() - lines[i].data());
    if (!level) {
      level = detail::parse_level_field(text, line_number, column + 1);
      continue;
    }
    blocks.push_back(parse_block_body(*level, text, line_number, column));
  }
  if (!level) throw ParseError("missing 'k=<level>' header", 1, 1);
  return BlockSequence(*level, std::move(blocks));
}

}  // namespace

BlockSequence parse_sequence(std::string_view text) {
  std::vector<std::string> lines;
  for (const auto& piece : detail::split(text, '\n')) {
    std::string line(piece.text);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return parse_sequence_lines(lines);
}

BlockSequence load_sequence(const std::string& path) {
  return parse_sequence_lines(detail::read_lines(path));
}

}  // namespace fink
