#include <gtest/gtest.h>

#include <set>

#include "fink/error.hpp"
#include "fink/span.hpp"
#include "support/errors.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace fink {
namespace {

using fixture::lit;
using testing::code_of;

Combination combo(std::vector<Term> terms, bool starred = false) {
  return Combination{std::move(terms), starred};
}

std::set<Subblock> values_of(const SpanEnumeration& span) {
  std::set<Subblock> out;
  for (const auto& element : span.elements) out.insert(element.value);
  return out;
}

TEST(BlockSequence, RejectsUnorderedOrOverlapping) {
  EXPECT_EQ(code_of([] {
              BlockSequence(2, {lit("k=2|1:2"), lit("k=2|0:2")});
            }),
            ErrorCode::invalid_sequence);
  EXPECT_EQ(code_of([] {
              BlockSequence(2, {lit("k=2|0:2,2:1"), lit("k=2|1:2")});
            }),
            ErrorCode::invalid_sequence);
  EXPECT_EQ(code_of([] { BlockSequence(2, {lit("k=2|1:1")}); }),
            ErrorCode::invalid_sequence);
  EXPECT_EQ(code_of([] { BlockSequence(2, {lit("k=3|1:3")}); }),
            ErrorCode::mismatched_level);
}

TEST(Evaluate, ReproducesS2) {
  const auto P = fixture::P_prefix(2);
  EXPECT_EQ(evaluate(P, combo({{0, 0}, {1, 1}, {2, 1}})),
            lit("k=2|0:2,1:1,3:1"));
  EXPECT_EQ(evaluate(P, combo({{0, 0}, {1, 1}, {2, 1}})), fixture::s(2));
}

TEST(Evaluate, SingleTerms) {
  const auto P = fixture::P_prefix(2);
  EXPECT_EQ(evaluate(P, combo({{0, 0}})), P[0]);
  EXPECT_EQ(evaluate(P, combo({{1, 1}}, true)), tetris(P[1], 1));
}

TEST(Evaluate, Errors) {
  const auto P = fixture::P_prefix(2);
  EXPECT_EQ(code_of([&] { evaluate(P, combo({{3, 0}})); }),
            ErrorCode::index_out_of_range);
  EXPECT_EQ(code_of([&] { evaluate(P, combo({{1, 1}})); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { evaluate(P, combo({{1, 0}, {0, 0}})); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { evaluate(P, combo({{0, 2}}, true)); }),
            ErrorCode::invalid_argument);
}

TEST(EnumerateSpan, SingleGenerator) {
  const BlockSequence P(2, {lit("k=2|0:2")});
  const auto span = enumerate_span(P, false);
  ASSERT_EQ(span.elements.size(), 1u);
  EXPECT_EQ(span.elements[0].value, lit("k=2|0:2"));
  EXPECT_FALSE(span.contains_empty);
}

TEST(EnumerateSpan, TwoGeneratorsUnstarred) {
  const auto P = fixture::P_prefix(1);
  const std::set<Subblock> expected{lit("k=2|0:2"), lit("k=2|1:2"),
                                    lit("k=2|0:2,1:2"), lit("k=2|0:2,1:1"),
                                    lit("k=2|0:1,1:2")};
  ASSERT_EQ(oracle::span(P, false), expected);
  EXPECT_EQ(values_of(enumerate_span(P, false)), expected);
}

TEST(EnumerateSpan, TwoGeneratorsStarred) {
  const auto P = fixture::P_prefix(1);
  auto expected = oracle::span(P, false);
  for (const char* extra : {"k=2|0:1,1:1", "k=2|0:1", "k=2|1:1"}) {
    expected.insert(lit(extra));
  }
  ASSERT_EQ(oracle::span(P, true), expected);
  const auto span = enumerate_span(P, true);
  EXPECT_EQ(values_of(span), expected);
  EXPECT_TRUE(span.contains_empty);
}

TEST(EnumerateSpan, OrderedByWitness) {
  const auto span = enumerate_span(fixture::P_prefix(2), false);
  for (std::size_t i = 1; i < span.elements.size(); ++i) {
    EXPECT_LT(span.elements[i - 1].witness, span.elements[i].witness);
  }
  EXPECT_EQ(to_string(span.elements.front().witness), "0^0");
}

TEST(EnumerateSpan, CapIsEnforced) {
  const auto P = fixture::P_prefix(15);  // 16 generators, 3^16 > 2^24
  EXPECT_EQ(code_of([&] { enumerate_span(P, false); }),
            ErrorCode::enumeration_cap_exceeded);
  EXPECT_EQ(code_of([&] { enumerate_span(P, false, {8}); }),
            ErrorCode::enumeration_cap_exceeded);
  EXPECT_NO_THROW(enumerate_span(fixture::P_prefix(4), false, {8}));
}

TEST(IsMember, S2HasTheExpectedWitness) {
  const auto witness = is_member(fixture::s(2), fixture::P_prefix(2), false);
  ASSERT_TRUE(witness);
  EXPECT_EQ(*witness, combo({{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_EQ(to_string(*witness), "0^0 + 1^1 + 2^1");
}

TEST(IsMember, TetrisedGeneratorIsOnlyStarred) {
  const auto P = fixture::P_prefix(1);
  EXPECT_FALSE(is_member(lit("k=2|1:1"), P, false));
  const auto starred = is_member(lit("k=2|1:1"), P, true);
  ASSERT_TRUE(starred);
  EXPECT_EQ(*starred, combo({{1, 1}}, true));
  EXPECT_TRUE(oracle::span(P, true).count(lit("k=2|1:1")));
}

TEST(IsMember, RejectsPartialCoverage) {
  const BlockSequence P(3, {lit("k=3|0:3,1:1,2:2"), lit("k=3|4:3")});
  EXPECT_FALSE(is_member(lit("k=3|0:3"), P, false));        // 2:2 survives
  EXPECT_TRUE(is_member(lit("k=3|0:2,2:1"), P, true));      // T^1, 1:1 gone
  EXPECT_FALSE(is_member(lit("k=3|0:2,1:1,2:1"), P, true)); // inconsistent j
  EXPECT_FALSE(is_member(lit("k=3|3:1"), P, true));         // unowned position
  EXPECT_FALSE(is_member(Subblock::empty(3), P, true));
}

TEST(IntersectSpans, ShortPrefixes) {
  const auto P = fixture::P_prefix(2);
  const auto Q = fixture::Q_prefix(2);
  const std::set<Subblock> expected{fixture::r(), fixture::s(1),
                                    lit("k=2|0:2,3:1"), fixture::s(2)};
  ASSERT_EQ(oracle::intersection(P, Q), expected);
  const auto common = intersect_spans(P, Q);
  std::set<Subblock> got;
  for (const auto& element : common) {
    got.insert(element.value);
    EXPECT_EQ(evaluate(P, element.in_first), element.value);
    EXPECT_EQ(evaluate(Q, element.in_second), element.value);
  }
  EXPECT_EQ(got, expected);
}

TEST(IntersectSpans, SelfIntersectionPairsIdenticalWitnesses) {
  const auto P = fixture::Q_prefix(3);
  const auto common = intersect_spans(P, P);
  EXPECT_EQ(common.size(), enumerate_span(P, false).elements.size());
  for (const auto& element : common) {
    EXPECT_EQ(element.in_first, element.in_second);
  }
}

TEST(IntersectSpans, DisjointSupports) {
  EXPECT_TRUE(intersect_spans(BlockSequence(2, {lit("k=2|0:2")}),
                              BlockSequence(2, {lit("k=2|1:2")}))
                  .empty());
}

TEST(Valuation, Examples) {
  const std::vector<Block> small{fixture::r(), fixture::s(1), fixture::s(2)};
  const auto F = valuation(small, 9);
  ASSERT_TRUE(F.value);
  EXPECT_EQ(*F.value, 0u);
  EXPECT_EQ(F.element_count, 3u);
  EXPECT_EQ(F.horizon, 9u);

  EXPECT_TRUE(valuation(std::vector<Block>{}).is_bottom());
  EXPECT_EQ(valuation(std::vector<Block>{lit("k=2|3:2")}).value, 3u);
  EXPECT_EQ(code_of([] {
              valuation(std::vector<Block>{lit("k=2|3:1")});
            }),
            ErrorCode::not_a_block);
}

TEST(Valuation, JoinTreatsBottomAsNeutral) {
  EXPECT_EQ(join(std::nullopt, std::nullopt), std::nullopt);
  EXPECT_EQ(join(std::nullopt, 4u), 4u);
  EXPECT_EQ(join(7u, std::nullopt), 7u);
  EXPECT_EQ(join(2u, 5u), 5u);
  EXPECT_EQ(to_string(std::optional<std::size_t>{}), "bottom");
}

TEST(Combination, ParseAndRender) {
  const auto c = parse_combination("0^0 + 1^1 + 2^1", 2, false);
  EXPECT_EQ(c, combo({{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_EQ(to_string(c), "0^0 + 1^1 + 2^1");
  EXPECT_THROW(parse_combination("1^1", 2, false), ParseError);
  EXPECT_NO_THROW(parse_combination("1^1", 2, true));
  EXPECT_THROW(parse_combination("0^2", 2, true), ParseError);
  EXPECT_THROW(parse_combination("1^0 + 0^0", 2, false), ParseError);
  EXPECT_THROW(parse_combination("0", 2, false), ParseError);
}

TEST(SequenceText, RoundTripAndErrors) {
  const auto P = fixture::Q_prefix(3);
  EXPECT_EQ(to_text(P), "k=2\n0:2\n1:2,2:1\n3:2,4:1\n5:2,6:1\n");
  EXPECT_EQ(parse_sequence(to_text(P)), P);
  EXPECT_EQ(parse_sequence("# comment\nk=3\n\n0:3\n"),
            BlockSequence(3, {lit("k=3|0:3")}));
  try {
    parse_sequence("k=2\n0:2\n2:2,3:9\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(parse_sequence("0:2\n"), ParseError);
  EXPECT_EQ(code_of([] { parse_sequence("k=2\n1:2\n0:2\n"); }),
            ErrorCode::invalid_sequence);
}

class SpanProperties : public ::testing::Test {
 protected:
  gen::Rng rng{7};
};

TEST_F(SpanProperties, EnumerationMatchesOracle) {
  for (int trial = 0; trial < 60; ++trial) {
    const int k = gen::uniform(rng, 1, 3);
    const auto P = gen::random_sequence(rng, k, 4, 10);
    for (const bool starred : {false, true}) {
      const auto span = enumerate_span(P, starred);
      ASSERT_EQ(values_of(span), oracle::span(P, starred));
      // Distinct witnesses never collide on a value.
      ASSERT_EQ(values_of(span).size(), span.elements.size());
    }
  }
}

TEST_F(SpanProperties, StarredSpanIsTetrisClosureOfSpan) {
  for (int trial = 0; trial < 60; ++trial) {
    const int k = gen::uniform(rng, 1, 3);
    const auto P = gen::random_sequence(rng, k, 4, 10);
    ASSERT_EQ(values_of(enumerate_span(P, true)),
              oracle::starred_span_literal(P));
  }
}

TEST_F(SpanProperties, MembershipAgreesWithEnumeration) {
  for (int trial = 0; trial < 60; ++trial) {
    const int k = gen::uniform(rng, 1, 3);
    const auto P = gen::random_sequence(rng, k, 5, 12);
    for (const bool starred : {false, true}) {
      const auto span = enumerate_span(P, starred);
      for (const auto& element : span.elements) {
        const auto witness = is_member(element.value, P, starred);
        ASSERT_TRUE(witness);
        ASSERT_EQ(*witness, element.witness);
        ASSERT_EQ(evaluate(P, *witness), element.value);
      }
      const auto members = values_of(span);
      for (int probe = 0; probe < 50; ++probe) {
        const auto t = gen::random_probe(rng, P);
        ASSERT_EQ(is_member(t, P, starred).has_value(), members.count(t) > 0)
            << to_literal(t);
      }
    }
  }
}

TEST_F(SpanProperties, IntersectionMatchesOracle) {
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int k = gen::uniform(rng, 2, 3);
    gen::SequencePair pair = trial % 2 == 0
                                 ? gen::random_meeting_pair(rng, k)
                                 : gen::SequencePair{gen::random_sequence(rng, k),
                                                     gen::random_sequence(rng, k)};
    const auto common = intersect_spans(pair.first, pair.second);
    std::set<Subblock> values;
    for (const auto& e : common) {
      ASSERT_EQ(evaluate(pair.first, e.in_first), e.value);
      ASSERT_EQ(evaluate(pair.second, e.in_second), e.value);
      values.insert(e.value);
    }
    ASSERT_EQ(values.size(), common.size());
    ASSERT_EQ(values, oracle::intersection(pair.first, pair.second));
    ASSERT_TRUE(std::is_sorted(common.begin(), common.end(),
                               [](const auto& a, const auto& b) {
                                 return a.in_first < b.in_first;
                               }));
    nonempty += common.empty() ? 0 : 1;
  }
  EXPECT_GT(nonempty, 150u);
}

TEST_F(SpanProperties, ValuationUnionLaw) {
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<Block>> parts(
        static_cast<std::size_t>(gen::uniform(rng, 1, 4)));
    std::vector<Block> all;
    std::optional<std::size_t> joined;
    for (auto& part : parts) {
      const int size = gen::uniform(rng, 0, 3);
      for (int i = 0; i < size; ++i) {
        auto t = gen::random_block(
            rng, 2, static_cast<std::size_t>(gen::uniform(rng, 0, 8)),
            static_cast<std::size_t>(gen::uniform(rng, 9, 14)));
        part.push_back(t);
        all.push_back(std::move(t));
      }
      joined = join(joined, valuation(part).value);
    }
    ASSERT_EQ(valuation(all).value, joined);
    ASSERT_EQ(valuation(all).value, oracle::valuation(all));
  }
}

}  // namespace
}  // namespace fink
