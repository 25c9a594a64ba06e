#include "fink/diagonal.hpp"

#include "fink/error.hpp"

namespace fink {
namespace {

bool exceeds(std::size_t value, std::optional<std::size_t> bound) {
  return !bound || value > *bound;
}

std::string claim_failure(std::size_t step, std::size_t member,
                          const std::string& detail) {
  return "step " + std::to_string(step) + ", member " +
         std::to_string(member) + ": " + detail;
}

}  // namespace

ADFamily validate_family(std::vector<SequenceStream> members,
                         std::size_t tail_index, std::size_t horizon,
                         const EnumerationLimits& limits) {
  if (members.empty()) {
    throw Error(ErrorCode::invalid_argument, "family has no members");
  }
  const int level = members.front().level();
  for (const auto& member : members) {
    if (member.level() != level) {
      throw Error(ErrorCode::mismatched_level,
                  "family members have different levels");
    }
  }

  const auto count = members.size();
  std::vector<BlockSequence> truncated;
  truncated.reserve(count);
  for (const auto& member : members) {
    truncated.push_back(member.truncate(horizon));
  }

  ADFamily family{std::move(members),
                  std::vector<std::vector<HorizonValuation>>(
                      count, std::vector<HorizonValuation>(
                                 count, HorizonValuation{{}, horizon, 0})),
                  tail_index, horizon, limits};
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto certificate = smallness_check(
          family.members[a], family.members[b], tail_index, horizon, limits);
      if (certificate.verdict != SmallnessVerdict::empty_at_horizon) {
        throw NotAlmostDisjoint(a, b);
      }
      const auto common = intersect_spans(truncated[a], truncated[b], limits);
      family.bounds[a][b] = valuation(common, horizon);
      family.bounds[b][a] = family.bounds[a][b];
    }
  }
  return family;
}

BlockSequence DiagonalTrace::chosen(int level) const {
  std::vector<Block> blocks;
  blocks.reserve(steps.size());
  for (const auto& step : steps) blocks.push_back(step.choice.block);
  return BlockSequence(level, std::move(blocks));
}

std::size_t source_of(const ADFamily& family, std::size_t step) noexcept {
  return step % family.members.size();
}

std::vector<std::size_t> guarded_members(const ADFamily& family,
                                         std::size_t step) {
  const auto source = source_of(family, step);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < family.members.size() && i < step; ++i) {
    if (i != source) out.push_back(i);
  }
  return out;
}

DiagonalChoice choose_next(const ADFamily& family, const DiagonalTrace& trace,
                           std::size_t step) {
  if (trace.steps.size() != step) {
    throw Error(ErrorCode::invalid_argument,
                "trace has " + std::to_string(trace.steps.size()) +
                    " steps; cannot choose step " + std::to_string(step));
  }
  const auto source = source_of(family, step);
  const auto& stream = family.members[source];
  const auto guarded = guarded_members(family, step);
  const Block* previous =
      step == 0 ? nullptr : &trace.steps.back().choice.block;

  const auto exhausted = [&](const std::string& why) {
    return Error(ErrorCode::horizon_exhausted,
                 "step " + std::to_string(step) + " (member " +
                     std::to_string(source) + "): " + why + " within H=" +
                     std::to_string(family.horizon));
  };

  std::optional<std::size_t> between;
  const auto limit = stream.length();
  for (std::size_t position = 0;; ++position) {
    if (limit && position >= *limit) throw exhausted("stream ended");
    auto block = stream.nth_block(position);
    if (block.max_support() > family.horizon) {
      throw exhausted("no admissible block");
    }
    if (previous != nullptr && !between) {
      if (precedes(*previous, block)) between = position;
      continue;
    }
    const auto top = last_full_position(block);
    bool admissible = true;
    for (const auto i : guarded) {
      admissible = admissible && exceeds(top, family.bounds[source][i].value);
    }
    if (admissible) {
      return DiagonalChoice{std::move(block), source, position, between};
    }
  }
}

DiagonalTrace run_diagonalization(const ADFamily& family,
                                  std::size_t cycles) {
  const int level = family.level();
  const auto count = family.members.size();
  std::vector<BlockSequence> truncated;
  truncated.reserve(count);
  for (const auto& member : family.members) {
    truncated.push_back(member.truncate(family.horizon));
  }
  const auto value_against = [&](const BlockSequence& chosen,
                                 std::size_t member) {
    const auto common =
        intersect_spans(chosen, truncated[member], family.limits);
    return std::make_pair(valuation(common, family.horizon), common);
  };

  DiagonalTrace trace;
  // F(span(q_0..q_s) & span(P_i)) at the last step s sourced from i.
  std::vector<std::optional<std::size_t>> settled(count);
  for (std::size_t step = 0; step < count * cycles; ++step) {
    auto choice = choose_next(family, trace, step);
    const auto before_blocks = trace.chosen(level);
    DiagonalStep record{step, std::move(choice), {}};
    trace.steps.push_back(record);
    const auto after_blocks = trace.chosen(level);

    for (const auto i : guarded_members(family, step)) {
      const auto before = value_against(before_blocks, i).first;
      const auto [after, common] = value_against(after_blocks, i);
      if (before.value != after.value) {
        throw Error(ErrorCode::claim_violation,
                    claim_failure(step, i,
                                  "valuation moved from " +
                                      to_string(before.value) + " to " +
                                      to_string(after.value)));
      }
      for (const auto& element : common) {
        const auto exponent = element.in_first.exponent_of(step);
        if (exponent && *exponent == 0) {
          throw Error(ErrorCode::claim_violation,
                      claim_failure(step, i,
                                    to_literal(element.value) +
                                        " uses the new block untetrised"));
        }
      }
      trace.steps.back().checks.push_back({i, before, after});
    }
    const auto source = trace.steps.back().choice.source;
    settled[source] = value_against(after_blocks, source).first.value;
  }

  const auto final_blocks = trace.chosen(level);
  for (std::size_t i = 0; i < count; ++i) {
    const auto final_value = value_against(final_blocks, i).first.value;
    if (final_value && (!settled[i] || *final_value > *settled[i])) {
      throw Error(ErrorCode::claim_violation,
                  claim_failure(trace.steps.size(), i,
                                "final valuation " + to_string(final_value) +
                                    " exceeds " + to_string(settled[i])));
    }
  }
  return trace;
}

std::string to_string(const DiagonalStep& step) {
  std::string out = "step=" + std::to_string(step.step) +
                    " q=" + to_literal(step.choice.block) + " J=" +
                    (step.choice.between
                         ? std::to_string(*step.choice.between)
                         : std::string("-")) +
                    " checks=[";
  for (std::size_t c = 0; c < step.checks.size(); ++c) {
    const auto& check = step.checks[c];
    if (c > 0) out += ',';
    out += std::to_string(check.member) + ":" +
           to_string(check.before.value) + "->" +
           to_string(check.after.value);
  }
  return out + "]";
}

}  // namespace fink
