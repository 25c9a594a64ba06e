#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fink/block.hpp"
#include "fink/span.hpp"
#include "fink/stream.hpp"
#include "fink/structure.hpp"

namespace fink {

/// A finite family of streams certified pairwise almost disjoint at a
/// horizon, together with the pairwise valuations F(span(P_a) & span(P_b)).
struct ADFamily {
  std::vector<SequenceStream> members;
  /// Symmetric; the diagonal is unused and left at Bottom.
  std::vector<std::vector<HorizonValuation>> bounds;
  std::size_t tail_index = 0;
  std::size_t horizon = 0;
  EnumerationLimits limits;

  int level() const { return members.front().level(); }
};

/// Certifies every pair (a < b) with smallness_check(P_a, P_b, n, H) and
/// computes the pairwise bounds from the truncations at H.
///
/// Throws NotAlmostDisjoint(a, b) for the first failing pair,
/// MismatchedLevel for mixed levels, InvalidArgument for an empty family.
ADFamily validate_family(std::vector<SequenceStream> members,
                         std::size_t tail_index, std::size_t horizon,
                         const EnumerationLimits& limits = {});

struct DiagonalChoice {
  Block block;
  /// Family member the block was drawn from.
  std::size_t source = 0;
  /// Stream index of the block within its source.
  std::size_t position = 0;
  /// Stream index of a source block strictly between the previous choice
  /// and this one; absent for the first step.
  std::optional<std::size_t> between;
};

struct StabilityCheck {
  std::size_t member = 0;
  HorizonValuation before;
  HorizonValuation after;
};

struct DiagonalStep {
  std::size_t step = 0;
  DiagonalChoice choice;
  std::vector<StabilityCheck> checks;
};

struct DiagonalTrace {
  std::vector<DiagonalStep> steps;

  /// The chosen blocks q_0 < q_1 < ... as a block sequence.
  BlockSequence chosen(int level) const;
};

/// Member whose span supplies the block at `step`.
std::size_t source_of(const ADFamily& family, std::size_t step) noexcept;

/// Members whose valuation must be unchanged by the block chosen at
/// `step`: every member other than the source already visited.
std::vector<std::size_t> guarded_members(const ADFamily& family,
                                         std::size_t step);

/// First block of the source stream that lies beyond some source block
/// which is itself beyond the previous choice, and whose last full position
/// exceeds the pairwise bound against every guarded member.
///
/// Throws HorizonExhausted when no such block has support within H.
DiagonalChoice choose_next(const ADFamily& family, const DiagonalTrace& trace,
                           std::size_t step);

/// Runs `cycles` passes over the family, one block per member per pass,
/// checking after each step that F(span(q_0..q_n) & span(P_i)) at the
/// horizon is unchanged for every guarded member i, and that every common
/// element using q_n does so with a positive tetris exponent.
///
/// Throws ClaimViolation on any failed check, HorizonExhausted if the
/// horizon is too small.
DiagonalTrace run_diagonalization(const ADFamily& family,
                                  std::size_t cycles = 1);

/// "step=<n> q=<literal> J=<J> checks=[i:<before>-><after>,...]".
std::string to_string(const DiagonalStep& step);

}  // namespace fink
