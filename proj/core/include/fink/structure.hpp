#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fink/block.hpp"
#include "fink/span.hpp"
#include "fink/stream.hpp"

namespace fink {

/// Bipartite graph over the two decompositions of a common span element.
///
/// Left vertices are the generator indices used by the first witness, right
/// vertices those used by the second. (i, j) is an edge iff the tetrised
/// summands T^{a}(P[i]) and T^{b}(Q[j]) share a support position.
struct DecompositionGraph {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted

  struct Component {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
  };

  bool is_connected() const;
  std::vector<Component> components() const;
  /// The component containing left vertex `index`.
  Component component_of_left(std::size_t index) const;

  bool has_isolated_vertex() const;

  /// Edges (a, b), (a', b') with a < a' always have b <= b'.
  bool edges_monotone() const;
};

/// One "L<i> - R<j>" line per edge.
std::string to_text(const DecompositionGraph& graph);

/// Throws WitnessMismatch unless both witnesses evaluate to `p`.
DecompositionGraph build_graph(const Block& p, const Combination& in_first,
                               const Combination& in_second,
                               const BlockSequence& first,
                               const BlockSequence& second);

/// True iff the decomposition graph is connected.
bool is_intertwined(const Block& p, const Combination& in_first,
                    const Combination& in_second, const BlockSequence& first,
                    const BlockSequence& second);

struct Extraction {
  CommonElement block;
  /// Least N with span(first[0..N)) meeting span(second).
  std::size_t prefix_length = 0;
  /// Component splits performed before the graph became connected.
  std::size_t splits = 0;
};

/// Finds an intertwined common block inside the shortest prefix of `first`
/// whose span meets span(second). Starts from the least such element in
/// canonical order and repeatedly keeps the component of the last
/// first-side vertex. Returns nullopt when the spans do not meet.
///
/// Throws MinimalityViolation if a discarded left part attains the level,
/// ClaimViolation if a component is not a suffix on both sides or the two
/// left parts disagree.
std::optional<Extraction> extract_intertwined(
    const BlockSequence& first, const BlockSequence& second,
    const EnumerationLimits& limits = {});

/// p * q = lower + p + upper with lower < p < upper.
struct StarSplit {
  Subblock stacked;
  Subblock lower;
  Subblock upper;
  /// Starred witnesses; empty parts have none.
  std::optional<Combination> lower_in_first, lower_in_second;
  std::optional<Combination> upper_in_first, upper_in_second;
};

/// Splits p * q around an intertwined p. Verifies that p * q agrees with p
/// between min supp(p) and max supp(p), that the parts reassemble to p * q,
/// and that both parts lie in the starred spans of both sequences.
///
/// Throws NotIntertwined, WitnessMismatch, or ClaimViolation.
StarSplit star_split(const Block& p, const Combination& p_in_first,
                     const Combination& p_in_second, const Block& q,
                     const Combination& q_in_first,
                     const Combination& q_in_second,
                     const BlockSequence& first, const BlockSequence& second);

enum class SmallnessVerdict { empty_at_horizon, nonempty };

std::string_view to_string(SmallnessVerdict verdict) noexcept;

/// Horizon evidence that span(first/n) and span(second) do not meet.
struct SmallnessCertificate {
  std::size_t tail_index = 0;
  std::size_t horizon = 0;
  SmallnessVerdict verdict = SmallnessVerdict::empty_at_horizon;
  /// Least common element (by first witness) when nonempty.
  std::optional<CommonElement> witness;
};

/// "small? n=<n> H=<H> verdict=<...>".
std::string to_string(const SmallnessCertificate& certificate);

/// Intersects span(truncate(tail(first, n), H)) with
/// span(truncate(second, H)). Exact only for explicit streams that end
/// before the horizon.
SmallnessCertificate smallness_check(const SequenceStream& first,
                                     const SequenceStream& second,
                                     std::size_t tail_index,
                                     std::size_t horizon,
                                     const EnumerationLimits& limits = {});

}  // namespace fink
