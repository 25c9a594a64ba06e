#include "fink/structure.hpp"

#include <algorithm>
#include <map>

#include "fink/error.hpp"
#include "union_find.hpp"

namespace fink {
namespace {

std::size_t position_of(const std::vector<std::size_t>& sorted,
                        std::size_t value) {
  return static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

detail::UnionFind connect(const DecompositionGraph& graph) {
  detail::UnionFind sets(graph.left.size() + graph.right.size());
  for (const auto& [i, j] : graph.edges) {
    sets.unite(position_of(graph.left, i),
               graph.left.size() + position_of(graph.right, j));
  }
  return sets;
}

std::vector<std::size_t> indices_of(const Combination& c) {
  std::vector<std::size_t> out;
  out.reserve(c.terms.size());
  for (const auto& term : c.terms) out.push_back(term.index);
  return out;
}

void require_witness(const Block& p, const Combination& witness,
                     const BlockSequence& generators, std::string_view side) {
  Subblock value = Subblock::empty(generators.level());
  try {
    value = evaluate(generators, witness);
  } catch (const Error& e) {
    throw Error(ErrorCode::witness_mismatch,
                std::string(side) + " witness is invalid: " + e.what());
  }
  if (value != p) {
    throw Error(ErrorCode::witness_mismatch,
                std::string(side) + " witness " + to_string(witness) +
                    " evaluates to " + to_literal(value) + ", not " +
                    to_literal(p));
  }
}

// Sum of the terms whose generator index satisfies `keep`, as a subblock.
template <typename Pred>
Subblock partial_sum(const BlockSequence& generators, const Combination& c,
                     Pred keep) {
  auto sum = Subblock::empty(generators.level());
  for (const auto& term : c.terms) {
    if (keep(term.index)) {
      sum = add(sum, tetris(generators[term.index], term.exponent));
    }
  }
  return sum;
}

Combination restricted(const Combination& c,
                       const std::vector<std::size_t>& indices) {
  Combination out;
  out.starred = c.starred;
  for (const auto& term : c.terms) {
    if (std::binary_search(indices.begin(), indices.end(), term.index)) {
      out.terms.push_back(term);
    }
  }
  return out;
}

bool is_suffix(const std::vector<std::size_t>& part,
               const std::vector<std::size_t>& whole) {
  return part.size() <= whole.size() &&
         std::equal(part.begin(), part.end(),
                    whole.end() - static_cast<std::ptrdiff_t>(part.size()));
}

}  // namespace

bool DecompositionGraph::is_connected() const {
  if (left.empty() && right.empty()) return true;
  return connect(*this).count() == 1;
}

std::vector<DecompositionGraph::Component> DecompositionGraph::components()
    const {
  auto sets = connect(*this);
  std::map<std::size_t, Component> by_root;
  for (std::size_t a = 0; a < left.size(); ++a) {
    by_root[sets.find(a)].left.push_back(left[a]);
  }
  for (std::size_t b = 0; b < right.size(); ++b) {
    by_root[sets.find(left.size() + b)].right.push_back(right[b]);
  }
  std::vector<Component> out;
  for (auto& [root, component] : by_root) out.push_back(std::move(component));
  return out;
}

DecompositionGraph::Component DecompositionGraph::component_of_left(
    std::size_t index) const {
  const auto at = position_of(left, index);
  if (at == left.size() || left[at] != index) {
    throw Error(ErrorCode::invalid_argument,
                "L" + std::to_string(index) + " is not a vertex");
  }
  auto sets = connect(*this);
  const auto root = sets.find(at);
  Component out;
  for (std::size_t a = 0; a < left.size(); ++a) {
    if (sets.find(a) == root) out.left.push_back(left[a]);
  }
  for (std::size_t b = 0; b < right.size(); ++b) {
    if (sets.find(left.size() + b) == root) out.right.push_back(right[b]);
  }
  return out;
}

bool DecompositionGraph::has_isolated_vertex() const {
  std::vector<bool> left_seen(left.size()), right_seen(right.size());
  for (const auto& [i, j] : edges) {
    left_seen[position_of(left, i)] = true;
    right_seen[position_of(right, j)] = true;
  }
  return std::find(left_seen.begin(), left_seen.end(), false) !=
             left_seen.end() ||
         std::find(right_seen.begin(), right_seen.end(), false) !=
             right_seen.end();
}

bool DecompositionGraph::edges_monotone() const {
  for (const auto& [a, b] : edges) {
    for (const auto& [a2, b2] : edges) {
      if (a < a2 && b > b2) return false;
    }
  }
  return true;
}

std::string to_text(const DecompositionGraph& graph) {
  std::string out;
  for (const auto& [i, j] : graph.edges) {
    out += "L" + std::to_string(i) + " - R" + std::to_string(j) + "\n";
  }
  return out;
}

DecompositionGraph build_graph(const Block& p, const Combination& in_first,
                               const Combination& in_second,
                               const BlockSequence& first,
                               const BlockSequence& second) {
  require_same_level(p, Subblock::empty(first.level()));
  require_same_level(p, Subblock::empty(second.level()));
  require_witness(p, in_first, first, "first");
  require_witness(p, in_second, second, "second");

  DecompositionGraph graph;
  graph.left = indices_of(in_first);
  graph.right = indices_of(in_second);
  // Both sides tile supp(p), so an edge is a shared position of p.
  const auto values = p.values();
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (values[m] == 0) continue;
    const auto i = first.owner(m);
    const auto j = second.owner(m);
    if (i && j) graph.edges.emplace_back(*i, *j);
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()),
                    graph.edges.end());
  return graph;
}

bool is_intertwined(const Block& p, const Combination& in_first,
                    const Combination& in_second, const BlockSequence& first,
                    const BlockSequence& second) {
  return build_graph(p, in_first, in_second, first, second).is_connected();
}

std::optional<Extraction> extract_intertwined(const BlockSequence& first,
                                              const BlockSequence& second,
                                              const EnumerationLimits& limits) {
  if (first.level() != second.level()) {
    throw Error(ErrorCode::mismatched_level, "sequences differ in level");
  }
  std::optional<CommonElement> current;
  std::size_t prefix_length = 0;
  for (std::size_t n = 1; n <= first.size() && !current; ++n) {
    for (auto& element : intersect_spans(first.prefix(n), second, limits)) {
      if (!current || element.value < current->value) {
        current = std::move(element);
      }
    }
    prefix_length = n;
  }
  if (!current) return std::nullopt;

  const auto prefix = first.prefix(prefix_length);
  Extraction out{std::move(*current), prefix_length, 0};
  while (true) {
    auto& block = out.block;
    const auto graph = build_graph(block.value, block.in_first,
                                   block.in_second, prefix, second);
    if (graph.is_connected()) break;

    const auto component = graph.component_of_left(graph.left.back());
    if (!is_suffix(component.left, graph.left) ||
        !is_suffix(component.right, graph.right)) {
      throw Error(ErrorCode::claim_violation,
                  "component of the last vertex is not upward-closed for " +
                      to_literal(block.value));
    }
    const auto lower_left = partial_sum(prefix, block.in_first, [&](auto i) {
      return !std::binary_search(component.left.begin(), component.left.end(),
                                 i);
    });
    const auto lower_right =
        partial_sum(second, block.in_second, [&](auto j) {
          return !std::binary_search(component.right.begin(),
                                     component.right.end(), j);
        });
    if (lower_left != lower_right) {
      throw Error(ErrorCode::claim_violation,
                  "left parts " + to_literal(lower_left) + " and " +
                      to_literal(lower_right) + " differ");
    }
    if (lower_left.is_block()) {
      throw Error(ErrorCode::minimality_violation,
                  "discarded part " + to_literal(lower_left) +
                      " is a common block below the minimal prefix " +
                      std::to_string(prefix_length));
    }
    CommonElement upper{
        evaluate(prefix, restricted(block.in_first, component.left)),
        restricted(block.in_first, component.left),
        restricted(block.in_second, component.right)};
    // The upper part carries every full position of the block, so both
    // restricted witnesses keep an exponent-0 term.
    upper.in_first.validate(prefix.level());
    upper.in_second.validate(prefix.level());
    require_witness(upper.value, upper.in_second, second, "second");
    out.block = std::move(upper);
    ++out.splits;
  }
  return out;
}

StarSplit star_split(const Block& p, const Combination& p_in_first,
                     const Combination& p_in_second, const Block& q,
                     const Combination& q_in_first,
                     const Combination& q_in_second,
                     const BlockSequence& first,
                     const BlockSequence& second) {
  require_block(p, "star_split");
  require_block(q, "star_split");
  require_witness(q, q_in_first, first, "first");
  require_witness(q, q_in_second, second, "second");
  if (!is_intertwined(p, p_in_first, p_in_second, first, second)) {
    throw Error(ErrorCode::not_intertwined,
                to_literal(p) + " has a disconnected decomposition graph");
  }

  StarSplit out{star(p, q), Subblock::empty(p.level()),
                Subblock::empty(p.level()), {}, {}, {}, {}};
  const auto low = p.min_support();
  const auto high = p.max_support();
  for (auto n = low; n <= high; ++n) {
    if (out.stacked.at(n) != p.at(n)) {
      throw Error(ErrorCode::claim_violation,
                  "(p*q)(" + std::to_string(n) + ") = " +
                      std::to_string(out.stacked.at(n)) + " but p(" +
                      std::to_string(n) + ") = " + std::to_string(p.at(n)) +
                      " for p = " + to_literal(p) + ", q = " + to_literal(q));
    }
  }
  if (low > 0) out.lower = out.stacked.restrict_to(0, low - 1);
  out.upper = out.stacked.restrict_to(high + 1, static_cast<std::size_t>(-1));

  if (add(add(out.lower, p), out.upper) != out.stacked ||
      !precedes(out.lower, p) || !precedes(p, out.upper)) {
    throw Error(ErrorCode::claim_violation,
                "split of " + to_literal(out.stacked) + " does not reassemble");
  }

  const auto starred_witness = [](const Subblock& part,
                                  const BlockSequence& generators,
                                  std::optional<Combination>& slot) {
    if (part.is_empty()) return;
    slot = is_member(part, generators, true);
    if (!slot) {
      throw Error(ErrorCode::claim_violation,
                  to_literal(part) + " is outside a starred span");
    }
  };
  starred_witness(out.lower, first, out.lower_in_first);
  starred_witness(out.lower, second, out.lower_in_second);
  starred_witness(out.upper, first, out.upper_in_first);
  starred_witness(out.upper, second, out.upper_in_second);
  return out;
}

std::string_view to_string(SmallnessVerdict verdict) noexcept {
  return verdict == SmallnessVerdict::empty_at_horizon ? "empty_at_horizon"
                                                       : "nonempty";
}

std::string to_string(const SmallnessCertificate& certificate) {
  return "small? n=" + std::to_string(certificate.tail_index) +
         " H=" + std::to_string(certificate.horizon) +
         " verdict=" + std::string(to_string(certificate.verdict));
}

SmallnessCertificate smallness_check(const SequenceStream& first,
                                     const SequenceStream& second,
                                     std::size_t tail_index,
                                     std::size_t horizon,
                                     const EnumerationLimits& limits) {
  const auto common =
      intersect_spans(first.tail(tail_index).truncate(horizon),
                      second.truncate(horizon), limits);
  SmallnessCertificate out{tail_index, horizon,
                           SmallnessVerdict::empty_at_horizon, std::nullopt};
  if (!common.empty()) {
    out.verdict = SmallnessVerdict::nonempty;
    out.witness = common.front();
  }
  return out;
}

}  // namespace fink
