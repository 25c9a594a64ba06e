#pragma once

// Named blocks of the two-sequence family with an infinite but small span
// intersection: r = {0:k}, p_n = {n:k}, q_n = {n:k, n+1:1}, and
// s_m = r + sum_{n<m} T(p_{2n+1}).

#include <cstddef>

#include "fink/fink.hpp"

namespace fink::fixture {

inline Block r(int k = 2) { return Block::from_pairs(k, {{0, k}}); }

inline Block p(std::size_t n, int k = 2) {
  return Block::from_pairs(k, {{n, k}});
}

inline Block q(std::size_t n, int k = 2) {
  return Block::from_pairs(k, {{n, k}, {n + 1, 1}});
}

inline Block s(std::size_t m, int k = 2) {
  std::vector<std::pair<std::size_t, int>> entries{{0, k}};
  for (std::size_t n = 0; n < m; ++n) entries.emplace_back(2 * n + 1, k - 1);
  return Block::from_pairs(k, entries);
}

inline BlockSequence P_prefix(std::size_t odd_count, int k = 2) {
  std::vector<Block> blocks{r(k)};
  for (std::size_t n = 0; n < odd_count; ++n) blocks.push_back(p(2 * n + 1, k));
  return BlockSequence(k, std::move(blocks));
}

inline BlockSequence Q_prefix(std::size_t odd_count, int k = 2) {
  std::vector<Block> blocks{r(k)};
  for (std::size_t n = 0; n < odd_count; ++n) blocks.push_back(q(2 * n + 1, k));
  return BlockSequence(k, std::move(blocks));
}

inline Block lit(const char* literal) { return parse_block(literal); }

}  // namespace fink::fixture
