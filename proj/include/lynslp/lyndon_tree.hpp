#pragma once

#include <cstdint>
#include <vector>

#include "lynslp/text.hpp"

namespace lynslp {

// Full binary tree over a Lyndon word: every internal node splits its span
// by the standard factorization of the substring it covers. Nodes are stored
// in creation order; leaves cover single positions.
struct LyndonTree {
  static constexpr std::uint32_t npos = 0xffffffffu;

  struct Node {
    std::uint64_t begin = 0;  // 0-based, half-open span [begin, end)
    std::uint64_t end = 0;
    std::uint32_t left = npos;
    std::uint32_t right = npos;

    bool leaf() const { return left == npos; }
  };

  std::vector<Node> nodes;
  std::uint32_t root = npos;
};

/// Builds the Lyndon tree of `text`, which must be a Lyndon word.
/// Right-to-left scan; each new leaf merges with the trees on its right while
/// its suffix is lexicographically smaller than theirs.
LyndonTree build_lyndon_tree(SymbolSpan text);

}  // namespace lynslp
