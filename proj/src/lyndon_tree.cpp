#include "lynslp/lyndon_tree.hpp"

#include <cassert>
#include <stdexcept>

#include "lynslp/lyndon.hpp"

namespace lynslp {

LyndonTree build_lyndon_tree(SymbolSpan text) {
  const std::size_t n = text.size();
  if (n == 0 || !is_lyndon(text))
    throw std::invalid_argument("Lyndon tree needs a Lyndon word");

  LyndonTree tree;
  tree.nodes.reserve(2 * n - 1);

  // Roots on the stack are, left to right, the Lyndon factorization of the
  // processed suffix. A fresh leaf absorbs roots while its suffix is
  // lexicographically smaller, which realizes the standard factorization at
  // every merge.
  std::vector<std::uint32_t> stack;
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t cur = static_cast<std::uint32_t>(tree.nodes.size());
    tree.nodes.push_back({i, i + 1, LyndonTree::npos, LyndonTree::npos});
    while (!stack.empty() && suffix_less(text, i, tree.nodes[stack.back()].begin)) {
      const std::uint32_t rhs = stack.back();
      stack.pop_back();
      const std::uint32_t merged = static_cast<std::uint32_t>(tree.nodes.size());
      tree.nodes.push_back({i, tree.nodes[rhs].end, cur, rhs});
      cur = merged;
    }
    stack.push_back(cur);
  }

  assert(stack.size() == 1);
  tree.root = stack.back();
  return tree;
}

}  // namespace lynslp
