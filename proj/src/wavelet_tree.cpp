#include "lynslp/wavelet_tree.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace lynslp {

BitVector::BitVector(const std::vector<bool>& bits) : size_(bits.size()) {
  words_.assign((size_ + 63) / 64, 0);
  for (std::size_t k = 0; k < size_; ++k)
    if (bits[k]) words_[k / 64] |= std::uint64_t{1} << (k % 64);
  cum_.assign(words_.size() + 1, 0);
  for (std::size_t w = 0; w < words_.size(); ++w)
    cum_[w + 1] = cum_[w] + std::popcount(words_[w]);
}

std::size_t BitVector::rank1(std::size_t pos) const {
  assert(pos <= size_);
  const std::size_t w = pos / 64, r = pos % 64;
  std::size_t count = cum_[w];
  if (r > 0) count += std::popcount(words_[w] & ((std::uint64_t{1} << r) - 1));
  return count;
}

WaveletTree::WaveletTree(std::span<const std::uint32_t> values,
                         std::span<const std::uint32_t> labels, std::uint32_t universe)
    : size_(values.size()) {
  if (values.size() != labels.size()) throw std::invalid_argument("values/labels size mismatch");
  if (universe == 0) universe = 1;
  if (size_ == 0) return;
  root_ = build(0, universe - 1, std::vector<std::uint32_t>(values.begin(), values.end()),
                std::vector<std::uint32_t>(labels.begin(), labels.end()));
}

std::uint32_t WaveletTree::build(std::uint32_t lo, std::uint32_t hi,
                                 std::vector<std::uint32_t>&& values,
                                 std::vector<std::uint32_t>&& labels) {
  const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_[id].lo = lo;
  nodes_[id].hi = hi;
  if (lo == hi) {
    nodes_[id].leaf_labels = std::move(labels);
    return id;
  }

  const std::uint32_t mid = lo + (hi - lo) / 2;
  std::vector<bool> bits(values.size());
  std::vector<std::uint32_t> lv, ll, rv, rl;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const bool goes_right = values[k] > mid;
    bits[k] = goes_right;
    (goes_right ? rv : lv).push_back(values[k]);
    (goes_right ? rl : ll).push_back(labels[k]);
  }
  nodes_[id].bits = BitVector(bits);
  const std::uint32_t left = lv.empty() ? npos : build(lo, mid, std::move(lv), std::move(ll));
  const std::uint32_t right =
      rv.empty() ? npos : build(mid + 1, hi, std::move(rv), std::move(rl));
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void WaveletTree::report(std::size_t begin, std::size_t end, std::uint32_t value_lo,
                         std::uint32_t value_hi, std::vector<std::uint32_t>& out) const {
  if (root_ == npos || begin >= end || value_lo > value_hi) return;
  report_node(root_, begin, end, value_lo, value_hi, out);
}

void WaveletTree::report_node(std::uint32_t node, std::size_t begin, std::size_t end,
                              std::uint32_t value_lo, std::uint32_t value_hi,
                              std::vector<std::uint32_t>& out) const {
  if (node == npos || begin >= end) return;
  const Node& nd = nodes_[node];
  if (value_hi < nd.lo || nd.hi < value_lo) return;
  if (nd.lo == nd.hi) {
    for (std::size_t k = begin; k < end; ++k) out.push_back(nd.leaf_labels[k]);
    return;
  }
  report_node(nd.left, nd.bits.rank0(begin), nd.bits.rank0(end), value_lo, value_hi, out);
  report_node(nd.right, nd.bits.rank1(begin), nd.bits.rank1(end), value_lo, value_hi, out);
}

}  // namespace lynslp
