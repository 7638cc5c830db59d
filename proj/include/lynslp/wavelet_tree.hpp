#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lynslp {

// Plain bit vector with O(1) rank via per-word prefix counts.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(const std::vector<bool>& bits);

  std::size_t size() const { return size_; }
  /// Number of set bits in [0, pos).
  std::size_t rank1(std::size_t pos) const;
  std::size_t rank0(std::size_t pos) const { return pos - rank1(pos); }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> cum_;  // set bits before each word
};

// Static wavelet tree over a sequence of labeled values. Elements keep their
// sequence order inside every node, so a leaf holds the labels of one value
// in sequence order and range reports walk down only, never back up:
// O((1 + k) log u) for k reported labels over universe size u.
class WaveletTree {
 public:
  WaveletTree() = default;
  WaveletTree(std::span<const std::uint32_t> values,
              std::span<const std::uint32_t> labels,
              std::uint32_t universe);

  /// Labels of elements at sequence positions [begin, end) whose value lies
  /// in [value_lo, value_hi], appended to `out`.
  void report(std::size_t begin, std::size_t end,
              std::uint32_t value_lo, std::uint32_t value_hi,
              std::vector<std::uint32_t>& out) const;

  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint32_t npos = 0xffffffffu;

  struct Node {
    std::uint32_t lo = 0, hi = 0;  // inclusive value range
    std::uint32_t left = npos, right = npos;
    BitVector bits;                       // element goes right iff value > mid
    std::vector<std::uint32_t> leaf_labels;
  };

  std::uint32_t build(std::uint32_t lo, std::uint32_t hi,
                      std::vector<std::uint32_t>&& values,
                      std::vector<std::uint32_t>&& labels);
  void report_node(std::uint32_t node, std::size_t begin, std::size_t end,
                   std::uint32_t value_lo, std::uint32_t value_hi,
                   std::vector<std::uint32_t>& out) const;

  std::vector<Node> nodes_;
  std::uint32_t root_ = npos;
  std::size_t size_ = 0;
};

}  // namespace lynslp
