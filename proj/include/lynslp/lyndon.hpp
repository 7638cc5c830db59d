#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lynslp/text.hpp"

namespace lynslp {

/// True iff `s` is strictly smaller than every proper non-empty suffix of
/// itself under lexicographic rank order. Throws on empty input.
bool is_lyndon(SymbolSpan s);

/// Lexicographic comparison of the suffixes of `s` starting at `a` and `b`.
bool suffix_less(SymbolSpan s, std::size_t a, std::size_t b);

/// One maximal block of a repeated factor inside a Lyndon factorization:
/// the word s[start, start+length) taken `exponent` times.
struct ComposedFactor {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t exponent = 1;

  bool operator==(const ComposedFactor&) const = default;
};

/// Lyndon factorization with equal adjacent factors merged, so the factors
/// are strictly decreasing. `lambda` is the 1-based index of the first
/// significant block: the smallest x such that for every y in [x .. p-1]
/// the suffix starting at block y+1 is a prefix of factor y.
struct LyndonFactorization {
  std::vector<ComposedFactor> factors;
  std::size_t lambda = 1;
};

/// Splits a Lyndon word w, |w| >= 2, into w = uv where v is the longest
/// proper suffix of w that is itself a Lyndon word; u is then a Lyndon word
/// as well. Returns (u, v) as subspans of w.
std::pair<SymbolSpan, SymbolSpan> standard_factorization(SymbolSpan w);

/// Composed Lyndon factorization in O(|s|) time.
LyndonFactorization duval_factorize(SymbolSpan s);

/// 1-based start offsets of the significant suffixes of `s`: the suffixes
/// beginning at blocks lambda..p of `f`. There are O(lg |s|) of them.
std::vector<std::size_t> significant_suffixes(SymbolSpan s, const LyndonFactorization& f);

}  // namespace lynslp
