#pragma once

#include <cstdint>
#include <vector>

#include "lynslp/access.hpp"
#include "lynslp/fingerprint.hpp"
#include "lynslp/grammar.hpp"
#include "lynslp/text.hpp"
#include "lynslp/wavelet_tree.hpp"

namespace lynslp {

// Variables sorted by derived string and by reversed derived string.
// Sorting happens at build time, when the text is still in memory: every
// variable derives some text substring, so comparisons reduce to
// fingerprint-guided common-prefix search over the text with the decisive
// symbol compared for real, never to expanded strings.
struct VariableOrders {
  std::vector<std::uint32_t> by_val;       // ids ordered by val(X)
  std::vector<std::uint32_t> by_rval;      // ids ordered by reverse(val(X))
  std::vector<std::uint32_t> rank_val;     // inverse of by_val
  std::vector<std::uint32_t> rank_rval;    // inverse of by_rval
};

/// `internal_text` must be the exact string derived by the start variable.
VariableOrders build_orders(const LyndonSlp& slp, const FingerprintTable& fp,
                            SymbolSpan internal_text);

// Half-open interval of rank positions.
struct RankRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool empty() const { return begin >= end; }
  std::uint32_t count() const { return end - begin; }
};

// One point per binary rule: x = rank of the left child among reversed
// derived strings, y = rank of the right child among derived strings,
// labeled with the rule id. Points are kept in (x, y) order; y-coordinates
// live in a wavelet tree for rectangle reporting.
struct OccurrenceGrid {
  std::vector<std::uint32_t> xs;
  std::vector<std::uint32_t> ys;
  std::vector<std::uint32_t> labels;
  WaveletTree tree;
};

OccurrenceGrid build_grid(const LyndonSlp& slp, const VariableOrders& orders);
std::vector<std::uint32_t> grid_report(const OccurrenceGrid& grid, RankRange x, RankRange y);

struct SelfIndex {
  LyndonSlp slp;
  FingerprintTable fp;
  VariableOrders orders;
  OccurrenceGrid grid;
  AdmissibleGrammar ag;                      // expressions may be empty after load
  ParentMap parents;
  std::vector<std::uint32_t> terminal_of;    // rank -> terminal variable id, 0 if absent
  std::uint64_t seed = 0;

  std::uint64_t internal_length() const { return slp.text_length(); }
  std::uint64_t original_length() const { return internal_length() - (slp.sentinel ? 1 : 0); }
};

SelfIndex build_index(SymbolSpan text, std::uint64_t seed = kDefaultSeed);

/// Rebuilds the parts of a SelfIndex that are derived rather than stored
/// (terminal lookup, order inverses, wavelet tree). Used after load.
void rederive(SelfIndex& index);

/// Interval of by_val whose derived strings have `suffix` as a prefix.
/// Fingerprint-guided binary search; both boundaries are confirmed by
/// extracting real symbols, so a fingerprint collision can cost time but
/// not correctness.
RankRange suffix_range(const SelfIndex& index, SymbolSpan pattern,
                       const PatternFingerprints& pfp, std::size_t suffix_begin);

/// Interval of by_rval whose derived strings have `prefix` as a suffix.
RankRange prefix_range(const SelfIndex& index, SymbolSpan pattern,
                       const PatternFingerprints& pfp, std::size_t prefix_len);

// A way to cut the pattern at a rule boundary, P = P[1..split] P[split+1..m].
struct PartitionPair {
  enum class Source : std::uint8_t {
    // right side is a significant suffix of P, or one copy of its final
    // Lyndon factor when that factor repeats
    significant_suffix,
    // left side is the first symbol
    single_head,
    // as significant_suffix, but over P[2..m] with P[1] joined to the left
    head_prepended,
  };

  std::size_t split = 0;  // length of the left side, in [1, m-1]
  Source source = Source::significant_suffix;

  bool operator==(const PartitionPair&) const = default;
};

/// The O(lg m) candidate splits that can host an occurrence crossing a rule
/// boundary, deduplicated by split position, in increasing split order.
std::vector<PartitionPair> enumerate_partition_pairs(SymbolSpan pattern);

struct PrimaryOccurrence {
  std::uint32_t variable = 0;
  std::uint64_t offset = 0;  // 1-based start of the pattern inside val(variable)

  bool operator==(const PrimaryOccurrence&) const = default;
  auto operator<=>(const PrimaryOccurrence&) const = default;
};

/// All (variable, offset) pairs where the pattern occurs crossing the
/// variable's split point, |pattern| >= 2. Every candidate reported by the
/// grid is confirmed by extracting the occurrence before it is returned.
std::vector<PrimaryOccurrence> primary_occurrences(const SelfIndex& index, SymbolSpan pattern);

/// Expands primary occurrences to every text position, climbing the parent
/// map of the reduced grammar. Returns 1-based positions in original-text
/// coordinates (sentinel removed), sorted and duplicate-free.
std::vector<std::uint64_t> secondary_expand(const SelfIndex& index,
                                            std::span<const PrimaryOccurrence> primaries);

/// All occurrences of `pattern` (symbol ranks) in the indexed text,
/// sorted 1-based positions. Symbols outside the indexed alphabet yield an
/// empty result.
std::vector<std::uint64_t> locate(const SelfIndex& index, SymbolSpan pattern);

/// T[i..j] in original-text coordinates.
Text extract_original(const SelfIndex& index, std::uint64_t i, std::uint64_t j);

/// Longest Lyndon word starting at original-text position i.
std::uint64_t lyndon_array_original(const SelfIndex& index, std::uint64_t i);

}  // namespace lynslp
