#pragma once

#include <cstdint>

#include "lynslp/fingerprint.hpp"
#include "lynslp/grammar.hpp"
#include "lynslp/text.hpp"

namespace lynslp {

// Random access to derived strings without materializing them. Positions are
// 1-based and inclusive, over the sentinel-prepended text where one exists.

/// Appends val(var)[i..j] to `out` in O(j - i + height) time.
void extract_val_into(const LyndonSlp& slp, std::uint32_t var,
                      std::uint64_t i, std::uint64_t j, Text& out);

/// T[i..j] where T = val(start).
Text extract(const LyndonSlp& slp, std::uint64_t i, std::uint64_t j);

/// k-th symbol of val(var).
Symbol symbol_at(const LyndonSlp& slp, std::uint32_t var, std::uint64_t k);

/// Fingerprint of val(var)[1..k]; k = 0 gives 0. One root-to-position
/// descent, O(height).
std::uint64_t prefix_fingerprint(const LyndonSlp& slp, const FingerprintTable& fp,
                                 std::uint32_t var, std::uint64_t k);

/// Fingerprint of the last k symbols of val(var).
std::uint64_t suffix_fingerprint(const LyndonSlp& slp, const FingerprintTable& fp,
                                 std::uint32_t var, std::uint64_t k);

/// Fingerprint of T[i..j], two descents.
std::uint64_t fingerprint(const LyndonSlp& slp, const FingerprintTable& fp,
                          std::uint64_t i, std::uint64_t j);

/// Length of the longest Lyndon word starting at position i of T: the span
/// of the highest derivation-tree node whose leftmost leaf is position i.
std::uint64_t lyndon_array_entry(const LyndonSlp& slp, std::uint64_t i);

}  // namespace lynslp
