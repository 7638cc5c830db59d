#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lynslp/grammar.hpp"
#include "lynslp/lyndon.hpp"
#include "lynslp/lyndon_tree.hpp"
#include "lynslp/text.hpp"

namespace lynslp::oracle {

// Reference implementations, deliberately direct and independent of the
// optimized code paths. Inputs are capped to keep accidental quadratic or
// cubic blowups out of test runs.

inline constexpr std::size_t kMaxInput = 10'000;

bool naive_is_lyndon(SymbolSpan w);

/// Sliding-window search; 1-based positions.
std::vector<std::uint64_t> naive_locate(SymbolSpan text, SymbolSpan pattern);

/// Strips the longest Lyndon prefix repeatedly, then merges equal neighbors
/// and derives lambda straight from its definition.
LyndonFactorization naive_lyndon_factorization(SymbolSpan s);

/// Recursive standard factorization, finding the longest proper Lyndon
/// suffix by scanning candidate start positions.
LyndonTree naive_lyndon_tree(SymbolSpan w);

/// For every binary rule, scans the expanded derived string for pattern
/// occurrences that cross the rule's split point. Returns (variable,
/// 1-based offset) pairs.
std::vector<std::pair<std::uint32_t, std::uint64_t>> naive_primary_occurrences(
    const LyndonSlp& slp, SymbolSpan pattern);

/// Longest Lyndon word starting at each position, by definition.
std::vector<std::uint64_t> naive_lyndon_array(SymbolSpan text);

}  // namespace lynslp::oracle
