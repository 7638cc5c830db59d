#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lynslp {

// Symbols are integer ranks over an ordered alphabet. Rank 0 is reserved for
// the sentinel that turns an arbitrary text into a Lyndon word; input bytes
// are shifted by +1 so they can never collide with it.
using Symbol = std::uint32_t;
using Text = std::vector<Symbol>;
using SymbolSpan = std::span<const Symbol>;

inline constexpr Symbol kSentinel = 0;
inline constexpr std::uint32_t kAlphabetBound = 257;  // sentinel + 256 byte ranks

Text ranks_from_bytes(std::string_view bytes);

// Inverse of ranks_from_bytes. Throws if a rank is outside [1..256].
std::string bytes_from_ranks(SymbolSpan ranks);

}  // namespace lynslp
