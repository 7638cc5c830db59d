#pragma once

#include <cstdint>
#include <vector>

#include "lynslp/grammar.hpp"
#include "lynslp/text.hpp"

namespace lynslp {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace m61 {

inline constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kMod) s -= kMod;
  return s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kMod - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(t) & kMod;
  std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
  return add(lo, hi);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t e);

}  // namespace m61

// Karp-Rabin fingerprints of every derived string of a grammar:
// fp(s) = sum of s[k] * base^(|s|-1-k) mod 2^61-1, so the fingerprint of a
// single symbol is its rank and fp(uv) = fp(u)*base^|v| + fp(v).
struct FingerprintTable {
  std::uint64_t seed = 0;
  std::uint64_t base = 0;
  std::vector<std::uint64_t> value;  // fp(val(X_i)), by variable id
  std::vector<std::uint64_t> shift;  // base^|val(X_i)|, by variable id
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Draws the base from a PRNG seeded with `seed` (uniform in [2..p-2]) and
/// fills the table bottom-up in O(g).
FingerprintTable build_fingerprints(const LyndonSlp& slp, std::uint64_t seed = kDefaultSeed);

// Prefix fingerprints of a pattern held in memory; any substring fingerprint
// in O(1). Comparisons against grammar fingerprints are only meaningful for
// equal-length strings.
class PatternFingerprints {
 public:
  PatternFingerprints(SymbolSpan pattern, std::uint64_t base);

  /// Fingerprint of pattern[i, i+len), 0-based.
  std::uint64_t substring(std::size_t i, std::size_t len) const;
  std::uint64_t power(std::size_t len) const { return pow_[len]; }

 private:
  std::vector<std::uint64_t> prefix_;  // prefix_[i] = fp(pattern[0, i))
  std::vector<std::uint64_t> pow_;
};

}  // namespace lynslp
