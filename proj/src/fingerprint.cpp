#include "lynslp/fingerprint.hpp"

#include <random>
#include <stdexcept>

namespace lynslp {

namespace m61 {

std::uint64_t pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t acc = 1;
  b %= kMod;
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

}  // namespace m61

FingerprintTable build_fingerprints(const LyndonSlp& slp, std::uint64_t seed) {
  FingerprintTable fp;
  fp.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, m61::kMod - 2);
  fp.base = dist(rng);

  const std::uint32_t g = slp.variable_count();
  fp.value.assign(g + 1, 0);
  fp.shift.assign(g + 1, 1);
  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::terminal) {
      fp.value[v] = rule.symbol % m61::kMod;
      fp.shift[v] = fp.base;
    } else {
      fp.value[v] = m61::add(m61::mul(fp.value[rule.left], fp.shift[rule.right]),
                             fp.value[rule.right]);
      fp.shift[v] = m61::mul(fp.shift[rule.left], fp.shift[rule.right]);
    }
  }
  return fp;
}

PatternFingerprints::PatternFingerprints(SymbolSpan pattern, std::uint64_t base) {
  prefix_.resize(pattern.size() + 1);
  pow_.resize(pattern.size() + 1);
  prefix_[0] = 0;
  pow_[0] = 1;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    prefix_[k + 1] = m61::add(m61::mul(prefix_[k], base), pattern[k] % m61::kMod);
    pow_[k + 1] = m61::mul(pow_[k], base);
  }
}

std::uint64_t PatternFingerprints::substring(std::size_t i, std::size_t len) const {
  if (i + len + 1 > prefix_.size()) throw std::out_of_range("fingerprint range out of pattern");
  return m61::sub(prefix_[i + len], m61::mul(prefix_[i], pow_[len]));
}

}  // namespace lynslp
