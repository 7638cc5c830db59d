#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lynslp/access.hpp"
#include "lynslp/fingerprint.hpp"
#include "lynslp/grammar.hpp"
#include "lynslp/oracle.hpp"

using namespace lynslp;
using testing::random_text;
using testing::text_of;

namespace {

// Direct Horner evaluation, the definition the table must agree with.
std::uint64_t direct_fp(SymbolSpan s, std::uint64_t base) {
  std::uint64_t acc = 0;
  for (Symbol c : s) acc = m61::add(m61::mul(acc, base), c);
  return acc;
}

Text internal_text(const LyndonSlp& slp, const Text& original) {
  Text t = slp.sentinel ? Text{kSentinel} : Text{};
  t.insert(t.end(), original.begin(), original.end());
  return t;
}

}  // namespace

TEST_CASE("modular arithmetic identities") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    const std::uint64_t a = rng() % m61::kMod, b = rng() % m61::kMod;
    CHECK(m61::add(a, m61::sub(b, a)) == b);
    CHECK(m61::mul(a, 1) == a);
    const std::uint64_t e = rng() % 200, f = rng() % 200;
    CHECK(m61::pow(a, e + f) == m61::mul(m61::pow(a, e), m61::pow(a, f)));
  }
  CHECK(m61::pow(3, 0) == 1);
  CHECK(m61::add(m61::kMod - 1, 1) == 0);
}

TEST_CASE("fingerprint table matches direct evaluation") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 60; ++iter) {
    const Text t = random_text(rng, 1 + rng() % 250, 2 + rng() % 25);
    const LyndonSlp slp = build_lyndon_slp(t);
    const FingerprintTable fp = build_fingerprints(slp);
    CHECK(fp.seed == kDefaultSeed);
    for (std::uint32_t v = 1; v <= slp.variable_count(); ++v) {
      const Text val = expand(slp, v);
      CHECK(fp.value[v] == direct_fp(val, fp.base));
      CHECK(fp.shift[v] == m61::pow(fp.base, val.size()));
    }
  }
  // Different seeds draw different bases; the same seed reproduces.
  const LyndonSlp slp = build_lyndon_slp(text_of("aababaababb"));
  CHECK(build_fingerprints(slp, 1).base == build_fingerprints(slp, 1).base);
  CHECK(build_fingerprints(slp, 1).base != build_fingerprints(slp, 2).base);
}

TEST_CASE("pattern fingerprints obey the concatenation law") {
  std::mt19937_64 rng(43);
  const std::uint64_t base = 714561697304349469ull;
  for (int iter = 0; iter < 100; ++iter) {
    const Text p = random_text(rng, 1 + rng() % 120, 4);
    const PatternFingerprints pfp(p, base);
    for (int probe = 0; probe < 20; ++probe) {
      const std::size_t i = rng() % p.size();
      const std::size_t len = 1 + rng() % (p.size() - i);
      CHECK(pfp.substring(i, len) == direct_fp(SymbolSpan{p}.subspan(i, len), base));
      const std::size_t cut = rng() % (len + 1);
      CHECK(pfp.substring(i, len) ==
            m61::add(m61::mul(pfp.substring(i, cut), pfp.power(len - cut)),
                     pfp.substring(i + cut, len - cut)));
    }
  }
}

TEST_CASE("extraction returns exact substrings") {
  std::mt19937_64 rng(44);
  for (int iter = 0; iter < 80; ++iter) {
    const std::uint32_t sigma = iter % 3 == 0 ? 2 : (iter % 3 == 1 ? 4 : 26);
    const Text t = random_text(rng, 1 + rng() % 300, sigma);
    const LyndonSlp slp = build_lyndon_slp(t);
    const Text internal = internal_text(slp, t);
    const std::uint64_t n = internal.size();
    for (int probe = 0; probe < 40; ++probe) {
      const std::uint64_t i = 1 + rng() % n;
      const std::uint64_t j = i + rng() % (n - i + 1);
      const Text got = extract(slp, i, j);
      CHECK(got == Text(internal.begin() + i - 1, internal.begin() + j));
    }
    const std::uint64_t k = 1 + rng() % n;
    CHECK(symbol_at(slp, slp.start, k) == internal[k - 1]);
  }

  const LyndonSlp slp = build_lyndon_slp(text_of("aababaababb"));
  CHECK(bytes_from_ranks(extract(slp, 3, 7)) == "babaa");
  CHECK(bytes_from_ranks(extract(slp, 1, 11)) == "aababaababb");
  CHECK(bytes_from_ranks(extract(slp, 11, 11)) == "b");
}

TEST_CASE("substring fingerprints agree with extraction") {
  std::mt19937_64 rng(45);
  for (int iter = 0; iter < 60; ++iter) {
    const Text t = random_text(rng, 2 + rng() % 250, iter % 2 ? 2 : 8);
    const LyndonSlp slp = build_lyndon_slp(t);
    const FingerprintTable fp = build_fingerprints(slp);
    const Text internal = internal_text(slp, t);
    const std::uint64_t n = internal.size();
    for (int probe = 0; probe < 30; ++probe) {
      const std::uint64_t i = 1 + rng() % n;
      const std::uint64_t j = i + rng() % (n - i + 1);
      CHECK(fingerprint(slp, fp, i, j) == direct_fp(extract(slp, i, j), fp.base));
    }
    const std::uint64_t k = rng() % (n + 1);
    CHECK(prefix_fingerprint(slp, fp, slp.start, k) ==
          direct_fp(SymbolSpan{internal}.first(k), fp.base));
    CHECK(suffix_fingerprint(slp, fp, slp.start, k) ==
          direct_fp(SymbolSpan{internal}.last(k), fp.base));
    // Non-start variables answer for their own derived strings.
    const std::uint32_t v = 1 + rng() % slp.variable_count();
    const Text val = expand(slp, v);
    const std::uint64_t kv = rng() % (val.size() + 1);
    CHECK(prefix_fingerprint(slp, fp, v, kv) == direct_fp(SymbolSpan{val}.first(kv), fp.base));
    CHECK(suffix_fingerprint(slp, fp, v, kv) == direct_fp(SymbolSpan{val}.last(kv), fp.base));
  }
}

TEST_CASE("lyndon array of the 11-character example") {
  const Text t = text_of("aababaababb");
  const LyndonSlp slp = build_lyndon_slp(t);
  const std::vector<std::uint64_t> want = {11, 2, 1, 2, 1, 6, 5, 1, 3, 1, 1};
  for (std::uint64_t i = 1; i <= t.size(); ++i)
    CHECK(lyndon_array_entry(slp, i) == want[i - 1]);
}

TEST_CASE("lyndon array entries match the definitional scan") {
  std::mt19937_64 rng(46);
  for (int iter = 0; iter < 60; ++iter) {
    const std::uint32_t sigma = iter % 3 == 0 ? 2 : (iter % 3 == 1 ? 4 : 26);
    const Text t = random_text(rng, 1 + rng() % 160, sigma);
    const LyndonSlp slp = build_lyndon_slp(t);
    const Text internal = internal_text(slp, t);
    const auto want = oracle::naive_lyndon_array(internal);
    for (std::uint64_t i = 1; i <= internal.size(); ++i)
      CHECK(lyndon_array_entry(slp, i) == want[i - 1]);
  }
}
