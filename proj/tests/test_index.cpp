#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "lynslp/index.hpp"
#include "lynslp/oracle.hpp"

using namespace lynslp;
using testing::id_deriving;
using testing::random_text;
using testing::text_of;

namespace {

std::vector<std::size_t> splits_of(SymbolSpan pattern) {
  std::vector<std::size_t> s;
  for (const PartitionPair& p : enumerate_partition_pairs(pattern)) s.push_back(p.split);
  return s;
}

std::vector<std::size_t> splits_of(std::string_view pattern) {
  return splits_of(SymbolSpan{ranks_from_bytes(pattern)});
}

std::vector<std::uint32_t> ids_in_range(const std::vector<std::uint32_t>& order, RankRange r) {
  std::vector<std::uint32_t> ids(order.begin() + r.begin, order.begin() + r.end);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool starts_with(const Text& whole, const Text& head) {
  return whole.size() >= head.size() && std::equal(head.begin(), head.end(), whole.begin());
}

bool ends_with(const Text& whole, const Text& tail) {
  return whole.size() >= tail.size() && std::equal(tail.rbegin(), tail.rend(), whole.rbegin());
}

std::vector<PrimaryOccurrence> sorted_naive_primaries(const LyndonSlp& slp, SymbolSpan pattern) {
  std::vector<PrimaryOccurrence> want;
  for (const auto& [var, off] : oracle::naive_primary_occurrences(slp, pattern))
    want.push_back({var, off});
  std::sort(want.begin(), want.end());
  return want;
}

}  // namespace

TEST_CASE("variable orders of the 11-character example") {
  const Text t = text_of("aababaababb");
  const SelfIndex ix = build_index(t);
  auto id = [&](std::string_view w) { return id_deriving(ix.slp, w); };

  const std::vector<std::uint32_t> by_val = {id("a"),      id("aab"), id("aabab"),
                                             id("aababaababb"), id("aababb"),
                                             id("ab"),     id("ababb"), id("abb"), id("b")};
  CHECK(ix.orders.by_val == by_val);
  const std::vector<std::uint32_t> by_rval = {id("a"),     id("b"),      id("ab"),
                                              id("aab"),   id("aabab"),  id("abb"),
                                              id("ababb"), id("aababb"), id("aababaababb")};
  CHECK(ix.orders.by_rval == by_rval);
  for (std::uint32_t r = 0; r < by_val.size(); ++r) {
    CHECK(ix.orders.rank_val[by_val[r]] == r);
    CHECK(ix.orders.rank_rval[by_rval[r]] == r);
  }
}

TEST_CASE("variable orders match expand-and-sort") {
  std::mt19937_64 rng(51);
  for (int iter = 0; iter < 80; ++iter) {
    const std::uint32_t sigma = iter % 3 == 0 ? 2 : (iter % 3 == 1 ? 4 : 26);
    const Text t = random_text(rng, 1 + rng() % 300, sigma);
    const SelfIndex ix = build_index(t);
    const std::uint32_t g = ix.slp.variable_count();

    std::vector<std::uint32_t> want(g);
    for (std::uint32_t v = 0; v < g; ++v) want[v] = v + 1;
    auto by_expansion = [&](auto&& key) {
      auto order = want;
      std::sort(order.begin(), order.end(),
                [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
      return order;
    };
    CHECK(ix.orders.by_val == by_expansion([&](std::uint32_t v) { return expand(ix.slp, v); }));
    CHECK(ix.orders.by_rval == by_expansion([&](std::uint32_t v) {
            Text r = expand(ix.slp, v);
            std::reverse(r.begin(), r.end());
            return r;
          }));
  }
}

TEST_CASE("grid of the 11-character example") {
  const Text t = text_of("aababaababb");
  const SelfIndex ix = build_index(t);
  REQUIRE(ix.grid.xs.size() == 7);  // one point per binary rule
  auto id = [&](std::string_view w) { return id_deriving(ix.slp, w); };
  // (x, y, label) with x the left child's reversed rank, y the right
  // child's rank; hand-derived from the orders above.
  const std::vector<std::array<std::uint32_t, 3>> want = {
      {0, 5, id("aab")},  {0, 6, id("aababb")}, {0, 8, id("ab")},   {2, 7, id("ababb")},
      {2, 8, id("abb")},  {3, 5, id("aabab")},  {4, 4, id("aababaababb")}};
  for (std::size_t k = 0; k < want.size(); ++k) {
    CHECK(ix.grid.xs[k] == want[k][0]);
    CHECK(ix.grid.ys[k] == want[k][1]);
    CHECK(ix.grid.labels[k] == want[k][2]);
  }
}

TEST_CASE("grid reporting equals a linear scan") {
  std::mt19937_64 rng(52);
  for (int iter = 0; iter < 40; ++iter) {
    const Text t = random_text(rng, 2 + rng() % 400, 2 + rng() % 3);
    const SelfIndex ix = build_index(t);
    const std::uint32_t g = ix.slp.variable_count();
    for (int probe = 0; probe < 25; ++probe) {
      RankRange x{static_cast<std::uint32_t>(rng() % (g + 1)), 0};
      x.end = x.begin + rng() % (g + 1 - x.begin);
      RankRange y{static_cast<std::uint32_t>(rng() % (g + 1)), 0};
      y.end = y.begin + rng() % (g + 1 - y.begin);

      auto got = grid_report(ix.grid, x, y);
      std::sort(got.begin(), got.end());
      std::vector<std::uint32_t> want;
      for (std::size_t k = 0; k < ix.grid.xs.size(); ++k)
        if (ix.grid.xs[k] >= x.begin && ix.grid.xs[k] < x.end && ix.grid.ys[k] >= y.begin &&
            ix.grid.ys[k] < y.end)
          want.push_back(ix.grid.labels[k]);
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("suffix range of the example pattern") {
  const Text t = text_of("aababaababb");
  const SelfIndex ix = build_index(t);
  const Text p = text_of("ab");
  const PatternFingerprints pfp(p, ix.fp.base);
  const RankRange r = suffix_range(ix, p, pfp, 0);
  // Exactly ab, ababb, abb start with "ab"; they are contiguous in by_val.
  std::vector<std::uint32_t> want = {id_deriving(ix.slp, "ab"), id_deriving(ix.slp, "ababb"),
                                     id_deriving(ix.slp, "abb")};
  std::sort(want.begin(), want.end());
  CHECK(ids_in_range(ix.orders.by_val, r) == want);

  const RankRange rb = prefix_range(ix, text_of("b"), PatternFingerprints(text_of("b"), ix.fp.base), 1);
  CHECK(rb.count() == 8);  // every variable but "a" ends in b
}

TEST_CASE("range searches match expand-and-filter") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 60; ++iter) {
    const std::uint32_t sigma = iter % 2 ? 2 : 4;
    const Text t = random_text(rng, 2 + rng() % 300, sigma);
    const SelfIndex ix = build_index(t);
    for (int probe = 0; probe < 20; ++probe) {
      const std::size_t m = 1 + rng() % std::min<std::size_t>(t.size(), 12);
      const std::size_t at = rng() % (t.size() - m + 1);
      Text p(t.begin() + at, t.begin() + at + m);
      if (probe % 3 == 2) p[rng() % m] = 1 + rng() % sigma;
      const PatternFingerprints pfp(p, ix.fp.base);

      const std::size_t suffix_begin = rng() % m;
      const Text suffix(p.begin() + suffix_begin, p.end());
      std::vector<std::uint32_t> want_s;
      for (std::uint32_t v = 1; v <= ix.slp.variable_count(); ++v)
        if (starts_with(expand(ix.slp, v), suffix)) want_s.push_back(v);
      CHECK(ids_in_range(ix.orders.by_val, suffix_range(ix, p, pfp, suffix_begin)) == want_s);

      const std::size_t prefix_len = 1 + rng() % m;
      const Text prefix(p.begin(), p.begin() + prefix_len);
      std::vector<std::uint32_t> want_p;
      for (std::uint32_t v = 1; v <= ix.slp.variable_count(); ++v)
        if (ends_with(expand(ix.slp, v), prefix)) want_p.push_back(v);
      CHECK(ids_in_range(ix.orders.by_rval, prefix_range(ix, p, pfp, prefix_len)) == want_p);
    }
  }
}

TEST_CASE("partition pairs of known patterns") {
  CHECK(splits_of("ab") == std::vector<std::size_t>{1});
  CHECK(splits_of("aa") == std::vector<std::size_t>{1});
  CHECK(splits_of("bab") == std::vector<std::size_t>{1});
  CHECK(splits_of("ba") == std::vector<std::size_t>{1});
  // The lone-final-factor candidates: abab = (ab)^2 inside aabab, and
  // bb = b^2 inside abb, neither covered by significant suffixes alone.
  CHECK(splits_of("aabab") == std::vector<std::size_t>{1, 3});
  CHECK(splits_of("abb") == std::vector<std::size_t>{1, 2});

  const auto pairs = enumerate_partition_pairs(text_of("abacabadabacababa"));
  std::vector<std::size_t> splits, significant;
  for (const PartitionPair& p : pairs) {
    splits.push_back(p.split);
    if (p.source == PartitionPair::Source::significant_suffix) significant.push_back(p.split);
  }
  CHECK(splits == std::vector<std::size_t>{1, 12, 16});
  // Splits after P1 P2 and after P1 P2 P3^2 come from significant suffixes.
  CHECK(significant == std::vector<std::size_t>{12, 16});
}

TEST_CASE("partition pairs are sorted, in range and logarithmic in count") {
  std::mt19937_64 rng(54);
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t m = 2 + rng() % 500;
    const Text p = random_text(rng, m, iter % 2 ? 2 : 26);
    const auto splits = splits_of(SymbolSpan{p});
    REQUIRE(!splits.empty());
    CHECK(std::is_sorted(splits.begin(), splits.end()));
    CHECK(std::adjacent_find(splits.begin(), splits.end()) == splits.end());
    CHECK(splits.front() >= 1);
    CHECK(splits.back() <= m - 1);
    CHECK(splits.size() <= 4 * std::bit_width(m - 1) + 4);
  }
}

TEST_CASE("every crossing occurrence lands on an enumerated split") {
  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 250; ++iter) {
    const std::uint32_t sigma = iter % 2 ? 2 : 4;
    const Text t = random_text(rng, 2 + rng() % 200, sigma);
    const LyndonSlp slp = build_lyndon_slp(t);
    for (int probe = 0; probe < 12; ++probe) {
      const std::size_t m = 2 + rng() % (std::min<std::size_t>(t.size(), 24) - 1);
      const std::size_t at = rng() % (t.size() - m + 1);
      Text p(t.begin() + at, t.begin() + at + m);
      if (probe % 4 == 3) p[rng() % m] = 1 + rng() % sigma;
      const auto splits = splits_of(SymbolSpan{p});
      for (const auto& [var, off] : oracle::naive_primary_occurrences(slp, p)) {
        // A crossing occurrence at offset `off` splits the pattern at the
        // left child's boundary.
        const std::uint64_t left_len = slp.lengths[slp.rules[var].left];
        const std::size_t split = left_len - off + 1;
        CHECK(std::binary_search(splits.begin(), splits.end(), split));
      }
    }
  }
}

TEST_CASE("primary occurrences of the example pattern") {
  const Text t = text_of("aababaababb");
  const SelfIndex ix = build_index(t);
  auto got = primary_occurrences(ix, text_of("bab"));
  std::sort(got.begin(), got.end());
  // bab crosses ababb = ab.abb at offset 2 and aabab = aab.ab at offset 3.
  const std::vector<PrimaryOccurrence> want = {{id_deriving(ix.slp, "ababb"), 2},
                                               {id_deriving(ix.slp, "aabab"), 3}};
  CHECK(got == want);
}

TEST_CASE("primary occurrences match the per-rule scan") {
  std::mt19937_64 rng(56);
  for (int iter = 0; iter < 120; ++iter) {
    const std::uint32_t sigma = iter % 3 == 0 ? 2 : (iter % 3 == 1 ? 4 : 26);
    const Text t = random_text(rng, 2 + rng() % 250, sigma);
    const SelfIndex ix = build_index(t);
    for (int probe = 0; probe < 15; ++probe) {
      const std::size_t m = 2 + rng() % (std::min<std::size_t>(t.size(), 32) - 1);
      const std::size_t at = rng() % (t.size() - m + 1);
      Text p(t.begin() + at, t.begin() + at + m);
      if (probe % 4 == 3) p[rng() % m] = 1 + rng() % sigma;
      auto got = primary_occurrences(ix, p);
      std::sort(got.begin(), got.end());
      CHECK(got == sorted_naive_primaries(ix.slp, p));
    }
  }
}

TEST_CASE("locate on the example text") {
  const Text t = text_of("aababaababb");
  const SelfIndex ix = build_index(t);
  using V = std::vector<std::uint64_t>;
  CHECK(locate(ix, text_of("bab")) == V{3, 8});
  CHECK(locate(ix, text_of("a")) == V{1, 2, 4, 6, 7, 9});
  CHECK(locate(ix, text_of("b")) == V{3, 5, 8, 10, 11});
  CHECK(locate(ix, text_of("aabab")) == V{1, 6});
  CHECK(locate(ix, text_of("abb")) == V{9});
  CHECK(locate(ix, text_of("aababaababb")) == V{1});
  CHECK(locate(ix, text_of("bb")) == V{10});
  CHECK(locate(ix, text_of("bba")).empty());
  CHECK(locate(ix, text_of("c")).empty());
  CHECK(locate(ix, text_of("aababaababba")).empty());  // longer than the text
  CHECK(locate(ix, Text{}).empty());
}

TEST_CASE("locate handles sentinel texts and overlapping matches") {
  const SelfIndex banana = build_index(text_of("banana"));
  REQUIRE(banana.slp.sentinel);
  using V = std::vector<std::uint64_t>;
  CHECK(locate(banana, text_of("an")) == V{2, 4});
  CHECK(locate(banana, text_of("ana")) == V{2, 4});
  CHECK(locate(banana, text_of("banana")) == V{1});
  CHECK(locate(banana, text_of("nab")).empty());
  // The sentinel rank exists internally but is not part of the text.
  CHECK(locate(banana, Text{kSentinel}).empty());
  Text with_sentinel{kSentinel};
  for (Symbol c : text_of("ban")) with_sentinel.push_back(c);
  CHECK(locate(banana, with_sentinel).empty());

  const SelfIndex runs = build_index(text_of("aaa"));
  CHECK(locate(runs, text_of("aa")) == V{1, 2});
  CHECK(locate(runs, text_of("aaa")) == V{1});
}

TEST_CASE("locate equals the sliding-window oracle") {
  std::mt19937_64 rng(57);
  for (int iter = 0; iter < 300; ++iter) {
    const std::uint32_t sigma = iter % 3 == 0 ? 2 : (iter % 3 == 1 ? 4 : 26);
    const std::size_t n = 1 + rng() % 500;
    Text t = random_text(rng, n, sigma);
    if (iter % 19 == 0) std::fill(t.begin(), t.end(), Symbol(1));
    if (iter % 29 == 0)
      for (std::size_t k = 0; k < n; ++k) t[k] = 1 + (k % 2);
    const SelfIndex ix = build_index(t);
    for (int probe = 0; probe < 30; ++probe) {
      const std::size_t m = 1 + rng() % std::min<std::size_t>(n, 64);
      Text p;
      if (probe % 5 == 4) {
        p = random_text(rng, m, sigma);
      } else {
        const std::size_t at = rng() % (n - m + 1);
        p.assign(t.begin() + at, t.begin() + at + m);
        if (probe % 3 == 2) p[rng() % m] = 1 + rng() % sigma;
      }
      CHECK(locate(ix, p) == oracle::naive_locate(t, p));
    }
  }
}

TEST_CASE("secondary expansion reports each occurrence once") {
  std::mt19937_64 rng(58);
  for (int iter = 0; iter < 80; ++iter) {
    const Text t = random_text(rng, 2 + rng() % 300, 2);
    const SelfIndex ix = build_index(t);
    const std::size_t m = 2 + rng() % (std::min<std::size_t>(t.size(), 16) - 1);
    const std::size_t at = rng() % (t.size() - m + 1);
    const Text p(t.begin() + at, t.begin() + at + m);
    const auto primaries = primary_occurrences(ix, p);
    const auto positions = secondary_expand(ix, primaries);
    CHECK(std::is_sorted(positions.begin(), positions.end()));
    CHECK(std::adjacent_find(positions.begin(), positions.end()) == positions.end());
    CHECK(positions == oracle::naive_locate(t, p));
  }
}

TEST_CASE("original-coordinate helpers skip the sentinel") {
  const SelfIndex ix = build_index(text_of("banana"));
  CHECK(bytes_from_ranks(extract_original(ix, 1, 6)) == "banana");
  CHECK(bytes_from_ranks(extract_original(ix, 2, 4)) == "ana");
  CHECK(ix.original_length() == 6);
  CHECK(ix.internal_length() == 7);
  // banana: longest Lyndon word starting at each position is b,an,n,an,n,a.
  const std::vector<std::uint64_t> want = {1, 2, 1, 2, 1, 1};
  for (std::uint64_t i = 1; i <= 6; ++i) CHECK(lyndon_array_original(ix, i) == want[i - 1]);
}
