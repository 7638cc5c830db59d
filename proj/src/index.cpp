#include "lynslp/index.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "lynslp/lyndon.hpp"

namespace lynslp {

namespace {

constexpr std::uint64_t kUnplaced = ~std::uint64_t{0};

// One text occurrence per variable, found by walking the rules top-down from
// the start variable (children of a placed variable inherit its position).
std::vector<std::uint64_t> occurrence_positions(const LyndonSlp& slp) {
  const std::uint32_t g = slp.variable_count();
  std::vector<std::uint64_t> pos(g + 1, kUnplaced);
  pos[slp.start] = 0;
  for (std::uint32_t v = g; v >= 1; --v) {
    if (pos[v] == kUnplaced) throw std::invalid_argument("variable unreachable from start");
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::binary) {
      if (pos[rule.left] == kUnplaced) pos[rule.left] = pos[v];
      if (pos[rule.right] == kUnplaced) pos[rule.right] = pos[v] + slp.lengths[rule.left];
    }
  }
  return pos;
}

}  // namespace

VariableOrders build_orders(const LyndonSlp& slp, const FingerprintTable& fp,
                            SymbolSpan text) {
  if (text.size() != slp.text_length())
    throw std::invalid_argument("text does not match the grammar");
  const std::uint32_t g = slp.variable_count();
  const std::vector<std::uint64_t> pos = occurrence_positions(slp);

  // Prefix fingerprints of the text give O(1) probes for the common-prefix
  // binary searches below.
  std::vector<std::uint64_t> pre(text.size() + 1, 0);
  for (std::size_t k = 0; k < text.size(); ++k)
    pre[k + 1] = m61::add(m61::mul(pre[k], fp.base), text[k] % m61::kMod);
  auto sub_fp = [&](std::uint64_t at, std::uint64_t len) {
    return m61::sub(pre[at + len], m61::mul(pre[at], m61::pow(fp.base, len)));
  };

  // Longest common extension of text[a..] and text[b..], capped. The decisive
  // symbol is always compared for real, so a colliding probe costs a linear
  // rescan instead of a wrong answer; only a full-length collision (one string
  // claimed to be a prefix of the other) goes unchecked, with probability
  // around n/2^61 per comparison.
  auto common_prefix = [&](std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    std::uint64_t lo = 0, hi = cap;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (sub_fp(a, mid) == sub_fp(b, mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    while (lo < cap && text[a + lo] == text[b + lo]) ++lo;
    return lo;
  };
  auto common_suffix = [&](std::uint64_t a_end, std::uint64_t b_end, std::uint64_t cap) {
    std::uint64_t lo = 0, hi = cap;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (sub_fp(a_end - mid, mid) == sub_fp(b_end - mid, mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    while (lo < cap && text[a_end - 1 - lo] == text[b_end - 1 - lo]) ++lo;
    return lo;
  };

  auto less_val = [&](std::uint32_t a, std::uint32_t b) {
    if (a == b) return false;
    const std::uint64_t pa = pos[a], pb = pos[b];
    const std::uint64_t la = slp.lengths[a], lb = slp.lengths[b];
    if (text[pa] != text[pb]) return text[pa] < text[pb];
    const std::uint64_t cap = std::min(la, lb);
    const std::uint64_t l = common_prefix(pa, pb, cap);
    if (l < cap) return text[pa + l] < text[pb + l];
    if (la != lb) return la < lb;  // one derived string is a prefix of the other
    return a < b;                  // distinct variables never derive equal strings
  };
  auto less_rval = [&](std::uint32_t a, std::uint32_t b) {
    if (a == b) return false;
    const std::uint64_t la = slp.lengths[a], lb = slp.lengths[b];
    const std::uint64_t ea = pos[a] + la, eb = pos[b] + lb;
    if (text[ea - 1] != text[eb - 1]) return text[ea - 1] < text[eb - 1];
    const std::uint64_t cap = std::min(la, lb);
    const std::uint64_t l = common_suffix(ea, eb, cap);
    if (l < cap) return text[ea - 1 - l] < text[eb - 1 - l];
    if (la != lb) return la < lb;
    return a < b;
  };

  VariableOrders orders;
  orders.by_val.resize(g);
  for (std::uint32_t v = 0; v < g; ++v) orders.by_val[v] = v + 1;
  orders.by_rval = orders.by_val;
  std::sort(orders.by_val.begin(), orders.by_val.end(), less_val);
  std::sort(orders.by_rval.begin(), orders.by_rval.end(), less_rval);

  orders.rank_val.assign(g + 1, 0);
  orders.rank_rval.assign(g + 1, 0);
  for (std::uint32_t r = 0; r < g; ++r) {
    orders.rank_val[orders.by_val[r]] = r;
    orders.rank_rval[orders.by_rval[r]] = r;
  }
  return orders;
}

OccurrenceGrid build_grid(const LyndonSlp& slp, const VariableOrders& orders) {
  const std::uint32_t g = slp.variable_count();
  struct Point {
    std::uint32_t x, y, label;
  };
  std::vector<Point> points;
  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::binary)
      points.push_back({orders.rank_rval[rule.left], orders.rank_val[rule.right], v});
  }
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : (a.y != b.y ? a.y < b.y : a.label < b.label);
  });

  OccurrenceGrid grid;
  grid.xs.reserve(points.size());
  grid.ys.reserve(points.size());
  grid.labels.reserve(points.size());
  for (const Point& p : points) {
    grid.xs.push_back(p.x);
    grid.ys.push_back(p.y);
    grid.labels.push_back(p.label);
  }
  grid.tree = WaveletTree(grid.ys, grid.labels, g);
  return grid;
}

std::vector<std::uint32_t> grid_report(const OccurrenceGrid& grid, RankRange x, RankRange y) {
  std::vector<std::uint32_t> out;
  if (x.empty() || y.empty()) return out;
  const auto lo = std::lower_bound(grid.xs.begin(), grid.xs.end(), x.begin) - grid.xs.begin();
  const auto hi = std::lower_bound(grid.xs.begin(), grid.xs.end(), x.end) - grid.xs.begin();
  grid.tree.report(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), y.begin,
                   y.end - 1, out);
  return out;
}

namespace {

enum class Cmp { less, within, greater };

// val(v) against pattern[s_begin, s_begin + s_len), deciding whether the
// slice precedes, is a prefix of, or follows the derived string. Probes are
// fingerprints; the decisive symbol is compared for real, and a detected
// collision falls back to extracting the compared portion.
Cmp compare_prefix(const SelfIndex& ix, std::uint32_t v, SymbolSpan pattern,
                   const PatternFingerprints& pfp, std::size_t s_begin, std::size_t s_len) {
  const std::uint64_t lv = ix.slp.lengths[v];
  const std::uint64_t cap = std::min<std::uint64_t>(lv, s_len);
  std::uint64_t lo = 0, hi = cap;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (prefix_fingerprint(ix.slp, ix.fp, v, mid) ==
        pfp.substring(s_begin, static_cast<std::size_t>(mid))) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (lo < cap) {
    const Symbol cv = symbol_at(ix.slp, v, lo + 1);
    const Symbol cp = pattern[s_begin + lo];
    if (cv != cp) return cv < cp ? Cmp::less : Cmp::greater;
    Text head;
    head.reserve(cap);
    extract_val_into(ix.slp, v, 1, cap, head);
    for (std::uint64_t k = 0; k < cap; ++k)
      if (head[k] != pattern[s_begin + k])
        return head[k] < pattern[s_begin + k] ? Cmp::less : Cmp::greater;
  }
  return lv < s_len ? Cmp::less : Cmp::within;
}

Cmp exact_compare_prefix(const SelfIndex& ix, std::uint32_t v, SymbolSpan pattern,
                         std::size_t s_begin, std::size_t s_len) {
  const std::uint64_t lv = ix.slp.lengths[v];
  const std::uint64_t cap = std::min<std::uint64_t>(lv, s_len);
  Text head;
  head.reserve(cap);
  extract_val_into(ix.slp, v, 1, cap, head);
  for (std::uint64_t k = 0; k < cap; ++k)
    if (head[k] != pattern[s_begin + k])
      return head[k] < pattern[s_begin + k] ? Cmp::less : Cmp::greater;
  return lv < s_len ? Cmp::less : Cmp::within;
}

// Reversed val(v) against the reversed pattern prefix of length p_len.
Cmp compare_reversed(const SelfIndex& ix, std::uint32_t v, SymbolSpan pattern,
                     const PatternFingerprints& pfp, std::size_t p_len) {
  const std::uint64_t lv = ix.slp.lengths[v];
  const std::uint64_t cap = std::min<std::uint64_t>(lv, p_len);
  std::uint64_t lo = 0, hi = cap;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (suffix_fingerprint(ix.slp, ix.fp, v, mid) ==
        pfp.substring(p_len - static_cast<std::size_t>(mid), static_cast<std::size_t>(mid))) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (lo < cap) {
    const Symbol cv = symbol_at(ix.slp, v, lv - lo);
    const Symbol cp = pattern[p_len - 1 - lo];
    if (cv != cp) return cv < cp ? Cmp::less : Cmp::greater;
    Text tail;
    tail.reserve(cap);
    extract_val_into(ix.slp, v, lv - cap + 1, lv, tail);
    for (std::uint64_t k = 0; k < cap; ++k) {
      const Symbol a = tail[cap - 1 - k], b = pattern[p_len - 1 - k];
      if (a != b) return a < b ? Cmp::less : Cmp::greater;
    }
  }
  return lv < p_len ? Cmp::less : Cmp::within;
}

Cmp exact_compare_reversed(const SelfIndex& ix, std::uint32_t v, SymbolSpan pattern,
                           std::size_t p_len) {
  const std::uint64_t lv = ix.slp.lengths[v];
  const std::uint64_t cap = std::min<std::uint64_t>(lv, p_len);
  Text tail;
  tail.reserve(cap);
  extract_val_into(ix.slp, v, lv - cap + 1, lv, tail);
  for (std::uint64_t k = 0; k < cap; ++k) {
    const Symbol a = tail[cap - 1 - k], b = pattern[p_len - 1 - k];
    if (a != b) return a < b ? Cmp::less : Cmp::greater;
  }
  return lv < p_len ? Cmp::less : Cmp::within;
}

// Binary searches over an order array, then confirms all four boundary
// neighbors with the exact comparator; on any disagreement (a fingerprint
// collision survived to the boundary) the whole search reruns exactly.
template <typename FastCmp, typename ExactCmp>
RankRange checked_range(const std::vector<std::uint32_t>& order, FastCmp&& fast,
                        ExactCmp&& exact) {
  auto range_with = [&](auto&& cmp) -> RankRange {
    const auto lo = std::partition_point(order.begin(), order.end(),
                                         [&](std::uint32_t v) { return cmp(v) == Cmp::less; });
    const auto hi = std::partition_point(
        lo, order.end(), [&](std::uint32_t v) { return cmp(v) != Cmp::greater; });
    return {static_cast<std::uint32_t>(lo - order.begin()),
            static_cast<std::uint32_t>(hi - order.begin())};
  };
  RankRange r = range_with(fast);
  bool ok = true;
  if (!r.empty())
    ok = exact(order[r.begin]) == Cmp::within && exact(order[r.end - 1]) == Cmp::within;
  if (ok && r.begin > 0) ok = exact(order[r.begin - 1]) == Cmp::less;
  if (ok && r.end < order.size()) ok = exact(order[r.end]) == Cmp::greater;
  if (!ok) r = range_with(exact);
  return r;
}

}  // namespace

RankRange suffix_range(const SelfIndex& index, SymbolSpan pattern,
                       const PatternFingerprints& pfp, std::size_t suffix_begin) {
  if (pattern.empty() || suffix_begin >= pattern.size())
    throw std::invalid_argument("bad pattern suffix");
  const std::size_t s_len = pattern.size() - suffix_begin;
  return checked_range(
      index.orders.by_val,
      [&](std::uint32_t v) { return compare_prefix(index, v, pattern, pfp, suffix_begin, s_len); },
      [&](std::uint32_t v) { return exact_compare_prefix(index, v, pattern, suffix_begin, s_len); });
}

RankRange prefix_range(const SelfIndex& index, SymbolSpan pattern,
                       const PatternFingerprints& pfp, std::size_t prefix_len) {
  if (prefix_len < 1 || prefix_len > pattern.size())
    throw std::invalid_argument("bad pattern prefix");
  return checked_range(
      index.orders.by_rval,
      [&](std::uint32_t v) { return compare_reversed(index, v, pattern, pfp, prefix_len); },
      [&](std::uint32_t v) { return exact_compare_reversed(index, v, pattern, prefix_len); });
}

std::vector<PartitionPair> enumerate_partition_pairs(SymbolSpan pattern) {
  const std::size_t m = pattern.size();
  if (m < 2) throw std::invalid_argument("partition pairs need a pattern of length >= 2");

  // Candidate right-side start positions (1-based): the significant suffixes,
  // plus a single copy of the final Lyndon factor when that factor repeats.
  // The lone-copy candidate covers occurrences whose right child derives
  // exactly one copy of the repeating factor; such splits fall at no
  // composed-factor boundary yet are realizable when the occurrence ends
  // flush with the rule's derived string.
  auto candidate_starts = [](SymbolSpan w) {
    const LyndonFactorization f = duval_factorize(w);
    std::vector<std::size_t> starts = significant_suffixes(w, f);
    const ComposedFactor& last = f.factors.back();
    if (last.exponent >= 2) starts.push_back(w.size() - last.length + 1);
    return starts;
  };

  std::vector<PartitionPair> pairs;
  for (std::size_t q : candidate_starts(pattern))
    if (q >= 2) pairs.push_back({q - 1, PartitionPair::Source::significant_suffix});
  pairs.push_back({1, PartitionPair::Source::single_head});
  if (m >= 3) {
    for (std::size_t q : candidate_starts(pattern.subspan(1)))
      if (q >= 2) pairs.push_back({q, PartitionPair::Source::head_prepended});
  }

  std::sort(pairs.begin(), pairs.end(), [](const PartitionPair& a, const PartitionPair& b) {
    return a.split != b.split ? a.split < b.split : a.source < b.source;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end(),
                          [](const PartitionPair& a, const PartitionPair& b) {
                            return a.split == b.split;
                          }),
              pairs.end());
  return pairs;
}

std::vector<PrimaryOccurrence> primary_occurrences(const SelfIndex& index, SymbolSpan pattern) {
  const std::size_t m = pattern.size();
  if (m < 2) throw std::invalid_argument("primary search needs a pattern of length >= 2");
  std::vector<PrimaryOccurrence> out;
  if (m > index.internal_length()) return out;

  const PatternFingerprints pfp(pattern, index.fp.base);
  Text got;
  for (const PartitionPair& pp : enumerate_partition_pairs(pattern)) {
    const RankRange xr = prefix_range(index, pattern, pfp, pp.split);
    if (xr.empty()) continue;
    const RankRange yr = suffix_range(index, pattern, pfp, pp.split);
    if (yr.empty()) continue;
    for (std::uint32_t v : grid_report(index.grid, xr, yr)) {
      const Rule& rule = index.slp.rules[v];
      if (index.slp.lengths[rule.left] < pp.split ||
          index.slp.lengths[rule.right] + pp.split < m)
        continue;
      const std::uint64_t off = index.slp.lengths[rule.left] - pp.split + 1;
      got.clear();
      extract_val_into(index.slp, v, off, off + m - 1, got);
      if (std::equal(got.begin(), got.end(), pattern.begin(), pattern.end()))
        out.push_back({v, off});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> secondary_expand(const SelfIndex& index,
                                            std::span<const PrimaryOccurrence> primaries) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> work;
  for (const PrimaryOccurrence& p : primaries)
    work.emplace_back(index.ag.host[p.variable],
                      p.offset + index.ag.host_offset[p.variable]);

  std::vector<std::uint64_t> internal;
  while (!work.empty()) {
    const auto [v, pos] = work.back();
    work.pop_back();
    if (v == index.ag.start) {
      internal.push_back(pos);
      continue;
    }
    for (const ParentOccurrence& po : index.parents[v])
      work.emplace_back(po.parent, pos + po.offset);
  }

  const std::uint64_t shift = index.slp.sentinel ? 1 : 0;
  std::vector<std::uint64_t> out;
  out.reserve(internal.size());
  for (std::uint64_t p : internal)
    if (p > shift) out.push_back(p - shift);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> locate(const SelfIndex& index, SymbolSpan pattern) {
  if (pattern.empty()) return {};
  if (pattern.size() > index.original_length()) return {};
  for (Symbol c : pattern)
    if (c >= index.terminal_of.size() || index.terminal_of[c] == 0) return {};
  if (index.slp.sentinel)
    for (Symbol c : pattern)
      if (c == kSentinel) return {};

  if (pattern.size() == 1) {
    const PrimaryOccurrence seed{index.terminal_of[pattern[0]], 1};
    return secondary_expand(index, std::span(&seed, 1));
  }
  const std::vector<PrimaryOccurrence> prim = primary_occurrences(index, pattern);
  return secondary_expand(index, prim);
}

SelfIndex build_index(SymbolSpan text, std::uint64_t seed) {
  SelfIndex index;
  index.seed = seed;
  index.slp = build_lyndon_slp(text);
  index.fp = build_fingerprints(index.slp, seed);
  {
    const Text internal = expand(index.slp, index.slp.start);
    index.orders = build_orders(index.slp, index.fp, internal);
  }
  index.grid = build_grid(index.slp, index.orders);
  ReducedGrammar reduced = reduce_r1(index.slp, false);
  index.ag = std::move(reduced.ag);
  index.parents = std::move(reduced.parents);
  rederive(index);
  return index;
}

void rederive(SelfIndex& index) {
  const std::uint32_t g = index.slp.variable_count();

  index.orders.rank_val.assign(g + 1, 0);
  index.orders.rank_rval.assign(g + 1, 0);
  for (std::uint32_t r = 0; r < g; ++r) {
    index.orders.rank_val[index.orders.by_val[r]] = r;
    index.orders.rank_rval[index.orders.by_rval[r]] = r;
  }

  Symbol max_symbol = 0;
  for (std::uint32_t v = 1; v <= g; ++v)
    if (index.slp.rules[v].kind == Rule::Kind::terminal)
      max_symbol = std::max(max_symbol, index.slp.rules[v].symbol);
  index.terminal_of.assign(std::max<std::size_t>(kAlphabetBound, max_symbol + 1), 0);
  for (std::uint32_t v = 1; v <= g; ++v)
    if (index.slp.rules[v].kind == Rule::Kind::terminal)
      index.terminal_of[index.slp.rules[v].symbol] = v;

  index.ag.start = index.slp.start;
  index.ag.alive.assign(g + 1, 0);
  for (std::uint32_t v = 1; v <= g; ++v) index.ag.alive[v] = index.ag.host[v] == v;

  index.grid.tree = WaveletTree(index.grid.ys, index.grid.labels, g);
}

Text extract_original(const SelfIndex& index, std::uint64_t i, std::uint64_t j) {
  const std::uint64_t n = index.original_length();
  if (i < 1 || j > n || i > j + 1) throw std::out_of_range("extraction range out of bounds");
  if (i > j) return {};
  const std::uint64_t shift = index.slp.sentinel ? 1 : 0;
  return extract(index.slp, i + shift, j + shift);
}

std::uint64_t lyndon_array_original(const SelfIndex& index, std::uint64_t i) {
  if (i < 1 || i > index.original_length()) throw std::out_of_range("position out of bounds");
  const std::uint64_t shift = index.slp.sentinel ? 1 : 0;
  return lyndon_array_entry(index.slp, i + shift);
}

}  // namespace lynslp
