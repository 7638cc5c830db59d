#include "lynslp/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace lynslp::oracle {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxInput) throw std::invalid_argument("oracle input exceeds the size cap");
}

bool span_equal(SymbolSpan a, SymbolSpan b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool span_less(SymbolSpan a, SymbolSpan b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

bool naive_is_lyndon(SymbolSpan w) {
  check_size(w.size());
  if (w.empty()) return false;
  for (std::size_t q = 1; q < w.size(); ++q)
    if (!span_less(w, w.subspan(q))) return false;
  return true;
}

std::vector<std::uint64_t> naive_locate(SymbolSpan text, SymbolSpan pattern) {
  check_size(text.size());
  std::vector<std::uint64_t> hits;
  if (pattern.empty() || pattern.size() > text.size()) return hits;
  for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i)
    if (span_equal(text.subspan(i, pattern.size()), pattern)) hits.push_back(i + 1);
  return hits;
}

LyndonFactorization naive_lyndon_factorization(SymbolSpan s) {
  check_size(s.size());
  if (s.empty()) throw std::invalid_argument("cannot factorize an empty string");

  // Longest Lyndon prefix, stripped repeatedly.
  std::vector<std::pair<std::size_t, std::size_t>> plain;  // (start, length)
  std::size_t at = 0;
  while (at < s.size()) {
    std::size_t best = 1;
    for (std::size_t len = s.size() - at; len >= 1; --len) {
      if (naive_is_lyndon(s.subspan(at, len))) {
        best = len;
        break;
      }
    }
    plain.emplace_back(at, best);
    at += best;
  }

  LyndonFactorization out;
  for (const auto& [start, length] : plain) {
    if (!out.factors.empty()) {
      ComposedFactor& last = out.factors.back();
      if (last.length == length &&
          span_equal(s.subspan(last.start, length), s.subspan(start, length))) {
        ++last.exponent;
        continue;
      }
    }
    out.factors.push_back({start, length, 1});
  }

  // Smallest x such that every block suffix from x+1 on is a prefix of the
  // factor before it, straight from the definition.
  const std::size_t p = out.factors.size();
  for (std::size_t x = 1; x <= p; ++x) {
    bool ok = true;
    for (std::size_t y = x; y + 1 <= p && ok; ++y) {
      const ComposedFactor& fy = out.factors[y - 1];
      const std::size_t suffix_start = out.factors[y].start;
      const std::size_t suffix_len = s.size() - suffix_start;
      ok = suffix_len <= fy.length &&
           span_equal(s.subspan(suffix_start), s.subspan(fy.start, suffix_len));
    }
    if (ok) {
      out.lambda = x;
      break;
    }
  }
  return out;
}

namespace {

std::uint32_t naive_tree_node(SymbolSpan w, std::size_t b, std::size_t e, LyndonTree& tree) {
  if (e - b == 1) {
    tree.nodes.push_back({b, e, LyndonTree::npos, LyndonTree::npos});
    return static_cast<std::uint32_t>(tree.nodes.size() - 1);
  }
  // Longest proper Lyndon suffix: the earliest start q > b whose suffix of
  // the node span is Lyndon.
  std::size_t q = e - 1;
  for (std::size_t cand = b + 1; cand < e; ++cand) {
    if (naive_is_lyndon(w.subspan(cand, e - cand))) {
      q = cand;
      break;
    }
  }
  const std::uint32_t left = naive_tree_node(w, b, q, tree);
  const std::uint32_t right = naive_tree_node(w, q, e, tree);
  tree.nodes.push_back({b, e, left, right});
  return static_cast<std::uint32_t>(tree.nodes.size() - 1);
}

}  // namespace

LyndonTree naive_lyndon_tree(SymbolSpan w) {
  check_size(w.size());
  if (w.empty()) throw std::invalid_argument("cannot build a tree for an empty string");
  if (!naive_is_lyndon(w)) throw std::invalid_argument("input is not a Lyndon word");
  LyndonTree tree;
  tree.root = naive_tree_node(w, 0, w.size(), tree);
  return tree;
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> naive_primary_occurrences(
    const LyndonSlp& slp, SymbolSpan pattern) {
  check_size(slp.text_length());
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  if (pattern.empty()) return out;
  const std::size_t m = pattern.size();

  if (m == 1) {
    for (std::uint32_t v = 1; v <= slp.variable_count(); ++v)
      if (slp.rules[v].kind == Rule::Kind::terminal && slp.rules[v].symbol == pattern[0])
        out.emplace_back(v, 1);
    return out;
  }

  for (std::uint32_t v = 1; v <= slp.variable_count(); ++v) {
    const Rule& rule = slp.rules[v];
    if (rule.kind != Rule::Kind::binary || slp.lengths[v] < m) continue;
    const Text val = expand(slp, v);
    const std::uint64_t ll = slp.lengths[rule.left];
    for (std::uint64_t o = 1; o + m - 1 <= val.size(); ++o) {
      // crossing occurrences only: the match must straddle the split point
      if (!(o <= ll && ll < o + m - 1)) continue;
      if (span_equal(SymbolSpan(val).subspan(o - 1, m), pattern)) out.emplace_back(v, o);
    }
  }
  return out;
}

std::vector<std::uint64_t> naive_lyndon_array(SymbolSpan text) {
  check_size(text.size());
  std::vector<std::uint64_t> lyn(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (std::size_t len = text.size() - i; len >= 1; --len) {
      if (naive_is_lyndon(text.subspan(i, len))) {
        lyn[i] = len;
        break;
      }
    }
  }
  return lyn;
}

}  // namespace lynslp::oracle
