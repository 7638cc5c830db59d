#include "lynslp/grammar.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "lynslp/lyndon.hpp"

namespace lynslp {

namespace {

constexpr std::uint32_t kNone = 0;

std::uint64_t child_key(std::uint32_t l, std::uint32_t r) {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}

// Rank of every suffix in sorted suffix order, by prefix doubling with two
// counting-sort passes per round. Keeps the construction loop's suffix
// comparisons O(1) even on highly repetitive inputs, where direct scans
// degenerate quadratically.
std::vector<std::uint32_t> suffix_ranks(SymbolSpan s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n), rnk(n), tmp(n), order(n);
  for (std::size_t i = 0; i < n; ++i) sa[i] = static_cast<std::uint32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return s[a] < s[b]; });
  rnk[sa[0]] = 0;
  for (std::size_t i = 1; i < n; ++i) rnk[sa[i]] = rnk[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]]);

  std::vector<std::uint32_t> cnt;
  for (std::size_t k = 1; k < n && rnk[sa[n - 1]] != n - 1; k <<= 1) {
    auto key2 = [&](std::uint32_t i) -> std::uint32_t {
      return i + k < n ? rnk[i + k] + 1 : 0;
    };
    cnt.assign(n + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[key2(static_cast<std::uint32_t>(i)) + 1];
    for (std::size_t v = 1; v < cnt.size(); ++v) cnt[v] += cnt[v - 1];
    for (std::size_t i = 0; i < n; ++i)
      order[cnt[key2(static_cast<std::uint32_t>(i))]++] = static_cast<std::uint32_t>(i);

    cnt.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rnk[i] + 1];
    for (std::size_t v = 1; v < cnt.size(); ++v) cnt[v] += cnt[v - 1];
    for (std::size_t i = 0; i < n; ++i) sa[cnt[rnk[order[i]]]++] = order[i];

    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const bool differ =
          rnk[sa[i]] != rnk[sa[i - 1]] || key2(sa[i]) != key2(sa[i - 1]);
      tmp[sa[i]] = tmp[sa[i - 1]] + differ;
    }
    rnk.swap(tmp);
  }
  return rnk;
}

}  // namespace

LyndonSlp build_lyndon_slp(SymbolSpan original) {
  if (original.empty()) throw std::invalid_argument("cannot build a grammar for an empty text");

  const bool sentinel = !is_lyndon(original);
  Text buffer;
  SymbolSpan text = original;
  if (sentinel) {
    buffer.reserve(original.size() + 1);
    buffer.push_back(kSentinel);
    buffer.insert(buffer.end(), original.begin(), original.end());
    text = buffer;
  }
  const std::size_t n = text.size();

  LyndonSlp slp;
  slp.sentinel = sentinel;
  slp.rules.push_back(Rule{});  // id 0 unused
  slp.lengths.push_back(0);

  std::unordered_map<Symbol, std::uint32_t> term_var;
  std::unordered_map<std::uint64_t, std::uint32_t> rev;  // (left, right) -> variable
  rev.reserve(2 * n);

  auto terminal = [&](Symbol c) -> std::uint32_t {
    auto [it, fresh] = term_var.try_emplace(c, 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(slp.rules.size());
      slp.rules.push_back(Rule::term(c));
      slp.lengths.push_back(1);
    }
    return it->second;
  };
  auto binary = [&](std::uint32_t l, std::uint32_t r) -> std::uint32_t {
    auto [it, fresh] = rev.try_emplace(child_key(l, r), 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(slp.rules.size());
      slp.rules.push_back(Rule::bin(l, r));
      slp.lengths.push_back(slp.lengths[l] + slp.lengths[r]);
    }
    return it->second;
  };

  // Small inputs compare suffixes by direct scan; larger ones go through
  // precomputed suffix ranks.
  std::vector<std::uint32_t> rnk;
  if (n >= 4096) rnk = suffix_ranks(text);
  auto current_suffix_less = [&](std::size_t i, std::size_t j) {
    return rnk.empty() ? suffix_less(text, i, j) : rnk[i] < rnk[j];
  };

  // Same right-to-left merge loop as the Lyndon tree construction, with
  // nodes replaced by grammar variables; the reverse dictionary makes equal
  // subtrees share one variable.
  struct Root {
    std::uint32_t var;
    std::size_t start;
  };
  std::vector<Root> stack;
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t cur = terminal(text[i]);
    while (!stack.empty() && current_suffix_less(i, stack.back().start)) {
      cur = binary(cur, stack.back().var);
      stack.pop_back();
    }
    stack.push_back({cur, i});
  }

  assert(stack.size() == 1);
  slp.start = stack.back().var;
  assert(slp.start == slp.variable_count());
  assert(slp.text_length() == n);
  return slp;
}

void expand_into(const LyndonSlp& slp, std::uint32_t var, Text& out) {
  if (var == kNone || var > slp.variable_count())
    throw std::out_of_range("variable id out of range");
  std::vector<std::uint32_t> todo{var};
  while (!todo.empty()) {
    const std::uint32_t v = todo.back();
    todo.pop_back();
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::terminal) {
      out.push_back(rule.symbol);
    } else {
      todo.push_back(rule.right);
      todo.push_back(rule.left);
    }
  }
}

Text expand(const LyndonSlp& slp, std::uint32_t var) {
  Text out;
  out.reserve(var <= slp.variable_count() && var > 0 ? slp.lengths[var] : 0);
  expand_into(slp, var, out);
  return out;
}

std::uint64_t slp_size(const LyndonSlp& slp) {
  std::uint64_t total = 0;
  for (std::uint32_t v = 1; v <= slp.variable_count(); ++v)
    total += slp.rules[v].kind == Rule::Kind::terminal ? 1 : 2;
  return total;
}

std::uint32_t derivation_height(const LyndonSlp& slp) {
  const std::uint32_t g = slp.variable_count();
  std::vector<std::uint32_t> height(g + 1, 0);
  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = slp.rules[v];
    height[v] = rule.kind == Rule::Kind::terminal
                    ? 1
                    : 1 + std::max(height[rule.left], height[rule.right]);
  }
  return height[slp.start];
}

std::vector<std::string> validate(const LyndonSlp& slp) {
  std::vector<std::string> violations;
  auto flag = [&](std::uint32_t v, const std::string& what) {
    violations.push_back("rule " + std::to_string(v) + ": " + what);
  };

  const std::uint32_t g = slp.variable_count();
  if (g == 0) return {"grammar has no rules"};
  if (slp.lengths.size() != slp.rules.size()) return {"length table size mismatch"};
  if (slp.start != g) violations.push_back("start variable is not the last rule");

  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::terminal) {
      if (slp.lengths[v] != 1) flag(v, "terminal with derived length != 1");
      continue;
    }
    if (rule.left == kNone || rule.right == kNone || rule.left >= v || rule.right >= v) {
      flag(v, "child ids must be smaller than the rule id");
      return violations;  // structure too broken for the semantic checks
    }
    if (slp.lengths[v] != slp.lengths[rule.left] + slp.lengths[rule.right])
      flag(v, "derived length is not the sum of the children");
  }

  // Semantic checks expand one variable at a time.
  Text val;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_len_hash;
  for (std::uint32_t v = 1; v <= g; ++v) {
    val.clear();
    expand_into(slp, v, val);
    if (!is_lyndon(val)) {
      flag(v, "derived string is not a Lyndon word");
      continue;
    }
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::binary) {
      const auto [u, w] = standard_factorization(val);
      if (u.size() != slp.lengths[rule.left])
        flag(v, "split is not the standard factorization");
      (void)w;
    }
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the symbols
    for (Symbol c : val) {
      h ^= c;
      h *= 1099511628211ull;
    }
    by_len_hash[h ^ (val.size() * 0x9e3779b97f4a7c15ull)].push_back(v);
  }

  // Hash buckets are confirmed by real comparison before reporting.
  for (auto& [key, vars] : by_len_hash) {
    (void)key;
    if (vars.size() < 2) continue;
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t b = a + 1; b < vars.size(); ++b)
        if (expand(slp, vars[a]) == expand(slp, vars[b]))
          flag(vars[b], "duplicate derived string (same as rule " + std::to_string(vars[a]) + ")");
  }

  return violations;
}

LyndonSlp canonicalize(const LyndonSlp& slp) {
  const std::uint32_t g = slp.variable_count();
  std::vector<std::uint32_t> order(g);
  for (std::uint32_t v = 0; v < g; ++v) order[v] = v + 1;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (slp.lengths[a] != slp.lengths[b]) return slp.lengths[a] < slp.lengths[b];
    const Text va = expand(slp, a), vb = expand(slp, b);
    if (va != vb) return va < vb;
    return a < b;
  });

  std::vector<std::uint32_t> renamed(g + 1, 0);
  for (std::uint32_t rank = 0; rank < g; ++rank) renamed[order[rank]] = rank + 1;

  LyndonSlp out;
  out.sentinel = slp.sentinel;
  out.rules.push_back(Rule{});
  out.lengths.push_back(0);
  for (std::uint32_t rank = 0; rank < g; ++rank) {
    const Rule& rule = slp.rules[order[rank]];
    out.rules.push_back(rule.kind == Rule::Kind::terminal
                            ? rule
                            : Rule::bin(renamed[rule.left], renamed[rule.right]));
    out.lengths.push_back(slp.lengths[order[rank]]);
  }
  out.start = renamed[slp.start];
  return out;
}

std::uint64_t AdmissibleGrammar::size() const {
  std::uint64_t total = 0;
  for (const auto& e : exprs) total += e.size();
  return total;
}

std::uint64_t AdmissibleGrammar::rule_count() const {
  std::uint64_t total = 0;
  for (std::size_t v = 1; v < alive.size(); ++v) total += alive[v] != 0;
  return total;
}

ReducedGrammar reduce_r1(const LyndonSlp& slp, bool inline_terminal_rules) {
  const std::uint32_t g = slp.variable_count();

  // Occurrence counts over the right-hand sides. Inlining moves symbols but
  // never copies or drops them, so the counts below already decide the final
  // surviving set: a variable is gone iff it occurs exactly once (or is a
  // terminal rule in benchmark form).
  std::vector<std::uint64_t> occ(g + 1, 0);
  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = slp.rules[v];
    if (rule.kind == Rule::Kind::binary) {
      ++occ[rule.left];
      ++occ[rule.right];
    }
  }

  auto removed = [&](std::uint32_t v) {
    if (v == slp.start) return false;
    if (occ[v] == 1) return true;
    return inline_terminal_rules && slp.rules[v].kind == Rule::Kind::terminal;
  };

  ReducedGrammar out;
  AdmissibleGrammar& ag = out.ag;
  ag.start = slp.start;
  ag.exprs.assign(g + 1, {});
  ag.alive.assign(g + 1, 0);
  ag.host.assign(g + 1, 0);
  ag.host_offset.assign(g + 1, 0);

  auto seed_expr = [&](std::uint32_t v) {
    const Rule& rule = slp.rules[v];
    std::vector<AgSymbol> e;
    if (rule.kind == Rule::Kind::terminal) {
      e.push_back(AgSymbol::term(rule.symbol));
    } else {
      e.push_back(AgSymbol::var(rule.left));
      e.push_back(AgSymbol::var(rule.right));
    }
    return e;
  };

  // Flatten each survivor once, splicing removed variables in place. The
  // walk records where each removed variable's unique occurrence lands, so
  // occurrences can later be lifted into a surviving host in O(1).
  for (std::uint32_t v = 1; v <= g; ++v) {
    if (removed(v)) continue;
    ag.alive[v] = 1;
    ag.host[v] = v;

    std::vector<AgSymbol>& flat = ag.exprs[v];
    std::uint64_t offset = 0;

    // Depth-first over the rule bodies; only removed variables are entered.
    std::vector<std::pair<std::vector<AgSymbol>, std::size_t>> walk;
    walk.emplace_back(seed_expr(v), 0);
    while (!walk.empty()) {
      auto& [expr, next] = walk.back();
      if (next == expr.size()) {
        walk.pop_back();
        continue;
      }
      const AgSymbol sym = expr[next++];
      if (!sym.is_variable) {
        flat.push_back(sym);
        ++offset;
      } else if (removed(sym.value)) {
        if (ag.host[sym.value] == 0) {
          ag.host[sym.value] = v;
          ag.host_offset[sym.value] = offset;
        }
        walk.emplace_back(seed_expr(sym.value), 0);
      } else {
        flat.push_back(sym);
        offset += slp.lengths[sym.value];
      }
    }
  }

  // Parent occurrences over the final expressions.
  out.parents.assign(g + 1, {});
  for (std::uint32_t v = 1; v <= g; ++v) {
    if (!ag.alive[v]) continue;
    std::uint64_t offset = 0;
    const auto& expr = ag.exprs[v];
    for (std::uint32_t k = 0; k < expr.size(); ++k) {
      if (expr[k].is_variable) {
        out.parents[expr[k].value].push_back({v, offset, k});
        offset += slp.lengths[expr[k].value];
      } else {
        ++offset;
      }
    }
  }

  return out;
}

}  // namespace lynslp
