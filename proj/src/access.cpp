#include "lynslp/access.hpp"

#include <stdexcept>

namespace lynslp {

namespace {

void check_var(const LyndonSlp& slp, std::uint32_t var) {
  if (var == 0 || var > slp.variable_count())
    throw std::out_of_range("variable id out of range");
}

}  // namespace

void extract_val_into(const LyndonSlp& slp, std::uint32_t var, std::uint64_t i, std::uint64_t j,
                      Text& out) {
  check_var(slp, var);
  if (i < 1 || j > slp.lengths[var] || i > j + 1)
    throw std::out_of_range("extraction range out of bounds");
  if (i > j) return;

  struct Piece {
    std::uint32_t var;
    std::uint64_t i, j;  // 1-based inclusive inside val(var)
  };
  std::vector<Piece> todo{{var, i, j}};
  while (!todo.empty()) {
    const Piece p = todo.back();
    todo.pop_back();
    const Rule& rule = slp.rules[p.var];
    if (rule.kind == Rule::Kind::terminal) {
      out.push_back(rule.symbol);
      continue;
    }
    const std::uint64_t ll = slp.lengths[rule.left];
    if (p.j <= ll) {
      todo.push_back({rule.left, p.i, p.j});
    } else if (p.i > ll) {
      todo.push_back({rule.right, p.i - ll, p.j - ll});
    } else {
      todo.push_back({rule.right, 1, p.j - ll});
      todo.push_back({rule.left, p.i, ll});
    }
  }
}

Text extract(const LyndonSlp& slp, std::uint64_t i, std::uint64_t j) {
  Text out;
  if (j >= i) out.reserve(j - i + 1);
  extract_val_into(slp, slp.start, i, j, out);
  return out;
}

Symbol symbol_at(const LyndonSlp& slp, std::uint32_t var, std::uint64_t k) {
  check_var(slp, var);
  if (k < 1 || k > slp.lengths[var]) throw std::out_of_range("symbol position out of bounds");
  while (slp.rules[var].kind == Rule::Kind::binary) {
    const Rule& rule = slp.rules[var];
    const std::uint64_t ll = slp.lengths[rule.left];
    if (k <= ll) {
      var = rule.left;
    } else {
      var = rule.right;
      k -= ll;
    }
  }
  return slp.rules[var].symbol;
}

std::uint64_t prefix_fingerprint(const LyndonSlp& slp, const FingerprintTable& fp,
                                 std::uint32_t var, std::uint64_t k) {
  check_var(slp, var);
  if (k > slp.lengths[var]) throw std::out_of_range("prefix length out of bounds");
  std::uint64_t acc = 0;  // fingerprint of the part of the prefix already passed
  while (true) {
    if (k == 0) return acc;
    if (k == slp.lengths[var]) return m61::add(m61::mul(acc, fp.shift[var]), fp.value[var]);
    const Rule& rule = slp.rules[var];
    const std::uint64_t ll = slp.lengths[rule.left];
    if (k <= ll) {
      var = rule.left;
    } else {
      acc = m61::add(m61::mul(acc, fp.shift[rule.left]), fp.value[rule.left]);
      k -= ll;
      var = rule.right;
    }
  }
}

std::uint64_t suffix_fingerprint(const LyndonSlp& slp, const FingerprintTable& fp,
                                 std::uint32_t var, std::uint64_t k) {
  check_var(slp, var);
  const std::uint64_t len = slp.lengths[var];
  if (k > len) throw std::out_of_range("suffix length out of bounds");
  const std::uint64_t head = prefix_fingerprint(slp, fp, var, len - k);
  return m61::sub(fp.value[var], m61::mul(head, m61::pow(fp.base, k)));
}

std::uint64_t fingerprint(const LyndonSlp& slp, const FingerprintTable& fp, std::uint64_t i,
                          std::uint64_t j) {
  if (i < 1 || j > slp.text_length() || i > j)
    throw std::out_of_range("fingerprint range out of bounds");
  const std::uint64_t pj = prefix_fingerprint(slp, fp, slp.start, j);
  const std::uint64_t pi = prefix_fingerprint(slp, fp, slp.start, i - 1);
  return m61::sub(pj, m61::mul(pi, m61::pow(fp.base, j - i + 1)));
}

std::uint64_t lyndon_array_entry(const LyndonSlp& slp, std::uint64_t i) {
  if (i < 1 || i > slp.text_length()) throw std::out_of_range("position out of bounds");
  // The answer is the span of the highest derivation-tree node that starts
  // at position i; the descent below visits candidates top-down and stops at
  // the first node whose left boundary lands on i.
  std::uint32_t var = slp.start;
  std::uint64_t begin = 1;
  while (begin != i) {
    const Rule& rule = slp.rules[var];
    const std::uint64_t ll = slp.lengths[rule.left];
    if (i < begin + ll) {
      var = rule.left;
    } else {
      begin += ll;
      var = rule.right;
    }
  }
  return slp.lengths[var];
}

}  // namespace lynslp
