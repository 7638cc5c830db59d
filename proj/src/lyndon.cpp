#include "lynslp/lyndon.hpp"

#include <algorithm>
#include <stdexcept>

namespace lynslp {

bool is_lyndon(SymbolSpan s) {
  const std::size_t n = s.size();
  if (n == 0) throw std::invalid_argument("empty string has no Lyndon status");
  // Duval step on the whole string: s is Lyndon iff its longest Lyndon
  // prefix, of length j - k below, is s itself.
  std::size_t j = 1, k = 0;
  while (j < n && s[k] <= s[j]) {
    k = s[k] < s[j] ? 0 : k + 1;
    ++j;
  }
  return j == n && k == 0;
}

bool suffix_less(SymbolSpan s, std::size_t a, std::size_t b) {
  const std::size_t n = s.size();
  while (a < n && b < n) {
    if (s[a] != s[b]) return s[a] < s[b];
    ++a;
    ++b;
  }
  return a == n && b < n;  // shorter suffix wins iff it is a proper prefix
}

LyndonFactorization duval_factorize(SymbolSpan s) {
  const std::size_t n = s.size();
  if (n == 0) throw std::invalid_argument("cannot factorize an empty string");

  LyndonFactorization f;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1, k = i;
    while (j < n && s[k] <= s[j]) {
      k = s[k] < s[j] ? i : k + 1;
      ++j;
    }
    const std::size_t len = j - k;
    while (i <= k) {
      if (!f.factors.empty()) {
        auto& last = f.factors.back();
        if (last.length == len &&
            std::equal(s.begin() + last.start, s.begin() + last.start + len, s.begin() + i)) {
          ++last.exponent;
          i += len;
          continue;
        }
      }
      f.factors.push_back({i, len, 1});
      i += len;
    }
  }

  // lambda: walk blocks right to left while the suffix starting at the next
  // block is a prefix of the current factor.
  const std::size_t p = f.factors.size();
  f.lambda = 1;
  for (std::size_t x = p - 1; x >= 1; --x) {
    const ComposedFactor& fx = f.factors[x - 1];
    const std::size_t suffix_start = f.factors[x].start;
    const std::size_t suffix_len = n - suffix_start;
    if (suffix_len > fx.length ||
        !std::equal(s.begin() + suffix_start, s.end(), s.begin() + fx.start)) {
      f.lambda = x + 1;
      break;
    }
  }
  return f;
}

std::pair<SymbolSpan, SymbolSpan> standard_factorization(SymbolSpan w) {
  if (w.size() < 2) throw std::invalid_argument("standard factorization needs length >= 2");
  if (!is_lyndon(w)) throw std::invalid_argument("standard factorization needs a Lyndon word");
  // The longest proper Lyndon suffix of w is the last factor (single copy)
  // of the factorization of w without its first symbol: any longer suffix
  // starts inside or at an earlier factor and would have to be smaller than
  // its own prefix.
  const LyndonFactorization tail = duval_factorize(w.subspan(1));
  const std::size_t vlen = tail.factors.back().length;
  return {w.first(w.size() - vlen), w.subspan(w.size() - vlen)};
}

std::vector<std::size_t> significant_suffixes(SymbolSpan s, const LyndonFactorization& f) {
  (void)s;
  if (f.factors.empty() || f.lambda < 1 || f.lambda > f.factors.size())
    throw std::invalid_argument("malformed factorization");
  std::vector<std::size_t> starts;
  starts.reserve(f.factors.size() - f.lambda + 1);
  for (std::size_t x = f.lambda; x <= f.factors.size(); ++x)
    starts.push_back(f.factors[x - 1].start + 1);
  return starts;
}

}  // namespace lynslp
