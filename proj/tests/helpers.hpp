#pragma once

#include <algorithm>
#include <random>
#include <string>

#include "lynslp/grammar.hpp"
#include "lynslp/text.hpp"

namespace lynslp::testing {

inline Text text_of(std::string_view bytes) { return ranks_from_bytes(bytes); }

/// Random text over ranks 1..sigma (plain small alphabet, not byte ranks).
inline Text random_text(std::mt19937_64& rng, std::size_t n, std::uint32_t sigma) {
  Text t(n);
  for (auto& c : t) c = 1 + static_cast<Symbol>(rng() % sigma);
  return t;
}

/// Id of the variable deriving exactly `bytes`, 0 when absent. Expands the
/// grammar, so test-scale only.
inline std::uint32_t id_deriving(const LyndonSlp& slp, std::string_view bytes) {
  const Text want = ranks_from_bytes(bytes);
  for (std::uint32_t v = 1; v <= slp.variable_count(); ++v) {
    if (slp.lengths[v] != want.size()) continue;
    if (expand(slp, v) == want) return v;
  }
  return 0;
}

/// Expansion of a reduced-grammar variable, by its expressions.
inline Text expand_ag(const AdmissibleGrammar& ag, std::uint32_t var) {
  Text out;
  auto walk = [&](auto&& self, std::uint32_t v) -> void {
    for (const AgSymbol& s : ag.exprs[v]) {
      if (s.is_variable)
        self(self, s.value);
      else
        out.push_back(s.value);
    }
  };
  walk(walk, var);
  return out;
}

}  // namespace lynslp::testing
