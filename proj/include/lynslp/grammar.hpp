#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lynslp/text.hpp"

namespace lynslp {

struct Rule {
  enum class Kind : std::uint8_t { terminal, binary };

  Kind kind = Kind::terminal;
  Symbol symbol = 0;           // terminal payload
  std::uint32_t left = 0;      // binary payload, both smaller than the rule's id
  std::uint32_t right = 0;

  static Rule term(Symbol c) { return {Kind::terminal, c, 0, 0}; }
  static Rule bin(std::uint32_t l, std::uint32_t r) { return {Kind::binary, 0, l, r}; }
  bool operator==(const Rule&) const = default;
};

// Straight-line program whose variables all derive distinct Lyndon words and
// whose binary rules realize the standard factorization of the word they
// derive. Variable ids are 1-based and topologically ordered; rules[0] is a
// placeholder. The start variable derives the whole (possibly
// sentinel-prepended) text.
struct LyndonSlp {
  std::vector<Rule> rules;              // indexed by variable id, 1..g
  std::vector<std::uint64_t> lengths;   // |val(X_i)|, same indexing
  std::uint32_t start = 0;
  bool sentinel = false;                // val(start) begins with the sentinel rank

  std::uint32_t variable_count() const { return static_cast<std::uint32_t>(rules.size()) - 1; }
  std::uint64_t text_length() const { return lengths[start]; }
  bool operator==(const LyndonSlp&) const = default;
};

/// Builds the Lyndon SLP of `text` (a sentinel is prepended internally when
/// `text` is not a Lyndon word). Single right-to-left pass; subtrees are
/// deduplicated through a reverse dictionary keyed on the child pair, so the
/// grammar has one variable per distinct derived string.
LyndonSlp build_lyndon_slp(SymbolSpan text);

void expand_into(const LyndonSlp& slp, std::uint32_t var, Text& out);
Text expand(const LyndonSlp& slp, std::uint32_t var);

/// Total length of all right-hand sides (terminals count 1, binary rules 2).
std::uint64_t slp_size(const LyndonSlp& slp);

/// Levels in the derivation tree of the start variable; a lone terminal is 1.
std::uint32_t derivation_height(const LyndonSlp& slp);

/// Structural and semantic checks: topological ids, consistent lengths,
/// every derived string a Lyndon word, every split the standard
/// factorization, no duplicate derived strings. Returns human-readable
/// violations, empty when the grammar is valid. Expands every variable, so
/// intended for tests and the verify subcommand rather than large inputs.
std::vector<std::string> validate(const LyndonSlp& slp);

/// Renumbers variables by (derived length, derived string). Two grammars for
/// the same text are isomorphic iff their canonical forms compare equal.
/// Expands every variable; test-scale helper.
LyndonSlp canonicalize(const LyndonSlp& slp);

// ---- reduced grammar for occurrence expansion --------------------------

struct AgSymbol {
  bool is_variable = false;
  std::uint32_t value = 0;  // variable id, or terminal rank

  static AgSymbol var(std::uint32_t v) { return {true, v}; }
  static AgSymbol term(Symbol c) { return {false, c}; }
  bool operator==(const AgSymbol&) const = default;
};

// Admissible grammar obtained from a LyndonSlp by inlining every variable
// with a single right-hand-side occurrence (and optionally every terminal
// rule). Surviving variables keep their SLP ids. Removed variables carry a
// back-reference to the surviving host whose derived string contains their
// unique occurrence.
struct AdmissibleGrammar {
  std::vector<std::vector<AgSymbol>> exprs;  // by variable id; empty when removed
  std::vector<std::uint8_t> alive;           // by variable id
  std::uint32_t start = 0;
  std::vector<std::uint32_t> host;           // surviving variable containing X (X itself if alive)
  std::vector<std::uint64_t> host_offset;    // 0-based shift of val(X) inside val(host)

  std::uint64_t size() const;        // total expression length
  std::uint64_t rule_count() const;
};

struct ParentOccurrence {
  std::uint32_t parent = 0;     // surviving variable whose expression contains the child
  std::uint64_t offset = 0;     // 0-based shift of the occurrence inside val(parent)
  std::uint32_t index = 0;      // position within the parent's expression

  bool operator==(const ParentOccurrence&) const = default;
};

// One entry per occurrence of each surviving variable in the expressions of
// the reduced grammar; the start variable's list is empty.
using ParentMap = std::vector<std::vector<ParentOccurrence>>;

struct ReducedGrammar {
  AdmissibleGrammar ag;
  ParentMap parents;
};

/// Inlines single-occurrence variables until every surviving non-start
/// variable occurs at least twice. With `inline_terminal_rules`, terminal
/// rules are removed first and their occurrences replaced by raw symbols
/// (size-benchmark form; back-references are then only meaningful for
/// non-terminal variables).
ReducedGrammar reduce_r1(const LyndonSlp& slp, bool inline_terminal_rules = false);

}  // namespace lynslp
