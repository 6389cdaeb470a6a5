#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ilb/atom.hpp"
#include "ilb/fact_base.hpp"

namespace ilb {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Fact files: one ground atom per line, `pred(c1,...,cn).`, `%` comments,
// identifiers [a-z][A-Za-z0-9_]*. Duplicates collapse silently. Throws
// ParseError (with line number) on malformed input, variables, nested terms,
// or an arity conflict.
FactBase parse_facts(std::istream& in, std::shared_ptr<SymbolTable> symbols);
FactBase parse_facts(std::string_view text, std::shared_ptr<SymbolTable> symbols);
FactBase parse_facts_file(const std::string& path, std::shared_ptr<SymbolTable> symbols);

// One rule of a probabilistic logic program.
struct ParsedRule {
  double prob = 0.0;
  Atom head;
  // Parenthesized conjunct groups flatten left to right; unique([...])
  // literals populate distinct_groups of the whole body.
  Conjunction body;
  int var_count = 0;
};

enum class VariableNaming {
  kFirstOccurrence,  // ids assigned by first occurrence within each rule
  kNumericSuffix,    // names must be V<digits>; id = suffix value
};

// Rule files: `<p>::<head> :- <body>.` one rule per line, `%` comments.
// Variables are uppercase-initial identifiers scoped per rule.
std::vector<ParsedRule> parse_program(std::istream& in, SymbolTable& symbols,
                                      VariableNaming naming = VariableNaming::kFirstOccurrence);
std::vector<ParsedRule> parse_program(std::string_view text, SymbolTable& symbols,
                                      VariableNaming naming = VariableNaming::kFirstOccurrence);

// Single ground atom, no trailing dot required: `pred(c1,...,cn)`.
GroundAtom parse_ground_atom(std::string_view text, SymbolTable& symbols);

// Single atom, variables allowed, no trailing dot.
Atom parse_atom(std::string_view text, SymbolTable& symbols,
                VariableNaming naming = VariableNaming::kNumericSuffix);

// Comma-separated atoms and unique([...]) literals — the render() format of a
// conjunction. Variables are scoped to this one conjunction.
Conjunction parse_conjunction(std::string_view text, SymbolTable& symbols,
                              VariableNaming naming = VariableNaming::kNumericSuffix);

}  // namespace ilb
