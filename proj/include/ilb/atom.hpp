#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ilb/symbols.hpp"

namespace ilb {

// A term is a constant or a variable. Variables carry small non-negative ids
// local to one clause; both kinds pack into a single signed code.
class Term {
 public:
  Term() : code_(0) {}
  static Term constant(Id c) { return Term(c); }
  static Term variable(Id v) { return Term(-v - 1); }

  bool is_constant() const { return code_ >= 0; }
  bool is_variable() const { return code_ < 0; }
  Id id() const { return code_ >= 0 ? code_ : -code_ - 1; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  explicit Term(std::int32_t code) : code_(code) {}
  std::int32_t code_;
};

struct Atom {
  Id pred = -1;
  std::vector<Term> args;

  bool is_ground() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Predicate over constants only; arguments are constant ids.
struct GroundAtom {
  Id pred = -1;
  std::vector<Id> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

std::size_t hash_ids(std::span<const Id> ids, std::size_t seed = 0);

struct GroundAtomHash {
  std::size_t operator()(const GroundAtom& a) const {
    return hash_ids(a.args, static_cast<std::size_t>(a.pred) * 0x9e3779b97f4a7c15ull);
  }
};

Atom to_atom(const GroundAtom& g);
// Throws std::invalid_argument if the atom contains a variable.
GroundAtom to_ground(const Atom& a);

// Finite map from variable ids to terms, kept sorted by variable id.
class Substitution {
 public:
  // Adding a variable twice with a different image throws std::logic_error.
  void bind(Id var, Term image);
  bool bound(Id var) const;
  Term image(Id var) const;  // identity for unbound variables

  Term apply(Term t) const;
  Atom apply(const Atom& a) const;

  std::size_t size() const { return map_.size(); }
  const std::vector<std::pair<Id, Term>>& entries() const { return map_; }

  // compose(outer, inner): first inner, then outer.
  static Substitution compose(const Substitution& outer, const Substitution& inner);

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<std::pair<Id, Term>> map_;
};

// Conjunction of atoms plus distinctness groups: each group lists variables
// required pairwise distinct (the unique([...]) constraint). Groups normally
// name variables of the atoms; a stored feature body may also constrain a
// fresh variable against a variable of its enclosing rule.
struct Conjunction {
  std::vector<Atom> atoms;
  std::vector<std::vector<Id>> distinct_groups;

  // Variable ids in first-occurrence order (atoms left to right, arguments
  // left to right).
  std::vector<Id> variables() const;
  friend bool operator==(const Conjunction&, const Conjunction&) = default;
};

Conjunction apply(const Substitution& s, const Conjunction& c);

// Replaces each distinct constant with a fresh variable in first-occurrence
// order; returns the variabilized atoms and the inverse substitution mapping
// each new variable back to its constant.
std::pair<Conjunction, Substitution> variabilize(std::span<const GroundAtom> atoms);

std::string render(Term t, const SymbolTable& st);
std::string render(const Atom& a, const SymbolTable& st);
std::string render(const GroundAtom& a, const SymbolTable& st);
std::string render(const Conjunction& c, const SymbolTable& st);

}  // namespace ilb
