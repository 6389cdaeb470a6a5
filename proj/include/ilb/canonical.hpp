#pragma once

#include <span>
#include <string>

#include "ilb/atom.hpp"

namespace ilb {

// Canonical keys identify conjunctions up to variable renaming plus atom
// reordering: equal keys iff alpha-equivalent (exact up to a permutation-cap
// fallback that can only split, never merge, classes). Atoms are sorted by a
// renaming-invariant key; the rendered key is then minimized over
// permutations within tied groups, with variables renamed in first-occurrence
// order. Distinctness groups participate in the key.
std::string canonical_key(const Conjunction& c, const SymbolTable& st);

// Same, but variables listed in `pinned` keep their identity (they are not
// renamed and compare by id). Used for features, whose core-form variables
// are fixed while fresh variables may be renamed.
std::string canonical_key_pinned(const Conjunction& c, const SymbolTable& st,
                                 std::span<const Id> pinned);

// Canonical key of head :- body. The head atom is fixed in first position
// (its variables anchor the renaming); body atoms reorder as above.
std::string canonical_rule_key(const Atom& head, const Conjunction& body,
                               const SymbolTable& st);

}  // namespace ilb
