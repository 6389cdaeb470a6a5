#pragma once

#include <functional>
#include <vector>

#include "ilb/atom.hpp"
#include "ilb/fact_base.hpp"

namespace ilb {

// Receives each grounding; return false to stop the enumeration early.
using MatchSink = std::function<bool(const Substitution&)>;

// Enumerates every substitution grounding all variables of c such that every
// substituted atom is a fact of db and all distinctness groups hold. The
// empty conjunction yields a single empty substitution. Enumeration order is
// deterministic given db construction order, and each grounding appears
// exactly once. `init` pre-binds variables (images must be constants).
void match(const Conjunction& c, const FactBase& db, const MatchSink& sink);
void match(const Conjunction& c, const FactBase& db, const Substitution& init,
           const MatchSink& sink);

std::vector<Substitution> match_all(const Conjunction& c, const FactBase& db);
std::vector<Substitution> match_all(const Conjunction& c, const FactBase& db,
                                    const Substitution& init);

}  // namespace ilb
