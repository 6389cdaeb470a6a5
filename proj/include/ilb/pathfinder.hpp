#pragma once

#include <string>
#include <vector>

#include "ilb/hypergraph.hpp"

namespace ilb {

// A connected, duplicate-free set of hyperedges covering every argument of
// one target example. Edges are kept sorted by fact id (construction order).
struct GroundPath {
  std::vector<FactId> edges;
  std::vector<Id> terminals;  // the example's argument constants, deduplicated

  std::vector<Id> vertex_set(const Hypergraph& g) const;  // sorted
};

// Every connected, duplicate-free edge set of size <= max_len whose vertices
// cover all argument constants of e. Search expands depth-first from the
// first argument constant; sets are emitted once, in discovery order.
std::vector<GroundPath> find_paths(const Hypergraph& g, const GroundAtom& e, int max_len);

// A target rule skeleton: variabilized example head plus variabilized path
// body. Head variables are numbered first.
struct CoreForm {
  Atom head;
  Conjunction body;
  int var_count = 0;
  std::string key;  // canonical rule key

  std::vector<Id> head_vars() const;
};

// Variabilizes (e, path) jointly per path and deduplicates by canonical key,
// keeping first-discovery order.
std::vector<CoreForm> extract_core_forms(const Hypergraph& g,
                                         const std::vector<GroundPath>& paths,
                                         const GroundAtom& e, const SymbolTable& st);

}  // namespace ilb
