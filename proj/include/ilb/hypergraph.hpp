#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "ilb/fact_base.hpp"

namespace ilb {

// Relational facts as a hypergraph: constants are vertices, non-target ground
// atoms are hyperedges identified by their fact id. Incidence lists follow
// fact construction order.
struct Hypergraph {
  const FactBase* db = nullptr;
  Id target_pred = -1;
  std::vector<FactId> edges;
  std::vector<Id> vertices;  // first-occurrence order
  std::unordered_map<Id, std::vector<FactId>> incidence;

  bool has_vertex(Id constant) const { return incidence.contains(constant); }
  std::span<const FactId> incident(Id constant) const;
  const GroundAtom& edge(FactId id) const { return db->fact(id); }
};

// Facts of target_pred are excluded from the edge set.
Hypergraph build_hypergraph(const FactBase& db, Id target_pred);

}  // namespace ilb
