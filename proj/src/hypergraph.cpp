#include "ilb/hypergraph.hpp"

namespace ilb {

std::span<const FactId> Hypergraph::incident(Id constant) const {
  auto it = incidence.find(constant);
  if (it == incidence.end()) return {};
  return it->second;
}

Hypergraph build_hypergraph(const FactBase& db, Id target_pred) {
  Hypergraph g;
  g.db = &db;
  g.target_pred = target_pred;
  for (FactId id = 0; id < static_cast<FactId>(db.size()); ++id) {
    const GroundAtom& f = db.fact(id);
    if (f.pred == target_pred) continue;
    g.edges.push_back(id);
    for (Id c : f.args) {
      auto [it, fresh] = g.incidence.try_emplace(c);
      if (fresh) g.vertices.push_back(c);
      // An edge may mention a vertex several times; list it once.
      if (it->second.empty() || it->second.back() != id) it->second.push_back(id);
    }
  }
  return g;
}

}  // namespace ilb
