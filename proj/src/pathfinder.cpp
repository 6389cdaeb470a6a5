#include "ilb/pathfinder.hpp"

#include <algorithm>
#include <unordered_set>

#include "ilb/canonical.hpp"

namespace ilb {
namespace {

struct EdgeSetHash {
  std::size_t operator()(const std::vector<FactId>& edges) const {
    return hash_ids(edges);
  }
};

}  // namespace

std::vector<Id> GroundPath::vertex_set(const Hypergraph& g) const {
  std::vector<Id> out;
  for (FactId e : edges) {
    for (Id c : g.edge(e).args) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroundPath> find_paths(const Hypergraph& g, const GroundAtom& e, int max_len) {
  std::vector<GroundPath> out;
  if (e.args.empty()) return out;

  std::vector<Id> terminals = e.args;
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());

  Id start = e.args[0];
  if (!g.has_vertex(start)) return out;

  std::unordered_set<std::vector<FactId>, EdgeSetHash> seen;
  std::vector<FactId> set_edges;         // sorted by fact id
  std::vector<Id> covered_vertices;      // sorted
  std::unordered_set<FactId> in_set;

  auto covers_terminals = [&]() {
    return std::includes(covered_vertices.begin(), covered_vertices.end(),
                         terminals.begin(), terminals.end());
  };

  // Grows connected edge sets around the start vertex; every connected set
  // containing it is reachable through some addition order, and the seen-set
  // collapses reorderings.
  auto grow = [&](auto&& self) -> void {
    std::vector<FactId> candidates;
    for (Id v : covered_vertices) {
      for (FactId id : g.incident(v)) {
        if (!in_set.contains(id)) candidates.push_back(id);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (FactId id : candidates) {
      auto pos = std::lower_bound(set_edges.begin(), set_edges.end(), id);
      set_edges.insert(pos, id);
      if (seen.insert(set_edges).second) {
        std::vector<Id> prev_vertices = covered_vertices;
        for (Id c : g.edge(id).args) {
          auto vp = std::lower_bound(covered_vertices.begin(), covered_vertices.end(), c);
          if (vp == covered_vertices.end() || *vp != c) covered_vertices.insert(vp, c);
        }
        in_set.insert(id);
        if (covers_terminals()) out.push_back({set_edges, terminals});
        if (static_cast<int>(set_edges.size()) < max_len) self(self);
        in_set.erase(id);
        covered_vertices = std::move(prev_vertices);
      }
      set_edges.erase(std::lower_bound(set_edges.begin(), set_edges.end(), id));
    }
  };

  covered_vertices.push_back(start);
  grow(grow);
  return out;
}

std::vector<Id> CoreForm::head_vars() const {
  std::vector<Id> out;
  for (Term t : head.args) {
    if (t.is_variable() &&
        std::find(out.begin(), out.end(), t.id()) == out.end()) {
      out.push_back(t.id());
    }
  }
  return out;
}

std::vector<CoreForm> extract_core_forms(const Hypergraph& g,
                                         const std::vector<GroundPath>& paths,
                                         const GroundAtom& e, const SymbolTable& st) {
  std::vector<CoreForm> out;
  std::unordered_set<std::string> seen;
  for (const GroundPath& p : paths) {
    std::vector<GroundAtom> atoms;
    atoms.push_back(e);
    for (FactId id : p.edges) atoms.push_back(g.edge(id));
    auto [conj, inverse] = variabilize(atoms);
    (void)inverse;
    CoreForm cf;
    cf.head = conj.atoms.front();
    cf.body.atoms.assign(conj.atoms.begin() + 1, conj.atoms.end());
    cf.var_count = static_cast<int>(conj.variables().size());
    cf.key = canonical_rule_key(cf.head, cf.body, st);
    if (seen.insert(cf.key).second) out.push_back(std::move(cf));
  }
  return out;
}

}  // namespace ilb
