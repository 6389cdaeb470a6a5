#include "ilb/features.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "ilb/canonical.hpp"

namespace ilb {
namespace {

struct EdgeSetHash {
  std::size_t operator()(const std::vector<FactId>& edges) const { return hash_ids(edges); }
};

bool sorted_contains(const std::vector<Id>& sorted, Id v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

using AdmitFn = std::function<bool(const std::vector<FactId>&, FactId)>;
using EmitFn = std::function<void(const std::vector<FactId>&)>;

// Enumerates connected edge sets of size <= max_len around `start`, gated by
// an admission predicate over (current set, candidate edge). The shared seen
// set collapses addition orders; admission must not depend on anything but
// the set contents, or sharing would be unsound.
class SetGrower {
 public:
  SetGrower(const Hypergraph& g, int max_len,
            std::unordered_set<std::vector<FactId>, EdgeSetHash>& seen)
      : g_(g), max_len_(max_len), seen_(seen) {}

  void grow(Id start, const AdmitFn& admit, const EmitFn& emit) {
    covered_.assign(1, start);
    set_edges_.clear();
    in_set_.clear();
    step(admit, emit);
  }

 private:
  void step(const AdmitFn& admit, const EmitFn& emit) {
    std::vector<FactId> candidates;
    for (Id v : covered_) {
      for (FactId id : g_.incident(v)) {
        if (!in_set_.contains(id) && admit(set_edges_, id)) candidates.push_back(id);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (FactId id : candidates) {
      auto pos = std::lower_bound(set_edges_.begin(), set_edges_.end(), id);
      set_edges_.insert(pos, id);
      if (seen_.insert(set_edges_).second) {
        std::vector<Id> prev = covered_;
        for (Id c : g_.edge(id).args) {
          auto vp = std::lower_bound(covered_.begin(), covered_.end(), c);
          if (vp == covered_.end() || *vp != c) covered_.insert(vp, c);
        }
        in_set_.insert(id);
        emit(set_edges_);
        if (static_cast<int>(set_edges_.size()) < max_len_) step(admit, emit);
        in_set_.erase(id);
        covered_ = std::move(prev);
      }
      set_edges_.erase(std::lower_bound(set_edges_.begin(), set_edges_.end(), id));
    }
  }

  const Hypergraph& g_;
  int max_len_;
  std::unordered_set<std::vector<FactId>, EdgeSetHash>& seen_;
  std::vector<Id> covered_;  // sorted
  std::vector<FactId> set_edges_;
  std::unordered_set<FactId> in_set_;
};

}  // namespace

void enumerate_branch_sets(const Hypergraph& g, const std::vector<FactId>& path_edges,
                           const std::vector<Id>& path_vertices, Id anchor, int max_len,
                           const std::function<void(const std::vector<FactId>&)>& sink) {
  if (!g.has_vertex(anchor) || max_len <= 0) return;
  std::unordered_set<FactId> path_set(path_edges.begin(), path_edges.end());
  std::unordered_set<std::vector<FactId>, EdgeSetHash> seen;
  SetGrower grower(g, max_len, seen);
  auto admit = [&](const std::vector<FactId>&, FactId id) {
    if (path_set.contains(id)) return false;
    for (Id c : g.edge(id).args) {
      if (c != anchor && sorted_contains(path_vertices, c)) return false;
    }
    return true;
  };
  grower.grow(anchor, admit, sink);
}

void enumerate_path_sets(const Hypergraph& g, const std::vector<FactId>& path_edges,
                         const std::vector<Id>& path_vertices, int max_len,
                         const std::function<void(const std::vector<FactId>&, Id, Id)>& sink) {
  if (max_len <= 0) return;
  std::unordered_set<FactId> path_set(path_edges.begin(), path_edges.end());

  auto touched_by = [&](const std::vector<FactId>& edges, FactId extra) {
    std::vector<Id> touched;
    auto visit = [&](FactId id) {
      for (Id c : g.edge(id).args) {
        if (sorted_contains(path_vertices, c) &&
            std::find(touched.begin(), touched.end(), c) == touched.end()) {
          touched.push_back(c);
        }
      }
    };
    for (FactId id : edges) visit(id);
    if (extra >= 0) visit(extra);
    std::sort(touched.begin(), touched.end());
    return touched;
  };

  // One seen set across all start vertices: a set touching {u,v} grows from
  // both, and admission depends only on set contents, so sharing is sound.
  // Starts iterate ascending, hence each set is emitted at its minimum
  // touched vertex exactly once.
  std::unordered_set<std::vector<FactId>, EdgeSetHash> seen;
  auto admit = [&](const std::vector<FactId>& current, FactId id) {
    if (path_set.contains(id)) return false;
    return touched_by(current, id).size() <= 2;
  };
  for (Id start : path_vertices) {
    if (!g.has_vertex(start)) continue;
    SetGrower grower(g, max_len, seen);
    auto emit = [&](const std::vector<FactId>& edges) {
      std::vector<Id> touched = touched_by(edges, -1);
      if (touched.size() == 2) sink(edges, touched[0], touched[1]);
    };
    grower.grow(start, admit, emit);
  }
}

namespace {

// First core variable bound to each path vertex.
std::unordered_map<Id, Id> vertex_vars(const CoreForm& cf, const Substitution& theta) {
  std::unordered_map<Id, Id> out;
  for (int v = 0; v < cf.var_count; ++v) {
    Term t = theta.image(static_cast<Id>(v));
    if (t.is_constant()) out.try_emplace(t.id(), static_cast<Id>(v));
  }
  return out;
}

// (pred, position) -> core body variables occupying that slot.
std::map<std::pair<Id, int>, std::vector<Id>> body_roles(const CoreForm& cf) {
  std::map<std::pair<Id, int>, std::vector<Id>> out;
  for (const Atom& a : cf.body.atoms) {
    for (std::size_t pos = 0; pos < a.args.size(); ++pos) {
      if (!a.args[pos].is_variable()) continue;
      auto& vars = out[{a.pred, static_cast<int>(pos)}];
      Id v = a.args[pos].id();
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Feature, int>> instance_features(
    const Hypergraph& g, const CoreForm& cf, const Substitution& theta,
    const std::vector<FactId>& path_edges, int max_feature_len, const SymbolTable& st) {
  GroundPath p{path_edges, {}};
  std::vector<Id> pv = p.vertex_set(g);
  auto var_of = vertex_vars(cf, theta);
  auto roles = body_roles(cf);
  std::vector<Id> core_vars = cf.body.variables();

  std::map<std::string, std::pair<Feature, int>> agg;
  auto add = [&](Feature f) {
    f.key = canonical_key_pinned(f.body, st, core_vars);
    auto it = agg.find(f.key);
    if (it == agg.end()) {
      std::string key = f.key;
      agg.emplace(std::move(key), std::make_pair(std::move(f), 1));
    } else {
      it->second.second += 1;
    }
  };

  // Branch features: the anchor vertex becomes its core variable, every other
  // constant stays itself.
  for (Id anchor : pv) {
    auto av = var_of.find(anchor);
    if (av == var_of.end()) continue;
    Id anchor_var = av->second;
    enumerate_branch_sets(g, path_edges, pv, anchor, max_feature_len,
                          [&](const std::vector<FactId>& edges) {
      Feature f;
      f.is_path = false;
      f.anchors = {anchor_var};
      for (FactId id : edges) {
        const GroundAtom& e = g.edge(id);
        Atom a;
        a.pred = e.pred;
        for (Id c : e.args) {
          a.args.push_back(c == anchor ? Term::variable(anchor_var) : Term::constant(c));
        }
        f.body.atoms.push_back(std::move(a));
      }
      add(std::move(f));
    });
  }

  // Path features: both anchor vertices become core variables, off-path
  // constants become fresh variables constrained against same-role variables.
  enumerate_path_sets(g, path_edges, pv, max_feature_len,
                      [&](const std::vector<FactId>& edges, Id u, Id v) {
    auto uv = var_of.find(u);
    auto vv = var_of.find(v);
    if (uv == var_of.end() || vv == var_of.end()) return;
    Feature f;
    f.is_path = true;
    f.anchors = {uv->second, vv->second};
    std::sort(f.anchors.begin(), f.anchors.end());
    f.anchors.erase(std::unique(f.anchors.begin(), f.anchors.end()), f.anchors.end());
    std::unordered_map<Id, Id> fresh;  // constant -> fresh variable
    for (FactId id : edges) {
      const GroundAtom& e = g.edge(id);
      Atom a;
      a.pred = e.pred;
      for (Id c : e.args) {
        if (c == u) {
          a.args.push_back(Term::variable(uv->second));
        } else if (c == v) {
          a.args.push_back(Term::variable(vv->second));
        } else {
          auto it = fresh.find(c);
          if (it == fresh.end()) {
            it = fresh.emplace(c, cf.var_count + static_cast<Id>(fresh.size())).first;
          }
          a.args.push_back(Term::variable(it->second));
        }
      }
      f.body.atoms.push_back(std::move(a));
    }
    // Roles of each fresh variable within the feature body.
    std::map<Id, std::vector<std::pair<Id, int>>> fresh_roles;
    for (const Atom& a : f.body.atoms) {
      for (std::size_t pos = 0; pos < a.args.size(); ++pos) {
        Term t = a.args[pos];
        if (t.is_variable() && t.id() >= cf.var_count) {
          auto& r = fresh_roles[t.id()];
          std::pair<Id, int> role{a.pred, static_cast<int>(pos)};
          if (std::find(r.begin(), r.end(), role) == r.end()) r.push_back(role);
        }
      }
    }
    for (const auto& [fv, frs] : fresh_roles) {
      std::vector<Id> aliased;
      for (const auto& role : frs) {
        auto it = roles.find(role);
        if (it == roles.end()) continue;
        for (Id cv : it->second) {
          if (std::find(aliased.begin(), aliased.end(), cv) == aliased.end()) {
            aliased.push_back(cv);
          }
        }
      }
      std::sort(aliased.begin(), aliased.end());
      for (Id cv : aliased) f.body.distinct_groups.push_back({fv, cv});
    }
    // Same-role fresh pairs within this feature.
    std::vector<Id> fresh_ids;
    for (const auto& [fv, frs] : fresh_roles) {
      (void)frs;
      fresh_ids.push_back(fv);
    }
    for (std::size_t i = 0; i < fresh_ids.size(); ++i) {
      for (std::size_t j = i + 1; j < fresh_ids.size(); ++j) {
        const auto& ri = fresh_roles[fresh_ids[i]];
        const auto& rj = fresh_roles[fresh_ids[j]];
        bool overlap = std::any_of(ri.begin(), ri.end(), [&](const auto& r) {
          return std::find(rj.begin(), rj.end(), r) != rj.end();
        });
        if (overlap) f.body.distinct_groups.push_back({fresh_ids[i], fresh_ids[j]});
      }
    }
    add(std::move(f));
  });

  std::vector<std::pair<Feature, int>> out;
  out.reserve(agg.size());
  for (auto& [key, fc] : agg) {
    (void)key;
    out.push_back(std::move(fc));
  }
  return out;
}

}  // namespace ilb
