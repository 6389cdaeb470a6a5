#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ilb/pathfinder.hpp"

namespace ilb {

// A context feature of one core form. Branch features touch exactly one
// core-form variable (the anchor) and keep every other constant; path
// features touch exactly two and variabilize the remaining constants into
// fresh variables (ids starting at the core form's var_count) carrying
// distinctness constraints against same-role variables.
struct Feature {
  bool is_path = false;
  Conjunction body;
  std::vector<Id> anchors;  // core variables touched, ascending
  std::string key;          // canonical key with core variables pinned
};

// Connected edge sets P' disjoint from the path whose vertex overlap with the
// path is exactly {anchor}. Emitted once each, discovery order.
void enumerate_branch_sets(const Hypergraph& g, const std::vector<FactId>& path_edges,
                           const std::vector<Id>& path_vertices, Id anchor, int max_len,
                           const std::function<void(const std::vector<FactId>&)>& sink);

// Connected edge sets P' disjoint from the path whose vertex overlap with the
// path is exactly two vertices. Emitted once each with their anchor pair.
void enumerate_path_sets(const Hypergraph& g, const std::vector<FactId>& path_edges,
                         const std::vector<Id>& path_vertices, int max_len,
                         const std::function<void(const std::vector<FactId>&, Id, Id)>& sink);

// Both feature families for one grounded path, aggregated up to
// alpha-equivalence (core variables fixed) with grounding multiplicities.
// Output is sorted by feature key. `theta` grounds the core form onto the
// path; for vertices bound by several core variables the first one wins.
std::vector<std::pair<Feature, int>> instance_features(
    const Hypergraph& g, const CoreForm& cf, const Substitution& theta,
    const std::vector<FactId>& path_edges, int max_feature_len, const SymbolTable& st);

}  // namespace ilb
