#pragma once

#include <unordered_set>
#include <vector>

#include "ilb/features.hpp"

namespace ilb {

// Labeled examples of one target predicate. Negatives are optional and only
// constrain evaluation; labeling is closed-world.
struct ExampleSet {
  Id target = -1;
  std::vector<GroundAtom> positives;  // file order, deduplicated
  std::vector<GroundAtom> negatives;
  std::unordered_set<GroundAtom, GroundAtomHash> positive_set;
  std::unordered_set<GroundAtom, GroundAtomHash> negative_set;
};

// One grounding of one core form, keyed by (core form, head, edge set).
struct Instance {
  int core_form = 0;
  Substitution grounding;
  GroundAtom head;
  std::vector<FactId> path_edges;               // sorted by fact id
  int label = 0;                                // +1 / -1; 0 when unlabeled
  std::vector<std::pair<int, int>> features;    // (feature id, count), id-sorted
};

struct TrainingTable {
  std::vector<CoreForm> core_forms;             // canonical-key order
  std::vector<std::vector<Feature>> features;   // per core form, id = position
  std::vector<Instance> instances;              // grouped by core form
  std::vector<std::pair<int, int>> cf_ranges;   // [begin, end) into instances
};

}  // namespace ilb
