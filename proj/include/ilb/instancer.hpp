#pragma once

#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <vector>

#include "ilb/features.hpp"
#include "ilb/instancer_types.hpp"

namespace ilb {

// Ground head deduced by applying theta to the core form's head. Throws
// std::invalid_argument if a head variable is unbound.
GroundAtom deduce(const CoreForm& cf, const Substitution& theta);

// Closed world: +1 iff the head is a listed positive.
int label_of(const GroundAtom& head, const ExampleSet& ex);

ExampleSet make_example_set(std::vector<GroundAtom> positives, std::vector<GroundAtom> negatives,
                            const SymbolTable& st);

struct GenConfig {
  int max_core_form_len = 2;
  int max_feature_len = 2;
  int instances_per_core_form = 4000;
  int max_features = 64;
  std::uint64_t seed = 0;
};

// Full first-stage pipeline: hypergraph, core forms from the positives,
// grounding, closed-world labeling, seeded negative downsampling, feature
// computation, and frequency-truncated feature universes. Core forms come out
// sorted by canonical key; instances keep enumeration order within each core
// form. One instance per (core form, head, grounded edge set). Warnings for
// core forms without positive instances go to `warn` when given.
TrainingTable generate_instances(const FactBase& db, const ExampleSet& ex,
                                 const GenConfig& cfg, std::ostream* warn = nullptr);

// Tab-separated dump: core-form key, grounding, label, feature=count pairs.
std::string render_instance_table(const TrainingTable& table, const SymbolTable& st);

// Instances for scoring against a (possibly different) fact base using the
// trained core forms and feature universes. Labels are not assigned and no
// sampling happens. With `queries`, only groundings deducing one of the given
// heads are produced.
std::vector<Instance> enumerate_for_scoring(
    const FactBase& db, const std::vector<CoreForm>& core_forms,
    const std::vector<std::vector<Feature>>& features, int max_feature_len,
    const std::optional<std::vector<GroundAtom>>& queries);

}  // namespace ilb
