#pragma once

#include <cmath>
#include <memory>
#include <optional>

#include "ilb/instancer.hpp"
#include "ilb/rule_tree.hpp"

namespace ilb {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(p/(1-p)) clipped to [-c, c]; p=0 and p=1 land exactly on the bounds.
double clipped_logit(double p, double c);

struct BoostConfig {
  int rounds = 20;
  double margin_clip = 4.0;
  TreeConfig tree;
};

// One boosting round: one tree per core form (table order) and the round's
// confidence scale.
struct BoostRound {
  std::vector<RuleTree> trees;
  double alpha = 0.0;
};

struct BoostedModel {
  std::shared_ptr<SymbolTable> symbols;
  Id target = -1;
  int target_arity = 0;
  GenConfig gen;
  BoostConfig boost;
  std::vector<CoreForm> core_forms;
  std::vector<std::vector<Feature>> features;  // per core form
  std::vector<BoostRound> rounds;

  // Margin and probability assigned to a head no core form can deduce.
  double floor_margin() const;
  double floor_score() const { return sigmoid(floor_margin()); }
};

// Per-round training record, exposed for inspection and invariant checks.
struct TrainDiagnostics {
  std::vector<GroundAtom> examples;  // weight universe, fixed order
  std::vector<int> y;                // +1 / -1 per example
  std::vector<double> z;             // Z_t (pre-renormalization sum)
  std::vector<double> alpha;
  std::vector<std::vector<double>> weights;  // after each round's update
  std::vector<double> final_margin;          // F(e) = sum_t alpha_t m_t(e)
};

// Confidence-rated boosting over the example universe (deduced heads of the
// table, in table order, united with the labeled positives). Each round
// learns one tree per core form on instance weights projected from example
// weights (an instance inherits its example's full weight), aggregates
// per-example probabilities by noisy-or across trees, maps them to margins
// by clipped logit (uncovered examples get the -clip floor), picks alpha by
// line search on the weighted exponential loss, and reweights. Throws
// std::invalid_argument when the table is empty.
BoostedModel train_boosted(const TrainingTable& table, const ExampleSet& ex,
                           std::shared_ptr<SymbolTable> symbols, const GenConfig& gen,
                           const BoostConfig& cfg, TrainDiagnostics* diag = nullptr);

struct Prediction {
  GroundAtom head;
  double score = 0.0;
};

// Scores heads against a fact base sharing the model's symbol table. With
// queries, every queried head appears exactly once (undeducible ones at the
// floor score); otherwise all deducible heads appear. Sorted by descending
// score, ties by rendered head text.
std::vector<Prediction> predict_scores(
    const BoostedModel& m, const FactBase& db,
    const std::optional<std::vector<GroundAtom>>& queries = std::nullopt);

}  // namespace ilb
