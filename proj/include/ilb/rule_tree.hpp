#pragma once

#include <span>
#include <string>
#include <vector>

#include "ilb/instancer_types.hpp"

namespace ilb {

// 1 - prod(1 - p_i); empty -> 0. Throws std::domain_error outside [0,1].
double noisy_or(std::span<const double> ps);

struct TreeConfig {
  int max_depth = 4;
  int node_literal_cap = 2;
  double min_leaf_weight_frac = 0.01;  // of the root weight
};

// Internal nodes test count(feature) >= threshold; leaves carry the
// Laplace-smoothed positive proportion of their weight mass.
struct TreeNode {
  bool is_leaf = false;
  int feature = -1;
  int threshold = 0;
  int true_child = -1;
  int false_child = -1;
  double p_hat = 0.0;
  double w_pos = 0.0;
  double w_neg = 0.0;
};

struct RuleTree {
  int root = -1;
  std::vector<TreeNode> nodes;
};

// Greedy top-down induction over count>=k splits, maximizing weighted
// entropy gain (ties: smaller k, then smaller feature id). Only features
// with at most node_literal_cap atoms are eligible. Stops on max_depth,
// node weight below min_leaf_weight_frac x root weight, purity, or no
// positive gain. Weights are rescaled to mean 1 internally, so the tree and
// its leaf values are invariant under uniform weight scaling, and uniform
// weights give the unweighted Laplace estimate (n+ + 1)/(n + 2). Throws
// std::invalid_argument when instances is empty or sizes disagree.
RuleTree learn_tree(std::span<const Instance> instances, std::span<const double> weights,
                    std::span<const Feature> features, const TreeConfig& cfg);

int leaf_of(const RuleTree& t, const Instance& x);
double score_instance(const RuleTree& t, const Instance& x);

// One root-to-leaf step: the test outcome that routes toward the leaf.
struct RuleCondition {
  int feature = -1;
  int threshold = 0;
  bool is_true_branch = false;
};

struct ProblogRule {
  double prob = 0.0;
  Atom head;
  // Conjunct groups: the core-form body first, then threshold-many freshly
  // renamed copies of each true-branch feature.
  std::vector<Conjunction> groups;
  std::vector<std::vector<Id>> unique_groups;
  std::vector<RuleCondition> route;  // full route, false branches included
  int leaf = -1;
};

// One rule per leaf. False-branch ancestors are omitted from the body (the
// route still records them); each true-branch ancestor (feature, k)
// contributes k copies of the feature with fresh variables, and every
// original fresh variable yields a distinctness group over its copies plus
// the core variables it may alias.
std::vector<ProblogRule> extract_rules(const RuleTree& t, const CoreForm& cf,
                                       std::span<const Feature> features);

// `<p>::<head> :- <groups and unique literals>.` with 4-decimal probability;
// multi-atom groups are parenthesized.
std::string render_rule(const ProblogRule& r, const SymbolTable& st);

}  // namespace ilb
