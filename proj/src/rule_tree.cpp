#include "ilb/rule_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ilb {
namespace {

int feature_count(const Instance& x, int feature) {
  auto it = std::lower_bound(x.features.begin(), x.features.end(),
                             std::make_pair(feature, 0));
  return it != x.features.end() && it->first == feature ? it->second : 0;
}

double entropy(double w_pos, double w_neg) {
  double w = w_pos + w_neg;
  if (w <= 0.0 || w_pos <= 0.0 || w_neg <= 0.0) return 0.0;
  double pp = w_pos / w, pn = w_neg / w;
  return -pp * std::log2(pp) - pn * std::log2(pn);
}

struct Builder {
  std::span<const Instance> instances;
  std::span<const Feature> features;
  const std::vector<double>& weights;  // mean-1 normalized
  const TreeConfig& cfg;
  double root_weight;
  std::vector<TreeNode> nodes;

  int make_leaf(const std::vector<int>& members) {
    TreeNode leaf;
    leaf.is_leaf = true;
    for (int i : members) {
      (instances[static_cast<std::size_t>(i)].label > 0 ? leaf.w_pos : leaf.w_neg) +=
          weights[static_cast<std::size_t>(i)];
    }
    leaf.p_hat = (leaf.w_pos + 1.0) / (leaf.w_pos + leaf.w_neg + 2.0);
    nodes.push_back(leaf);
    return static_cast<int>(nodes.size() - 1);
  }

  int build(const std::vector<int>& members, int depth) {
    double w_pos = 0.0, w_neg = 0.0;
    for (int i : members) {
      (instances[static_cast<std::size_t>(i)].label > 0 ? w_pos : w_neg) +=
          weights[static_cast<std::size_t>(i)];
    }
    double w = w_pos + w_neg;
    if (depth >= cfg.max_depth || w < cfg.min_leaf_weight_frac * root_weight ||
        w_pos == 0.0 || w_neg == 0.0) {
      return make_leaf(members);
    }

    // Best (feature, k) by entropy gain; ties prefer smaller k, then smaller
    // feature id. Candidate thresholds are the nonzero counts observed here.
    double node_h = entropy(w_pos, w_neg);
    double best_gain = 0.0;
    int best_feature = -1, best_k = 0;
    for (int f = 0; f < static_cast<int>(features.size()); ++f) {
      if (static_cast<int>(features[static_cast<std::size_t>(f)].body.atoms.size()) >
          cfg.node_literal_cap) {
        continue;
      }
      std::map<int, std::pair<double, double>> by_count;  // count -> (w+, w-)
      for (int i : members) {
        const Instance& x = instances[static_cast<std::size_t>(i)];
        auto& slot = by_count[feature_count(x, f)];
        (x.label > 0 ? slot.first : slot.second) += weights[static_cast<std::size_t>(i)];
      }
      // Sweep thresholds descending so (w+, w-) above the cut accumulates.
      double above_pos = 0.0, above_neg = 0.0;
      for (auto it = by_count.rbegin(); it != by_count.rend(); ++it) {
        int k = it->first;
        above_pos += it->second.first;
        above_neg += it->second.second;
        if (k == 0) break;  // count >= 0 holds everywhere: no split
        double gain = node_h -
                      (above_pos + above_neg) / w * entropy(above_pos, above_neg) -
                      (w - above_pos - above_neg) / w *
                          entropy(w_pos - above_pos, w_neg - above_neg);
        bool better = gain > best_gain + 1e-15 ||
                      (gain > best_gain - 1e-15 && best_feature >= 0 &&
                       (k < best_k || (k == best_k && f < best_feature)));
        if (better) {
          best_gain = gain;
          best_feature = f;
          best_k = k;
        }
      }
    }
    if (best_feature < 0 || best_gain <= 0.0) return make_leaf(members);

    std::vector<int> yes, no;
    for (int i : members) {
      (feature_count(instances[static_cast<std::size_t>(i)], best_feature) >= best_k
           ? yes
           : no)
          .push_back(i);
    }
    TreeNode node;
    node.feature = best_feature;
    node.threshold = best_k;
    node.true_child = build(yes, depth + 1);
    node.false_child = build(no, depth + 1);
    nodes.push_back(node);
    return static_cast<int>(nodes.size() - 1);
  }
};

}  // namespace

double noisy_or(std::span<const double> ps) {
  double survive = 1.0;
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0,1]");
    survive *= 1.0 - p;
  }
  return 1.0 - survive;
}

RuleTree learn_tree(std::span<const Instance> instances, std::span<const double> weights,
                    std::span<const Feature> features, const TreeConfig& cfg) {
  if (instances.empty()) throw std::invalid_argument("no instances to learn from");
  if (instances.size() != weights.size()) {
    throw std::invalid_argument("one weight per instance required");
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("weights must sum to a positive value");
  std::vector<double> scaled(weights.begin(), weights.end());
  for (double& w : scaled) w *= static_cast<double>(scaled.size()) / total;

  Builder b{instances, features, scaled, cfg, static_cast<double>(scaled.size()), {}};
  std::vector<int> all(instances.size());
  std::iota(all.begin(), all.end(), 0);
  RuleTree t;
  t.root = b.build(all, 0);
  t.nodes = std::move(b.nodes);
  return t;
}

int leaf_of(const RuleTree& t, const Instance& x) {
  int at = t.root;
  while (!t.nodes[static_cast<std::size_t>(at)].is_leaf) {
    const TreeNode& n = t.nodes[static_cast<std::size_t>(at)];
    at = feature_count(x, n.feature) >= n.threshold ? n.true_child : n.false_child;
  }
  return at;
}

double score_instance(const RuleTree& t, const Instance& x) {
  return t.nodes[static_cast<std::size_t>(leaf_of(t, x))].p_hat;
}

std::vector<ProblogRule> extract_rules(const RuleTree& t, const CoreForm& cf,
                                       std::span<const Feature> features) {
  std::vector<ProblogRule> rules;

  struct Step {
    int node;
    std::vector<RuleCondition> route;
  };
  std::vector<Step> stack{{t.root, {}}};
  while (!stack.empty()) {
    Step step = std::move(stack.back());
    stack.pop_back();
    const TreeNode& n = t.nodes[static_cast<std::size_t>(step.node)];
    if (!n.is_leaf) {
      auto down = [&](int child, bool taken) {
        Step next{child, step.route};
        next.route.push_back({n.feature, n.threshold, taken});
        stack.push_back(std::move(next));
      };
      down(n.false_child, false);
      down(n.true_child, true);  // popped first: true branches lead
      continue;
    }

    ProblogRule rule;
    rule.prob = n.p_hat;
    rule.head = cf.head;
    rule.groups.push_back(cf.body);
    rule.route = step.route;
    rule.leaf = step.node;
    Id next_var = static_cast<Id>(cf.var_count);
    for (const RuleCondition& cond : step.route) {
      if (!cond.is_true_branch) continue;
      const Feature& f = features[static_cast<std::size_t>(cond.feature)];

      // Fresh variables of the feature, in first-occurrence order, and the
      // core variables each one may alias (its pair-group partners).
      std::vector<Id> fresh;
      std::map<Id, std::set<Id>> core_partners;
      for (Id v : f.body.variables()) {
        if (v >= static_cast<Id>(cf.var_count)) fresh.push_back(v);
      }
      std::vector<std::pair<Id, Id>> fresh_pairs;
      for (const auto& group : f.body.distinct_groups) {
        for (Id a : group) {
          for (Id b : group) {
            if (a == b) continue;
            if (a >= static_cast<Id>(cf.var_count) && b < static_cast<Id>(cf.var_count)) {
              core_partners[a].insert(b);
            }
            if (a < b && a >= static_cast<Id>(cf.var_count) &&
                b >= static_cast<Id>(cf.var_count)) {
              fresh_pairs.push_back({a, b});
            }
          }
        }
      }

      std::map<Id, std::vector<Id>> images;  // original fresh var -> copy images
      for (int copy = 0; copy < cond.threshold; ++copy) {
        std::map<Id, Id> rename;
        for (Id v : fresh) {
          rename[v] = next_var++;
          images[v].push_back(rename[v]);
        }
        Conjunction body;
        for (const Atom& a : f.body.atoms) {
          Atom out = a;
          for (Term& arg : out.args) {
            if (arg.is_variable() && rename.count(arg.id())) {
              arg = Term::variable(rename[arg.id()]);
            }
          }
          body.atoms.push_back(std::move(out));
        }
        rule.groups.push_back(std::move(body));
        for (const auto& [a, b] : fresh_pairs) {
          rule.unique_groups.push_back({rename[a], rename[b]});
        }
      }
      for (Id v : fresh) {
        std::vector<Id> group(core_partners[v].begin(), core_partners[v].end());
        group.insert(group.end(), images[v].begin(), images[v].end());
        std::sort(group.begin(), group.end());
        if (group.size() >= 2) rule.unique_groups.push_back(std::move(group));
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string render_rule(const ProblogRule& r, const SymbolTable& st) {
  char prob[16];
  std::snprintf(prob, sizeof prob, "%.4f", r.prob);
  std::string out = prob;
  out += "::";
  out += render(r.head, st);
  out += " :- ";
  bool first = true;
  for (const Conjunction& g : r.groups) {
    if (!first) out += ',';
    first = false;
    bool wrap = g.atoms.size() > 1;
    if (wrap) out += '(';
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
      if (i) out += ',';
      out += render(g.atoms[i], st);
    }
    if (wrap) out += ')';
  }
  for (const auto& group : r.unique_groups) {
    if (!first) out += ',';
    first = false;
    out += "unique([";
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i) out += ',';
      out += "V" + std::to_string(group[i]);
    }
    out += "])";
  }
  out += '.';
  return out;
}

}  // namespace ilb
