#include "ilb/instancer.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "ilb/canonical.hpp"
#include "ilb/match.hpp"
#include "ilb/rng.hpp"

namespace ilb {
namespace {

struct InstanceKey {
  GroundAtom head;
  std::vector<FactId> edges;
  bool operator==(const InstanceKey&) const = default;
};

struct InstanceKeyHash {
  std::size_t operator()(const InstanceKey& k) const {
    return hash_ids(k.edges, GroundAtomHash{}(k.head));
  }
};

// Grounded edge set of the core-form body under theta, sorted by fact id.
// Empty result flags a collapsed grounding: two body atoms landing on the
// same fact do not form a faithful image of the path shape the core form was
// built from, so no instance is made for it.
std::vector<FactId> grounded_edges(const CoreForm& cf, const Substitution& theta,
                                   const FactBase& db) {
  std::vector<FactId> out;
  out.reserve(cf.body.atoms.size());
  for (const Atom& a : cf.body.atoms) {
    FactId id = db.find(to_ground(theta.apply(a)));
    if (id < 0) throw std::logic_error("grounded body atom is not a fact");
    out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != cf.body.atoms.size()) out.clear();
  return out;
}

}  // namespace

GroundAtom deduce(const CoreForm& cf, const Substitution& theta) {
  Atom grounded = theta.apply(cf.head);
  if (!grounded.is_ground()) {
    throw std::invalid_argument("grounding does not bind every head variable");
  }
  return to_ground(grounded);
}

int label_of(const GroundAtom& head, const ExampleSet& ex) {
  return ex.positive_set.contains(head) ? +1 : -1;
}

ExampleSet make_example_set(std::vector<GroundAtom> positives, std::vector<GroundAtom> negatives,
                            const SymbolTable& st) {
  ExampleSet ex;
  auto take = [&](std::vector<GroundAtom>& atoms, std::vector<GroundAtom>& list,
                  std::unordered_set<GroundAtom, GroundAtomHash>& set) {
    for (GroundAtom& a : atoms) {
      if (ex.target == -1) ex.target = a.pred;
      if (a.pred != ex.target) {
        throw std::invalid_argument("example atoms span several predicates: " +
                                    st.predicate_name(ex.target) + " and " +
                                    st.predicate_name(a.pred));
      }
      if (set.insert(a).second) list.push_back(std::move(a));
    }
  };
  take(positives, ex.positives, ex.positive_set);
  take(negatives, ex.negatives, ex.negative_set);
  return ex;
}

TrainingTable generate_instances(const FactBase& db, const ExampleSet& ex,
                                 const GenConfig& cfg, std::ostream* warn) {
  TrainingTable table;
  if (ex.positives.empty()) return table;

  Hypergraph g = build_hypergraph(db, ex.target);

  // Core forms from the positive examples, deduplicated by canonical key.
  std::unordered_set<std::string> seen_cf;
  for (const GroundAtom& e : ex.positives) {
    auto paths = find_paths(g, e, cfg.max_core_form_len);
    for (CoreForm& cf : extract_core_forms(g, paths, e, db.symbols())) {
      if (seen_cf.insert(cf.key).second) table.core_forms.push_back(std::move(cf));
    }
  }
  std::sort(table.core_forms.begin(), table.core_forms.end(),
            [](const CoreForm& a, const CoreForm& b) { return a.key < b.key; });

  for (std::size_t cf_index = 0; cf_index < table.core_forms.size(); ++cf_index) {
    const CoreForm& cf = table.core_forms[cf_index];

    std::vector<Instance> candidates;
    std::unordered_set<InstanceKey, InstanceKeyHash> keys;
    match(cf.body, db, [&](const Substitution& theta) {
      Instance inst;
      inst.core_form = static_cast<int>(cf_index);
      inst.path_edges = grounded_edges(cf, theta, db);
      if (inst.path_edges.empty()) return true;  // collapsed grounding
      inst.head = deduce(cf, theta);
      if (!keys.insert({inst.head, inst.path_edges}).second) return true;
      inst.grounding = theta;
      inst.label = label_of(inst.head, ex);
      candidates.push_back(std::move(inst));
      return true;
    });

    // Budgeting: keep everything that fits; otherwise all positives (sampled
    // down only if they alone overflow) plus a uniform sample of negatives.
    std::size_t budget = static_cast<std::size_t>(cfg.instances_per_core_form);
    std::vector<Instance> kept;
    if (candidates.size() <= budget) {
      kept = std::move(candidates);
    } else {
      std::vector<std::size_t> pos_idx, neg_idx;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        (candidates[i].label > 0 ? pos_idx : neg_idx).push_back(i);
      }
      SplitMix64 rng(mix_seed(cfg.seed, cf_index));
      std::vector<std::size_t> chosen;
      if (pos_idx.size() >= budget) {
        for (std::size_t i : sample_indices(pos_idx.size(), budget, rng)) {
          chosen.push_back(pos_idx[i]);
        }
      } else {
        chosen = pos_idx;
        for (std::size_t i :
             sample_indices(neg_idx.size(), budget - pos_idx.size(), rng)) {
          chosen.push_back(neg_idx[i]);
        }
      }
      std::sort(chosen.begin(), chosen.end());
      kept.reserve(chosen.size());
      for (std::size_t i : chosen) kept.push_back(std::move(candidates[i]));
    }

    bool has_positive = false;
    for (const Instance& inst : kept) has_positive = has_positive || inst.label > 0;
    if (!has_positive && warn) {
      *warn << "warning: core form " << cf.key << " has no positive instances\n";
    }

    // Features for the survivors, then the frequency-truncated universe.
    std::vector<std::vector<std::pair<Feature, int>>> raw(kept.size());
    std::map<std::string, std::pair<Feature, int>> universe;  // key -> (feature, doc freq)
    for (std::size_t i = 0; i < kept.size(); ++i) {
      raw[i] = instance_features(g, cf, kept[i].grounding, kept[i].path_edges,
                                 cfg.max_feature_len, db.symbols());
      for (const auto& [f, count] : raw[i]) {
        (void)count;
        auto it = universe.find(f.key);
        if (it == universe.end()) {
          universe.emplace(f.key, std::make_pair(f, 1));
        } else {
          it->second.second += 1;
        }
      }
    }
    std::vector<const std::pair<const std::string, std::pair<Feature, int>>*> ranked;
    for (const auto& entry : universe) ranked.push_back(&entry);
    std::sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
      if (a->second.second != b->second.second) return a->second.second > b->second.second;
      return a->first < b->first;
    });
    if (ranked.size() > static_cast<std::size_t>(cfg.max_features)) {
      ranked.resize(static_cast<std::size_t>(cfg.max_features));
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    std::unordered_map<std::string, int> id_of;
    std::vector<Feature> kept_features;
    for (const auto* entry : ranked) {
      id_of.emplace(entry->first, static_cast<int>(kept_features.size()));
      kept_features.push_back(entry->second.first);
    }

    int begin = static_cast<int>(table.instances.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (const auto& [f, count] : raw[i]) {
        auto it = id_of.find(f.key);
        if (it != id_of.end()) kept[i].features.push_back({it->second, count});
      }
      std::sort(kept[i].features.begin(), kept[i].features.end());
      table.instances.push_back(std::move(kept[i]));
    }
    table.features.push_back(std::move(kept_features));
    table.cf_ranges.push_back({begin, static_cast<int>(table.instances.size())});
  }
  return table;
}

std::string render_instance_table(const TrainingTable& table, const SymbolTable& st) {
  std::string out;
  for (std::size_t cf = 0; cf < table.core_forms.size(); ++cf) {
    auto [begin, end] = table.cf_ranges[cf];
    for (int i = begin; i < end; ++i) {
      const Instance& inst = table.instances[static_cast<std::size_t>(i)];
      out += table.core_forms[cf].key;
      out += '\t';
      bool first = true;
      for (const auto& [v, t] : inst.grounding.entries()) {
        if (!first) out += ',';
        first = false;
        out += "V" + std::to_string(v) + "=" + render(t, st);
      }
      out += '\t';
      out += inst.label > 0 ? "+1" : "-1";
      for (const auto& [fid, count] : inst.features) {
        out += '\t';
        out += render(table.features[cf][static_cast<std::size_t>(fid)].body, st);
        out += '=';
        out += std::to_string(count);
      }
      out += '\n';
    }
  }
  return out;
}

std::vector<Instance> enumerate_for_scoring(
    const FactBase& db, const std::vector<CoreForm>& core_forms,
    const std::vector<std::vector<Feature>>& features, int max_feature_len,
    const std::optional<std::vector<GroundAtom>>& queries) {
  std::vector<Instance> out;
  if (core_forms.empty()) return out;
  Hypergraph g = build_hypergraph(db, core_forms.front().head.pred);

  for (std::size_t cf_index = 0; cf_index < core_forms.size(); ++cf_index) {
    const CoreForm& cf = core_forms[cf_index];
    std::unordered_map<std::string, int> id_of;
    for (std::size_t i = 0; i < features[cf_index].size(); ++i) {
      id_of.emplace(features[cf_index][i].key, static_cast<int>(i));
    }

    std::unordered_set<InstanceKey, InstanceKeyHash> keys;
    auto take = [&](const Substitution& theta) {
      Instance inst;
      inst.core_form = static_cast<int>(cf_index);
      inst.path_edges = grounded_edges(cf, theta, db);
      if (inst.path_edges.empty()) return true;  // collapsed grounding
      inst.head = deduce(cf, theta);
      if (!keys.insert({inst.head, inst.path_edges}).second) return true;
      inst.grounding = theta;
      for (const auto& [f, count] :
           instance_features(g, cf, theta, inst.path_edges, max_feature_len, db.symbols())) {
        auto it = id_of.find(f.key);
        if (it != id_of.end()) inst.features.push_back({it->second, count});
      }
      std::sort(inst.features.begin(), inst.features.end());
      out.push_back(std::move(inst));
      return true;
    };

    if (queries) {
      for (const GroundAtom& q : *queries) {
        if (q.pred != cf.head.pred || q.args.size() != cf.head.args.size()) {
          throw std::invalid_argument("query predicate does not match the model target");
        }
        Substitution init;
        bool consistent = true;
        for (std::size_t pos = 0; pos < q.args.size() && consistent; ++pos) {
          Term head_arg = cf.head.args[pos];
          Term want = Term::constant(q.args[pos]);
          if (init.bound(head_arg.id())) {
            consistent = init.image(head_arg.id()) == want;
          } else {
            init.bind(head_arg.id(), want);
          }
        }
        if (consistent) match(cf.body, db, init, take);
      }
    } else {
      match(cf.body, db, take);
    }
  }
  return out;
}

}  // namespace ilb
