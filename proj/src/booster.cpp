#include "ilb/booster.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ilb {
namespace {

// Minimize f over [lo, hi] (f unimodal) by golden-section search.
template <typename F>
double golden_min(F f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

// Per-example margins of one round: clipped logit of the noisy-or over the
// scores of the example's instances under the round's trees.
std::vector<double> round_margins(const BoostRound& round, const TrainingTable& table,
                                  const std::vector<int>& example_of, std::size_t n_examples,
                                  double clip) {
  std::vector<double> survive(n_examples, 1.0);
  for (std::size_t cf = 0; cf < table.core_forms.size(); ++cf) {
    auto [begin, end] = table.cf_ranges[cf];
    for (int i = begin; i < end; ++i) {
      const Instance& x = table.instances[static_cast<std::size_t>(i)];
      survive[static_cast<std::size_t>(example_of[static_cast<std::size_t>(i)])] *=
          1.0 - score_instance(round.trees[cf], x);
    }
  }
  std::vector<double> margins(n_examples);
  for (std::size_t e = 0; e < n_examples; ++e) {
    margins[e] = clipped_logit(1.0 - survive[e], clip);
  }
  return margins;
}

}  // namespace

double clipped_logit(double p, double c) {
  if (p <= 0.0) return -c;
  if (p >= 1.0) return c;
  return std::clamp(std::log(p / (1.0 - p)), -c, c);
}

double BoostedModel::floor_margin() const {
  double f = 0.0;
  for (const BoostRound& r : rounds) f -= r.alpha * boost.margin_clip;
  return f;
}

BoostedModel train_boosted(const TrainingTable& table, const ExampleSet& ex,
                           std::shared_ptr<SymbolTable> symbols, const GenConfig& gen,
                           const BoostConfig& cfg, TrainDiagnostics* diag) {
  if (table.instances.empty()) {
    throw std::invalid_argument("no core form covers any example; nothing to boost on");
  }
  if (cfg.rounds < 1) throw std::invalid_argument("at least one boosting round required");

  // Example universe: deduced heads in table order, then uncovered positives.
  std::vector<GroundAtom> examples;
  std::unordered_map<GroundAtom, int, GroundAtomHash> index_of;
  auto admit = [&](const GroundAtom& head) {
    if (index_of.emplace(head, static_cast<int>(examples.size())).second) {
      examples.push_back(head);
    }
  };
  for (const Instance& x : table.instances) admit(x.head);
  for (const GroundAtom& p : ex.positives) admit(p);

  std::size_t n = examples.size();
  std::vector<int> y(n);
  for (std::size_t e = 0; e < n; ++e) {
    y[e] = ex.positive_set.contains(examples[e]) ? +1 : -1;
  }
  std::vector<int> example_of(table.instances.size());
  for (std::size_t i = 0; i < table.instances.size(); ++i) {
    example_of[i] = index_of.at(table.instances[i].head);
  }

  BoostedModel model;
  model.symbols = std::move(symbols);
  model.target = ex.target;
  model.target_arity = static_cast<int>(examples.front().args.size());
  model.gen = gen;
  model.boost = cfg;
  model.core_forms = table.core_forms;
  model.features = table.features;

  if (diag) {
    diag->examples = examples;
    diag->y = y;
    diag->final_margin.assign(n, 0.0);
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> final_margin(n, 0.0);
  std::vector<double> instance_w(table.instances.size());
  for (int t = 0; t < cfg.rounds; ++t) {
    // Project example weights onto instances; an instance inherits its
    // example's full weight.
    for (std::size_t i = 0; i < table.instances.size(); ++i) {
      instance_w[i] = w[static_cast<std::size_t>(example_of[i])];
    }

    BoostRound round;
    for (std::size_t cf = 0; cf < table.core_forms.size(); ++cf) {
      auto [begin, end] = table.cf_ranges[cf];
      if (begin == end) throw std::logic_error("core form without instances");
      std::span<const Instance> xs{table.instances.data() + begin,
                                   static_cast<std::size_t>(end - begin)};
      std::span<const double> ws{instance_w.data() + begin,
                                 static_cast<std::size_t>(end - begin)};
      round.trees.push_back(learn_tree(xs, ws, table.features[cf], cfg.tree));
    }

    std::vector<double> m =
        round_margins(round, table, example_of, n, cfg.margin_clip);
    std::vector<double> u(n);  // y_e * m_e
    for (std::size_t e = 0; e < n; ++e) u[e] = y[e] * m[e];

    auto loss = [&](double a) {
      double z = 0.0;
      for (std::size_t e = 0; e < n; ++e) z += w[e] * std::exp(-a * u[e]);
      return z;
    };
    round.alpha = golden_min(loss, 0.0, 8.0, 200);
    double z = loss(round.alpha);
    if (!(z <= 1.0 + 1e-12)) throw std::logic_error("round increased the training loss");

    double sum = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      w[e] *= std::exp(-round.alpha * u[e]) / z;
      sum += w[e];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::logic_error("weights drifted off 1");
    for (double& we : w) we /= sum;

    for (std::size_t e = 0; e < n; ++e) final_margin[e] += round.alpha * m[e];
    if (diag) {
      diag->z.push_back(z);
      diag->alpha.push_back(round.alpha);
      diag->weights.push_back(w);
    }
    model.rounds.push_back(std::move(round));
  }
  if (diag) diag->final_margin = final_margin;
  return model;
}

std::vector<Prediction> predict_scores(
    const BoostedModel& m, const FactBase& db,
    const std::optional<std::vector<GroundAtom>>& queries) {
  std::vector<Instance> instances = enumerate_for_scoring(
      db, m.core_forms, m.features, m.gen.max_feature_len, queries);

  // Head universe: the deduced heads, or exactly the queried ones.
  std::vector<GroundAtom> heads;
  std::unordered_map<GroundAtom, int, GroundAtomHash> index_of;
  auto admit = [&](const GroundAtom& head) {
    if (index_of.emplace(head, static_cast<int>(heads.size())).second) {
      heads.push_back(head);
    }
  };
  if (queries) {
    for (const GroundAtom& q : *queries) admit(q);
  } else {
    for (const Instance& x : instances) admit(x.head);
  }

  std::vector<double> margin(heads.size(), 0.0);
  for (const BoostRound& round : m.rounds) {
    std::vector<double> survive(heads.size(), 1.0);
    for (const Instance& x : instances) {
      survive[static_cast<std::size_t>(index_of.at(x.head))] *=
          1.0 - score_instance(round.trees[static_cast<std::size_t>(x.core_form)], x);
    }
    for (std::size_t e = 0; e < heads.size(); ++e) {
      margin[e] += round.alpha * clipped_logit(1.0 - survive[e], m.boost.margin_clip);
    }
  }

  std::vector<Prediction> out(heads.size());
  for (std::size_t e = 0; e < heads.size(); ++e) {
    out[e] = {heads[e], sigmoid(margin[e])};
  }
  std::sort(out.begin(), out.end(), [&](const Prediction& a, const Prediction& b) {
    if (a.score != b.score) return a.score > b.score;
    return render(a.head, *m.symbols) < render(b.head, *m.symbols);
  });
  return out;
}

}  // namespace ilb
