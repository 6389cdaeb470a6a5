#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "ilb/instancer.hpp"
#include "ilb/metrics.hpp"
#include "ilb/parser.hpp"
#include "ilb/rng.hpp"

using namespace ilb;

namespace {

// Pair-counting reference for the ROC area: concordant pairs score 1, ties
// score 1/2, over all positive/negative pairs.
double roc_by_pairs(const std::vector<ScoredExample>& entries) {
  double num = 0.0;
  std::size_t pos = 0, neg = 0;
  for (const ScoredExample& p : entries) {
    if (p.label <= 0) continue;
    ++pos;
    for (const ScoredExample& n : entries) {
      if (n.label > 0) continue;
      if (p.score > n.score) num += 1.0;
      else if (p.score == n.score) num += 0.5;
    }
  }
  for (const ScoredExample& n : entries) neg += n.label <= 0;
  return num / (static_cast<double>(pos) * static_cast<double>(neg));
}

// Threshold-scanning reference for the PR area: walk distinct scores from
// high to low, recomputing counts from scratch at each cut.
double pr_by_thresholds(const std::vector<ScoredExample>& entries) {
  std::set<double, std::greater<double>> cuts;
  for (const ScoredExample& e : entries) cuts.insert(e.score);
  double total_pos = 0.0;
  for (const ScoredExample& e : entries) total_pos += e.label > 0;
  double area = 0.0;
  double prev_recall = 0.0;
  for (double cut : cuts) {
    double tp = 0.0, fp = 0.0;
    for (const ScoredExample& e : entries) {
      if (e.score >= cut) (e.label > 0 ? tp : fp) += 1.0;
    }
    double recall = tp / total_pos;
    double precision = tp / (tp + fp);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return area;
}

std::vector<ScoredExample> make(std::initializer_list<std::pair<double, int>> items) {
  std::vector<ScoredExample> out;
  for (const auto& [s, l] : items) out.push_back({s, l});
  return out;
}

}  // namespace

TEST_CASE("hand-checked areas under both curves") {
  auto entries = make({{0.9, 1}, {0.8, -1}, {0.7, 1}, {0.6, -1}});
  CHECK(auc_roc(entries) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(auc_pr(entries) == doctest::Approx(0.5 + 1.0 / 3.0).epsilon(1e-12));

  auto perfect = make({{0.9, 1}, {0.8, 1}, {0.2, -1}, {0.1, -1}});
  CHECK(auc_roc(perfect) == doctest::Approx(1.0));
  CHECK(auc_pr(perfect) == doctest::Approx(1.0));

  auto reversed = make({{0.9, -1}, {0.8, -1}, {0.2, 1}, {0.1, 1}});
  CHECK(auc_roc(reversed) == doctest::Approx(0.0));

  // Everything tied: chance-level ranking, prevalence-level precision.
  auto tied = make({{0.5, 1}, {0.5, -1}, {0.5, -1}, {0.5, -1}});
  CHECK(auc_roc(tied) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(auc_pr(tied) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("degenerate inputs raise errors or collapse sensibly") {
  CHECK_THROWS_AS(auc_roc({}), std::invalid_argument);
  CHECK_THROWS_AS(auc_pr({}), std::invalid_argument);
  auto all_pos = make({{0.9, 1}, {0.1, 1}});
  CHECK_THROWS_AS(auc_roc(all_pos), std::invalid_argument);
  CHECK(auc_pr(all_pos) == doctest::Approx(1.0));
  auto all_neg = make({{0.9, -1}, {0.1, -1}});
  CHECK_THROWS_AS(auc_roc(all_neg), std::invalid_argument);
  CHECK_THROWS_AS(auc_pr(all_neg), std::invalid_argument);
  auto bad_label = make({{0.9, 0}, {0.1, 1}});
  CHECK_THROWS_AS(auc_roc(bad_label), std::invalid_argument);
  CHECK_THROWS_AS(auc_pr(bad_label), std::invalid_argument);
}

TEST_CASE("areas agree with quadratic references on random score tables") {
  SplitMix64 rng(60601);
  for (int iter = 0; iter < 1200; ++iter) {
    std::size_t n = 2 + rng.bounded(14);
    std::vector<ScoredExample> entries;
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse score grid so ties are common.
      double score = static_cast<double>(rng.bounded(8)) / 7.0;
      int label = rng.bounded(2) == 0 ? 1 : -1;
      has_pos = has_pos || label > 0;
      has_neg = has_neg || label < 0;
      entries.push_back({score, label});
    }
    if (!has_pos) entries.push_back({0.3, 1});
    if (!has_neg) entries.push_back({0.6, -1});
    REQUIRE(auc_roc(entries) == doctest::Approx(roc_by_pairs(entries)).epsilon(1e-12));
    REQUIRE(auc_pr(entries) == doctest::Approx(pr_by_thresholds(entries)).epsilon(1e-12));
  }
}

TEST_CASE("rank metrics ignore monotone score transformations") {
  SplitMix64 rng(2718);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 4 + rng.bounded(10);
    std::vector<ScoredExample> entries;
    for (std::size_t i = 0; i < n; ++i) {
      entries.push_back({static_cast<double>(rng.bounded(6)) / 5.0,
                         rng.bounded(2) == 0 ? 1 : -1});
    }
    entries.push_back({0.4, 1});
    entries.push_back({0.8, -1});
    std::vector<ScoredExample> squashed = entries;
    for (ScoredExample& e : squashed) e.score = std::tanh(3.0 * e.score - 1.0);
    CHECK(auc_roc(squashed) == doctest::Approx(auc_roc(entries)).epsilon(1e-12));
    CHECK(auc_pr(squashed) == doctest::Approx(auc_pr(entries)).epsilon(1e-12));
  }
}

TEST_CASE("curve points trace monotone sweeps") {
  auto entries = make({{0.9, 1}, {0.8, -1}, {0.8, 1}, {0.3, -1}, {0.1, -1}});
  auto roc = roc_curve(entries);
  REQUIRE(roc.size() >= 2);
  CHECK(roc.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(roc.back() == std::pair<double, double>{1.0, 1.0});
  for (std::size_t i = 0; i + 1 < roc.size(); ++i) {
    CHECK(roc[i].first <= roc[i + 1].first);
    CHECK(roc[i].second <= roc[i + 1].second);
  }
  auto pr = pr_curve(entries);
  REQUIRE(!pr.empty());
  CHECK(pr.back().first == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < pr.size(); ++i) {
    CHECK(pr[i].first <= pr[i + 1].first);
  }
  for (const auto& [recall, precision] : pr) {
    CHECK(recall >= 0.0);
    CHECK(recall <= 1.0);
    CHECK(precision >= 0.0);
    CHECK(precision <= 1.0);
  }
}

TEST_CASE("evaluation reports carry counts, areas, and curves") {
  auto entries = make({{0.9, 1}, {0.8, -1}, {0.7, 1}, {0.6, -1}});
  EvalReport r = evaluate(entries);
  CHECK(r.positives == 2);
  CHECK(r.negatives == 2);
  CHECK(r.auc_roc == doctest::Approx(auc_roc(entries)));
  CHECK(r.auc_pr == doctest::Approx(auc_pr(entries)));
  CHECK(!r.roc_points.empty());
  CHECK(!r.pr_points.empty());

  std::string human = render_report(r);
  CHECK(human.find("auc") != std::string::npos);
  std::string kv = render_report_kv(r);
  CHECK(kv.find("auc_pr=") != std::string::npos);
  CHECK(kv.find("auc_roc=") != std::string::npos);
  CHECK(kv.find("positives=2") != std::string::npos);

  std::string tsv = render_curve_tsv(r.roc_points, "fpr", "tpr");
  CHECK(tsv.substr(0, 8) == "fpr\ttpr\n");
}

TEST_CASE("closed-world truth assembly scores missing positives at zero") {
  auto st = std::make_shared<SymbolTable>();
  GroundAtom ab = parse_ground_atom("same(a,b)", *st);
  GroundAtom ba = parse_ground_atom("same(b,a)", *st);
  GroundAtom ac = parse_ground_atom("same(a,c)", *st);
  GroundAtom cb = parse_ground_atom("same(c,b)", *st);
  ExampleSet ex = make_example_set({ab, ba}, {}, *st);

  std::vector<std::pair<GroundAtom, double>> preds = {{ab, 0.9}, {ac, 0.4}, {cb, 0.2}};
  auto entries = assemble_eval(preds, ex);
  // Universe: three predictions plus the missed positive at score zero.
  REQUIRE(entries.size() == 4);
  double missed = -1.0;
  std::size_t n_pos = 0;
  for (const ScoredExample& e : entries) {
    if (e.label > 0 && e.score == 0.0) missed = e.score;
    n_pos += e.label > 0;
  }
  CHECK(n_pos == 2);
  CHECK(missed == 0.0);
}

TEST_CASE("labeled negatives pin the evaluation universe") {
  auto st = std::make_shared<SymbolTable>();
  GroundAtom ab = parse_ground_atom("same(a,b)", *st);
  GroundAtom ac = parse_ground_atom("same(a,c)", *st);
  GroundAtom ad = parse_ground_atom("same(a,d)", *st);
  GroundAtom zz = parse_ground_atom("same(z,z)", *st);
  ExampleSet ex = make_example_set({ab}, {ac, ad}, *st);

  std::vector<std::pair<GroundAtom, double>> preds = {{ab, 0.9}, {ac, 0.8}, {zz, 0.99}};
  auto entries = assemble_eval(preds, ex);
  // Exactly the labeled examples; the stray prediction is ignored and the
  // unpredicted labeled negative scores zero.
  REQUIRE(entries.size() == 3);
  std::multiset<double> scores;
  for (const ScoredExample& e : entries) scores.insert(e.score);
  CHECK(scores == std::multiset<double>{0.0, 0.8, 0.9});
}
