#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ilb/instancer.hpp"
#include "ilb/parser.hpp"
#include "ilb/rng.hpp"

using namespace ilb;

namespace {

const char* kDocWorld =
    "hasword(d_d_lewis,d).\n"
    "hasword(d_d_lewis,lewis).\n"
    "hasword(david_d_lewis,david).\n"
    "hasword(david_d_lewis,d).\n"
    "hasword(david_d_lewis,lewis).\n"
    "hasword(haussler_d,haussler).\n"
    "hasword(haussler_d,d).\n";

struct Setup {
  std::shared_ptr<SymbolTable> st;
  FactBase db;
  ExampleSet ex;
};

Setup doc_setup() {
  auto st = std::make_shared<SymbolTable>();
  FactBase db = parse_facts(kDocWorld, st);
  GroundAtom pos = parse_ground_atom("sameauthor(d_d_lewis,david_d_lewis)", *st);
  ExampleSet ex = make_example_set({pos}, {}, *st);
  return {st, std::move(db), std::move(ex)};
}

std::string head_name(const Instance& inst, const SymbolTable& st) {
  return render(inst.head, st);
}

// The feature bodies attached to an instance, rendered, with counts.
std::map<std::string, int> feature_bodies(const Instance& inst,
                                          const std::vector<Feature>& universe,
                                          const SymbolTable& st) {
  std::map<std::string, int> out;
  for (const auto& [id, count] : inst.features) {
    out[render(universe.at(static_cast<std::size_t>(id)).body, st)] = count;
  }
  return out;
}

}  // namespace

TEST_CASE("example sets deduplicate and key membership by predicate") {
  auto st = std::make_shared<SymbolTable>();
  GroundAtom a = parse_ground_atom("same(x,y)", *st);
  GroundAtom b = parse_ground_atom("same(y,x)", *st);
  ExampleSet ex = make_example_set({a, b, a}, {b}, *st);
  CHECK(ex.positives.size() == 2);
  CHECK(ex.negatives.size() == 1);
  CHECK(ex.target == a.pred);
  CHECK(label_of(a, ex) == 1);
  GroundAtom c = parse_ground_atom("same(x,x)", *st);
  CHECK(label_of(c, ex) == -1);

  GroundAtom other = parse_ground_atom("different(x,y)", *st);
  CHECK_THROWS_AS(make_example_set({a, other}, {}, *st), std::invalid_argument);
}

TEST_CASE("deduce applies the grounding to the head and rejects gaps") {
  auto st = std::make_shared<SymbolTable>();
  FactBase db = parse_facts("p(a,b).\n", st);
  Id t = st->predicate("t", 2);
  CoreForm cf;
  cf.head = parse_atom("t(V0,V1)", *st);
  cf.head.pred = t;
  cf.body = parse_conjunction("p(V0,V1)", *st);
  cf.var_count = 2;
  Substitution theta;
  theta.bind(0, Term::constant(*st->find_constant("a")));
  theta.bind(1, Term::constant(*st->find_constant("b")));
  GroundAtom head = deduce(cf, theta);
  CHECK(render(head, *st) == "t(a,b)");
  Substitution partial;
  partial.bind(0, Term::constant(*st->find_constant("a")));
  CHECK_THROWS_AS(deduce(cf, partial), std::invalid_argument);
}

TEST_CASE("document world yields one core form and eight grounded instances") {
  Setup s = doc_setup();
  std::ostringstream warn;
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{}, &warn);

  REQUIRE(table.core_forms.size() == 1);
  const CoreForm& cf = table.core_forms[0];
  CHECK(render(cf.head, *s.st) == "sameauthor(V0,V1)");
  CHECK(render(cf.body, *s.st) == "hasword(V0,V2),hasword(V1,V2)");
  REQUIRE(table.cf_ranges.size() == 1);
  CHECK(table.cf_ranges[0] == std::pair<int, int>{0, 8});
  REQUIRE(table.instances.size() == 8);
  CHECK(warn.str().empty());

  // Reflexive groundings collapse onto a single fact and are dropped, so no
  // instance pairs a document with itself.
  int positives = 0;
  std::multiset<std::string> heads;
  for (const Instance& inst : table.instances) {
    CHECK(inst.core_form == 0);
    CHECK(inst.path_edges.size() == cf.body.atoms.size());
    CHECK(inst.head.args[0] != inst.head.args[1]);
    heads.insert(head_name(inst, *s.st));
    if (inst.label > 0) ++positives;
  }
  CHECK(positives == 2);
  std::multiset<std::string> want = {
      "sameauthor(d_d_lewis,david_d_lewis)", "sameauthor(d_d_lewis,david_d_lewis)",
      "sameauthor(david_d_lewis,d_d_lewis)", "sameauthor(david_d_lewis,d_d_lewis)",
      "sameauthor(d_d_lewis,haussler_d)",    "sameauthor(haussler_d,d_d_lewis)",
      "sameauthor(david_d_lewis,haussler_d)", "sameauthor(haussler_d,david_d_lewis)",
  };
  CHECK(heads == want);

  // Both orientations of the labeled pair rest on the same undirected
  // evidence; only the listed direction is positive under the closed world.
  for (const Instance& inst : table.instances) {
    bool is_listed = head_name(inst, *s.st) == "sameauthor(d_d_lewis,david_d_lewis)";
    CHECK(inst.label == (is_listed ? 1 : -1));
  }
}

TEST_CASE("document instances carry the expected context features") {
  Setup s = doc_setup();
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{});
  REQUIRE(table.features.size() == 1);
  const auto& universe = table.features[0];
  // Feature ids follow the canonical key order of the universe.
  for (std::size_t i = 0; i + 1 < universe.size(); ++i) {
    CHECK(universe[i].key < universe[i + 1].key);
  }

  Id lewis = *s.st->find_constant("lewis");
  Id d = *s.st->find_constant("d");
  const Instance* via_lewis = nullptr;  // labeled pair through the rare word
  const Instance* hd_dvl = nullptr;     // unrelated pair through the stopword
  for (const Instance& inst : table.instances) {
    bool lp = head_name(inst, *s.st) == "sameauthor(d_d_lewis,david_d_lewis)";
    if (lp && s.db.fact(inst.path_edges[0]).args[1] == lewis) via_lewis = &inst;
    if (head_name(inst, *s.st) == "sameauthor(haussler_d,david_d_lewis)" &&
        s.db.fact(inst.path_edges[0]).args[1] == d) {
      hd_dvl = &inst;
    }
  }
  REQUIRE(via_lewis != nullptr);
  REQUIRE(hd_dvl != nullptr);

  auto lewis_feats = feature_bodies(*via_lewis, universe, *s.st);
  CHECK(lewis_feats.at("hasword(V0,d)") == 1);
  CHECK(lewis_feats.at("hasword(V1,d)") == 1);
  CHECK(lewis_feats.at("hasword(V0,V3),hasword(V1,V3),unique([V3,V2])") == 1);
  CHECK(lewis_feats.size() == 7);

  auto hd_feats = feature_bodies(*hd_dvl, universe, *s.st);
  CHECK(hd_feats.at("hasword(V0,haussler)") == 1);
  CHECK(hd_feats.count("hasword(V0,V3),hasword(V1,V3),unique([V3,V2])") == 0);
  for (const auto& [id, count] : hd_dvl->features) {
    (void)count;
    CHECK(!universe.at(static_cast<std::size_t>(id)).is_path);
  }
}

TEST_CASE("groundings re-match the fact base they came from") {
  Setup s = doc_setup();
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{});
  for (const Instance& inst : table.instances) {
    const CoreForm& cf = table.core_forms[static_cast<std::size_t>(inst.core_form)];
    std::set<FactId> edges;
    for (const Atom& a : cf.body.atoms) {
      GroundAtom ga = to_ground(inst.grounding.apply(a));
      FactId id = s.db.find(ga);
      CHECK(id >= 0);
      edges.insert(id);
    }
    CHECK(std::vector<FactId>(edges.begin(), edges.end()) == inst.path_edges);
    CHECK(deduce(cf, inst.grounding) == inst.head);
  }
}

TEST_CASE("no positives means an empty table") {
  auto st = std::make_shared<SymbolTable>();
  FactBase db = parse_facts(kDocWorld, st);
  ExampleSet ex;
  ex.target = st->predicate("sameauthor", 2);
  TrainingTable table = generate_instances(db, ex, GenConfig{});
  CHECK(table.core_forms.empty());
  CHECK(table.instances.empty());
  CHECK(table.cf_ranges.empty());
}

TEST_CASE("rendered instance tables are stable under a fixed seed") {
  SplitMix64 world_rng(31337);
  auto build = [&](std::uint64_t seed, const FactBase& db, const ExampleSet& ex) {
    GenConfig cfg;
    cfg.instances_per_core_form = 6;  // force sampling
    cfg.seed = seed;
    TrainingTable t = generate_instances(db, ex, cfg);
    return t;
  };

  auto st = std::make_shared<SymbolTable>();
  // A denser co-occurrence world so the grounding count exceeds the budget.
  FactBase db(st);
  Id hw = st->predicate("hasword", 2);
  std::vector<Id> docs, words;
  for (int i = 0; i < 8; ++i) docs.push_back(st->constant("doc" + std::to_string(i)));
  for (int i = 0; i < 4; ++i) words.push_back(st->constant("w" + std::to_string(i)));
  for (Id doc : docs) {
    for (Id w : words) {
      if (world_rng.bounded(2) == 0) db.add({hw, {doc, w}});
    }
  }
  Id same = st->predicate("same", 2);
  ExampleSet ex = make_example_set({{same, {docs[0], docs[1]}}, {same, {docs[2], docs[3]}}},
                                   {}, *st);

  TrainingTable a = build(7, db, ex);
  TrainingTable b = build(7, db, ex);
  REQUIRE(!a.instances.empty());
  CHECK(render_instance_table(a, *st) == render_instance_table(b, *st));
  for (const auto& [begin, end] : a.cf_ranges) {
    CHECK(end - begin <= 6);
  }
  // Positives survive sampling: the example's own groundings stay in.
  int positives = 0;
  for (const Instance& inst : a.instances) positives += inst.label > 0;
  CHECK(positives >= 1);

  TrainingTable c = build(8, db, ex);
  bool same_universe = render_instance_table(a, *st) == render_instance_table(c, *st);
  // Different seeds may pick different negatives; sizes still obey the budget.
  for (const auto& [begin, end] : c.cf_ranges) CHECK(end - begin <= 6);
  (void)same_universe;
}

TEST_CASE("scoring enumeration mirrors training enumeration without labels") {
  Setup s = doc_setup();
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{});
  auto scored = enumerate_for_scoring(s.db, table.core_forms, table.features, 2, std::nullopt);
  REQUIRE(scored.size() == table.instances.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    CHECK(scored[i].label == 0);
    CHECK(scored[i].head == table.instances[i].head);
    CHECK(scored[i].path_edges == table.instances[i].path_edges);
    CHECK(scored[i].features == table.instances[i].features);
  }
}

TEST_CASE("query mode restricts scoring to the asked heads") {
  Setup s = doc_setup();
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{});
  std::vector<GroundAtom> queries = {
      parse_ground_atom("sameauthor(d_d_lewis,david_d_lewis)", *s.st)};
  auto scored = enumerate_for_scoring(s.db, table.core_forms, table.features, 2, queries);
  CHECK(scored.size() == 2);  // the d bridge and the lewis bridge
  for (const Instance& inst : scored) CHECK(inst.head == queries[0]);

  // Unseen pair: nothing to ground.
  std::vector<GroundAtom> empty_q = {
      parse_ground_atom("sameauthor(haussler_d,haussler_d)", *s.st)};
  CHECK(enumerate_for_scoring(s.db, table.core_forms, table.features, 2, empty_q).empty());

  // Wrong predicate or arity is a caller error.
  std::vector<GroundAtom> bad = {parse_ground_atom("hasword(d_d_lewis,d)", *s.st)};
  CHECK_THROWS_AS(enumerate_for_scoring(s.db, table.core_forms, table.features, 2, bad),
                  std::invalid_argument);
}

TEST_CASE("instances on random worlds obey structural invariants") {
  SplitMix64 rng(90210);
  for (int iter = 0; iter < 120; ++iter) {
    auto st = std::make_shared<SymbolTable>();
    Id p = st->predicate("p", 2);
    Id q = st->predicate("q", 2);
    Id t = st->predicate("t", 2);
    std::size_t n_consts = 4 + rng.bounded(4);
    std::vector<Id> consts;
    for (std::size_t i = 0; i < n_consts; ++i) {
      consts.push_back(st->constant("k" + std::to_string(i)));
    }
    FactBase db(st);
    std::size_t n_facts = 4 + rng.bounded(8);
    for (std::size_t i = 0; i < n_facts; ++i) {
      db.add({rng.bounded(2) == 0 ? p : q,
              {consts[rng.bounded(n_consts)], consts[rng.bounded(n_consts)]}});
    }
    std::vector<GroundAtom> pos;
    std::size_t n_pos = 1 + rng.bounded(3);
    for (std::size_t i = 0; i < n_pos; ++i) {
      pos.push_back({t, {consts[rng.bounded(n_consts)], consts[rng.bounded(n_consts)]}});
    }
    ExampleSet ex = make_example_set(pos, {}, *st);
    GenConfig cfg;
    cfg.seed = rng.next();
    TrainingTable table = generate_instances(db, ex, cfg);

    // Core forms sorted and unique by key.
    for (std::size_t i = 0; i + 1 < table.core_forms.size(); ++i) {
      CHECK(table.core_forms[i].key < table.core_forms[i + 1].key);
    }
    CHECK(table.cf_ranges.size() == table.core_forms.size());
    CHECK(table.features.size() == table.core_forms.size());

    std::set<std::tuple<int, std::string, std::vector<FactId>>> seen;
    int at = 0;
    for (std::size_t c = 0; c < table.cf_ranges.size(); ++c) {
      auto [begin, end] = table.cf_ranges[c];
      CHECK(begin == at);
      at = end;
      const CoreForm& cf = table.core_forms[c];
      for (int i = begin; i < end; ++i) {
        const Instance& inst = table.instances[static_cast<std::size_t>(i)];
        CHECK(inst.core_form == static_cast<int>(c));
        // Grounded edge sets are duplicate-free and exactly one per atom.
        CHECK(inst.path_edges.size() == cf.body.atoms.size());
        CHECK(std::is_sorted(inst.path_edges.begin(), inst.path_edges.end()));
        CHECK(std::adjacent_find(inst.path_edges.begin(), inst.path_edges.end()) ==
              inst.path_edges.end());
        // Closed-world labels.
        CHECK(inst.label == (ex.positive_set.contains(inst.head) ? 1 : -1));
        // One instance per (core form, head, edge set).
        CHECK(seen.insert({inst.core_form, render(inst.head, *st), inst.path_edges}).second);
        // Feature ids are sorted, unique, and within the universe.
        for (std::size_t k = 0; k + 1 < inst.features.size(); ++k) {
          CHECK(inst.features[k].first < inst.features[k + 1].first);
        }
        for (const auto& [id, count] : inst.features) {
          CHECK(id >= 0);
          CHECK(static_cast<std::size_t>(id) < table.features[c].size());
          CHECK(count >= 1);
        }
      }
    }
    CHECK(at == static_cast<int>(table.instances.size()));
  }
}

TEST_CASE("instance tables render one line per grounding") {
  Setup s = doc_setup();
  TrainingTable table = generate_instances(s.db, s.ex, GenConfig{});
  std::string text = render_instance_table(table, *s.st);
  std::istringstream in(text);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++lines;
    CHECK(line.find('\t') != std::string::npos);
  }
  CHECK(lines == table.instances.size());
}
