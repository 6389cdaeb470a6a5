#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ilb/config.hpp"
#include "ilb/model_io.hpp"
#include "ilb/parser.hpp"
#include "ilb/synth.hpp"

using namespace ilb;

namespace {

struct ParsedWorld {
  std::shared_ptr<SymbolTable> st;
  FactBase db;
  std::vector<GroundAtom> positives;
};

ParsedWorld parse_world(const SynthData& data) {
  auto st = std::make_shared<SymbolTable>();
  FactBase db = parse_facts(data.facts, st);
  ParsedWorld w{st, std::move(db), {}};
  std::istringstream in(data.positives);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    line.pop_back();  // trailing dot
    w.positives.push_back(parse_ground_atom(line, *w.st));
  }
  return w;
}

}  // namespace

TEST_CASE("the generator is deterministic and salt-scoped") {
  SynthSpec spec;
  spec.entities = 6;
  spec.mentions_per_entity = 3;
  spec.token_pool = 40;
  spec.tokens_per_entity = 4;
  spec.extra_tokens_per_mention = 2;
  spec.noise = 0.2;
  spec.salt = "tr_";
  spec.seed = 42;

  SynthData a = generate_synthetic(spec);
  SynthData b = generate_synthetic(spec);
  CHECK(a.facts == b.facts);
  CHECK(a.positives == b.positives);

  SynthSpec other = spec;
  other.seed = 43;
  SynthData c = generate_synthetic(other);
  CHECK(a.facts != c.facts);

  SynthSpec test_spec = spec;
  test_spec.salt = "te_";
  SynthData d = generate_synthetic(test_spec);
  // Disjoint salts share no constant names at all.
  ParsedWorld wa = parse_world(a);
  ParsedWorld wd = parse_world(d);
  for (std::size_t i = 0; i < wa.st->constant_count(); ++i) {
    std::string name = wa.st->constant_name(static_cast<Id>(i));
    CHECK(name.substr(0, 3) == "tr_");
    CHECK(!wd.st->find_constant(name).has_value());
  }
}

TEST_CASE("every same-entity mention pair is listed in both orders") {
  SynthSpec spec;
  spec.entities = 5;
  spec.mentions_per_entity = 3;
  spec.token_pool = 60;
  spec.tokens_per_entity = 5;
  spec.salt = "s_";
  spec.seed = 7;
  ParsedWorld w = parse_world(generate_synthetic(spec));

  // 3 mentions -> 3 unordered pairs -> 6 ordered positives per entity.
  CHECK(w.positives.size() == static_cast<std::size_t>(spec.entities) * 6);
  std::set<std::pair<Id, Id>> seen;
  for (const GroundAtom& p : w.positives) {
    REQUIRE(p.args.size() == 2);
    CHECK(p.args[0] != p.args[1]);
    CHECK(seen.insert({p.args[0], p.args[1]}).second);
  }
  for (const auto& [x, y] : seen) {
    CHECK(seen.contains({y, x}));
  }
}

TEST_CASE("zero noise leaves entity mentions sharing every identity token") {
  SynthSpec spec;
  spec.entities = 4;
  spec.mentions_per_entity = 3;
  spec.token_pool = 50;
  spec.tokens_per_entity = 4;
  spec.extra_tokens_per_mention = 1;
  spec.noise = 0.0;
  spec.salt = "z_";
  ParsedWorld w = parse_world(generate_synthetic(spec));

  Id hw = *w.st->find_predicate("hasword");
  std::map<Id, std::set<Id>> tokens_of;
  for (const GroundAtom& f : w.db.facts()) {
    REQUIRE(f.pred == hw);
    tokens_of[f.args[0]].insert(f.args[1]);
  }
  for (const GroundAtom& p : w.positives) {
    const auto& ta = tokens_of.at(p.args[0]);
    const auto& tb = tokens_of.at(p.args[1]);
    std::size_t shared = 0;
    for (Id t : ta) shared += tb.contains(t);
    CHECK(shared >= static_cast<std::size_t>(spec.tokens_per_entity));
  }
}

TEST_CASE("inconsistent generator settings are rejected") {
  SynthSpec bad;
  bad.entities = 0;
  CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
  bad = SynthSpec{};
  bad.noise = 1.5;
  CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
  bad = SynthSpec{};
  bad.token_pool = 3;
  bad.tokens_per_entity = 6;
  CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
  bad = SynthSpec{};
  bad.extra_tokens_per_mention = -1;
  CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
}

TEST_CASE("config files parse with defaults, comments, and overrides") {
  IlbConfig cfg = parse_config(
      "# run settings\n"
      "rounds = 7\n"
      "\n"
      "margin_clip = 2.5   % inline note\n"
      "seed=99\n");
  CHECK(cfg.rounds == 7);
  CHECK(cfg.margin_clip == 2.5);
  CHECK(cfg.seed == 99);
  // Untouched keys keep their defaults.
  CHECK(cfg.max_depth == 4);
  CHECK(cfg.instances_per_core_form == 4000);

  IlbConfig empty = parse_config("");
  CHECK(empty.rounds == 20);
  CHECK(empty.max_features == 64);

  // The derived sub-configurations mirror the flat keys.
  CHECK(cfg.boost().rounds == 7);
  CHECK(cfg.boost().margin_clip == 2.5);
  CHECK(cfg.gen().seed == 99);
  CHECK(cfg.tree().max_depth == 4);
}

TEST_CASE("config rendering round-trips every key") {
  IlbConfig cfg;
  cfg.max_core_form_len = 3;
  cfg.max_feature_len = 1;
  cfg.max_depth = 5;
  cfg.node_literal_cap = 3;
  cfg.min_leaf_weight_frac = 0.05;
  cfg.rounds = 9;
  cfg.margin_clip = 3.25;
  cfg.instances_per_core_form = 123;
  cfg.max_features = 17;
  cfg.seed = 314159;
  IlbConfig back = parse_config(render_config(cfg));
  CHECK(back.max_core_form_len == 3);
  CHECK(back.max_feature_len == 1);
  CHECK(back.max_depth == 5);
  CHECK(back.node_literal_cap == 3);
  CHECK(back.min_leaf_weight_frac == 0.05);
  CHECK(back.rounds == 9);
  CHECK(back.margin_clip == 3.25);
  CHECK(back.instances_per_core_form == 123);
  CHECK(back.max_features == 17);
  CHECK(back.seed == 314159);
}

TEST_CASE("config errors name the offending line") {
  CHECK_THROWS_AS(parse_config("bogus_key = 3\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("rounds = 3\nrounds = 4\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("rounds = many\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("rounds\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("rounds = 0\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("min_leaf_weight_frac = 1.5\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("margin_clip = -1\n"), std::runtime_error);
  try {
    parse_config("rounds = 3\nbogus = 1\n");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("configs load from disk") {
  std::string path = "/tmp/ilb_test_config.cfg";
  write_file_atomic(path, "rounds = 5\nmax_features = 32\n");
  IlbConfig cfg = load_config(path);
  CHECK(cfg.rounds == 5);
  CHECK(cfg.max_features == 32);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config(path), std::runtime_error);
}
