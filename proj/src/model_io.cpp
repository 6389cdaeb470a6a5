#include "ilb/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ilb/canonical.hpp"
#include "ilb/parser.hpp"
#include <json.hpp>

namespace ilb {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormat = "ilb-boosted-model";
constexpr int kVersion = 1;

ordered_json tree_to_json(const RuleTree& t) {
  ordered_json nodes = ordered_json::array();
  for (const TreeNode& n : t.nodes) {
    ordered_json j;
    j["leaf"] = n.is_leaf;
    if (n.is_leaf) {
      j["p"] = n.p_hat;
      j["wpos"] = n.w_pos;
      j["wneg"] = n.w_neg;
    } else {
      j["feature"] = n.feature;
      j["threshold"] = n.threshold;
      j["true"] = n.true_child;
      j["false"] = n.false_child;
    }
    nodes.push_back(std::move(j));
  }
  return ordered_json{{"root", t.root}, {"nodes", std::move(nodes)}};
}

RuleTree tree_from_json(const ordered_json& j) {
  RuleTree t;
  t.root = j.at("root").get<int>();
  for (const auto& nj : j.at("nodes")) {
    TreeNode n;
    n.is_leaf = nj.at("leaf").get<bool>();
    if (n.is_leaf) {
      n.p_hat = nj.at("p").get<double>();
      n.w_pos = nj.at("wpos").get<double>();
      n.w_neg = nj.at("wneg").get<double>();
    } else {
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<int>();
      n.true_child = nj.at("true").get<int>();
      n.false_child = nj.at("false").get<int>();
    }
    t.nodes.push_back(n);
  }
  if (t.root < 0 || t.root >= static_cast<int>(t.nodes.size())) {
    throw std::runtime_error("model file: tree root out of range");
  }
  return t;
}

}  // namespace

std::string render_model(const BoostedModel& m) {
  const SymbolTable& st = *m.symbols;
  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["target"] = {{"name", st.predicate_name(m.target)}, {"arity", m.target_arity}};
  j["config"] = {{"max_core_form_len", m.gen.max_core_form_len},
                 {"max_feature_len", m.gen.max_feature_len},
                 {"instances_per_core_form", m.gen.instances_per_core_form},
                 {"max_features", m.gen.max_features},
                 {"seed", m.gen.seed},
                 {"rounds", m.boost.rounds},
                 {"margin_clip", m.boost.margin_clip},
                 {"max_depth", m.boost.tree.max_depth},
                 {"node_literal_cap", m.boost.tree.node_literal_cap},
                 {"min_leaf_weight_frac", m.boost.tree.min_leaf_weight_frac}};

  ordered_json cfs = ordered_json::array();
  for (const CoreForm& cf : m.core_forms) {
    cfs.push_back({{"head", render(cf.head, st)},
                   {"body", render(cf.body, st)},
                   {"var_count", cf.var_count}});
  }
  j["core_forms"] = std::move(cfs);

  ordered_json features = ordered_json::array();
  for (const auto& list : m.features) {
    ordered_json fl = ordered_json::array();
    for (const Feature& f : list) {
      fl.push_back({{"path", f.is_path},
                    {"anchors", f.anchors},
                    {"body", render(f.body, st)}});
    }
    features.push_back(std::move(fl));
  }
  j["features"] = std::move(features);

  ordered_json rounds = ordered_json::array();
  for (const BoostRound& r : m.rounds) {
    ordered_json trees = ordered_json::array();
    for (const RuleTree& t : r.trees) trees.push_back(tree_to_json(t));
    rounds.push_back({{"alpha", r.alpha}, {"trees", std::move(trees)}});
  }
  j["rounds"] = std::move(rounds);
  return j.dump(2) + "\n";
}

BoostedModel parse_model(std::string_view text) {
  try {
    ordered_json j = ordered_json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw std::runtime_error("not a model file (unexpected format tag)");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw std::runtime_error("unsupported model file version");
    }

    BoostedModel m;
    m.symbols = std::make_shared<SymbolTable>();
    m.target_arity = j.at("target").at("arity").get<int>();
    m.target = m.symbols->predicate(j.at("target").at("name").get<std::string>(),
                                    m.target_arity);

    const auto& cfg = j.at("config");
    m.gen.max_core_form_len = cfg.at("max_core_form_len").get<int>();
    m.gen.max_feature_len = cfg.at("max_feature_len").get<int>();
    m.gen.instances_per_core_form = cfg.at("instances_per_core_form").get<int>();
    m.gen.max_features = cfg.at("max_features").get<int>();
    m.gen.seed = cfg.at("seed").get<std::uint64_t>();
    m.boost.rounds = cfg.at("rounds").get<int>();
    m.boost.margin_clip = cfg.at("margin_clip").get<double>();
    m.boost.tree.max_depth = cfg.at("max_depth").get<int>();
    m.boost.tree.node_literal_cap = cfg.at("node_literal_cap").get<int>();
    m.boost.tree.min_leaf_weight_frac = cfg.at("min_leaf_weight_frac").get<double>();

    for (const auto& cj : j.at("core_forms")) {
      CoreForm cf;
      cf.head = parse_atom(cj.at("head").get<std::string>(), *m.symbols,
                           VariableNaming::kNumericSuffix);
      cf.body = parse_conjunction(cj.at("body").get<std::string>(), *m.symbols,
                                  VariableNaming::kNumericSuffix);
      cf.var_count = cj.at("var_count").get<int>();
      cf.key = canonical_rule_key(cf.head, cf.body, *m.symbols);
      m.core_forms.push_back(std::move(cf));
    }

    for (const auto& fl : j.at("features")) {
      std::size_t cf_index = m.features.size();
      if (cf_index >= m.core_forms.size()) {
        throw std::runtime_error("model file: more feature lists than core forms");
      }
      std::vector<Id> core_vars = m.core_forms[cf_index].body.variables();
      std::vector<Feature> list;
      for (const auto& fj : fl) {
        Feature f;
        f.is_path = fj.at("path").get<bool>();
        f.anchors = fj.at("anchors").get<std::vector<Id>>();
        f.body = parse_conjunction(fj.at("body").get<std::string>(), *m.symbols,
                                   VariableNaming::kNumericSuffix);
        f.key = canonical_key_pinned(f.body, *m.symbols, core_vars);
        list.push_back(std::move(f));
      }
      m.features.push_back(std::move(list));
    }
    if (m.features.size() != m.core_forms.size()) {
      throw std::runtime_error("model file: one feature list per core form required");
    }

    for (const auto& rj : j.at("rounds")) {
      BoostRound r;
      r.alpha = rj.at("alpha").get<double>();
      for (const auto& tj : rj.at("trees")) r.trees.push_back(tree_from_json(tj));
      if (r.trees.size() != m.core_forms.size()) {
        throw std::runtime_error("model file: one tree per core form required");
      }
      m.rounds.push_back(std::move(r));
    }
    return m;
  } catch (const ordered_json::exception& e) {
    throw std::runtime_error(std::string("model file: ") + e.what());
  }
}

void write_file_atomic(const std::string& path, std::string_view content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void save_model(const BoostedModel& m, const std::string& path) {
  write_file_atomic(path, render_model(m));
}

BoostedModel load_model(const std::string& path) {
  return parse_model(read_file(path));
}

}  // namespace ilb
