// Command-line front end: train, predict, eval, export-rules, synth, and
// gen-instances over the fact/example file formats.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilb/booster.hpp"
#include "ilb/config.hpp"
#include "ilb/metrics.hpp"
#include "ilb/model_io.hpp"
#include "ilb/parser.hpp"
#include "ilb/synth.hpp"

namespace {

using namespace ilb;

std::vector<GroundAtom> read_atoms(const std::string& path,
                                   std::shared_ptr<SymbolTable> symbols) {
  return parse_facts_file(path, std::move(symbols)).facts();
}

IlbConfig resolve_config(const std::string& config_path, const CLI::Option* seed_opt,
                         std::uint64_t seed) {
  IlbConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (seed_opt->count() > 0) cfg.seed = seed;
  return cfg;
}

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_train(const std::string& facts_path, const std::string& pos_path,
              const std::string& neg_path, const std::string& config_path,
              const CLI::Option* seed_opt, std::uint64_t seed, const std::string& out) {
  IlbConfig cfg = resolve_config(config_path, seed_opt, seed);
  auto symbols = std::make_shared<SymbolTable>();
  FactBase db = parse_facts_file(facts_path, symbols);
  std::vector<GroundAtom> positives = read_atoms(pos_path, symbols);
  std::vector<GroundAtom> negatives;
  if (!neg_path.empty()) negatives = read_atoms(neg_path, symbols);
  ExampleSet ex = make_example_set(std::move(positives), std::move(negatives), *symbols);

  TrainingTable table = generate_instances(db, ex, cfg.gen(), &std::cerr);
  BoostedModel model = train_boosted(table, ex, symbols, cfg.gen(), cfg.boost());
  save_model(model, out);
  std::cerr << "trained " << model.core_forms.size() << " core form(s) over "
            << table.instances.size() << " instance(s), " << model.rounds.size()
            << " round(s); model written to " << out << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& facts_path,
                const std::string& queries_path, const std::string& out) {
  BoostedModel model = load_model(model_path);
  FactBase db = parse_facts_file(facts_path, model.symbols);
  std::optional<std::vector<GroundAtom>> queries;
  if (!queries_path.empty()) queries = read_atoms(queries_path, model.symbols);

  std::string tsv;
  for (const Prediction& p : predict_scores(model, db, queries)) {
    tsv += render(p.head, *model.symbols) + "\t" + format_score(p.score) + "\n";
  }
  write_file_atomic(out, tsv);
  return 0;
}

int run_eval(const std::string& pred_path, const std::string& pos_path,
             const std::string& neg_path, const std::string& out, std::string kv_path,
             const std::string& roc_path, const std::string& pr_path) {
  auto symbols = std::make_shared<SymbolTable>();
  std::vector<std::pair<GroundAtom, double>> predictions;
  {
    std::string text = read_file(pred_path);
    std::size_t line_no = 0, at = 0;
    while (at < text.size()) {
      std::size_t end = text.find('\n', at);
      if (end == std::string::npos) end = text.size();
      std::string_view line{text.data() + at, end - at};
      at = end + 1;
      ++line_no;
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw std::runtime_error("predictions line " + std::to_string(line_no) +
                                 ": expected <head>\\t<score>");
      }
      GroundAtom head = parse_ground_atom(line.substr(0, tab), *symbols);
      std::string_view score_text = line.substr(tab + 1);
      double score = 0.0;
      auto [ptr, ec] =
          std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
      if (ec != std::errc{} || ptr != score_text.data() + score_text.size()) {
        throw std::runtime_error("predictions line " + std::to_string(line_no) +
                                 ": malformed score");
      }
      predictions.push_back({std::move(head), score});
    }
  }
  std::vector<GroundAtom> positives = read_atoms(pos_path, symbols);
  std::vector<GroundAtom> negatives;
  if (!neg_path.empty()) negatives = read_atoms(neg_path, symbols);
  ExampleSet ex = make_example_set(std::move(positives), std::move(negatives), *symbols);

  EvalReport report = evaluate(assemble_eval(predictions, ex));
  write_file_atomic(out, render_report(report));
  if (kv_path.empty()) kv_path = out + ".kv";
  write_file_atomic(kv_path, render_report_kv(report));
  if (!roc_path.empty()) {
    write_file_atomic(roc_path, render_curve_tsv(report.roc_points, "fpr", "tpr"));
  }
  if (!pr_path.empty()) {
    write_file_atomic(pr_path, render_curve_tsv(report.pr_points, "recall", "precision"));
  }
  std::cout << render_report(report);
  return 0;
}

int run_export_rules(const std::string& model_path, const std::string& out) {
  BoostedModel model = load_model(model_path);
  std::string text;
  for (std::size_t t = 0; t < model.rounds.size(); ++t) {
    const BoostRound& round = model.rounds[t];
    text += "% round " + std::to_string(t + 1) + " alpha=" + format_score(round.alpha) + "\n";
    for (std::size_t cf = 0; cf < model.core_forms.size(); ++cf) {
      for (const ProblogRule& rule :
           extract_rules(round.trees[cf], model.core_forms[cf], model.features[cf])) {
        text += render_rule(rule, *model.symbols) + "\n";
      }
    }
  }
  write_file_atomic(out, text);
  return 0;
}

int run_synth(const SynthSpec& spec, const std::string& out_facts,
              const std::string& out_pos) {
  SynthData data = generate_synthetic(spec);
  write_file_atomic(out_facts, data.facts);
  write_file_atomic(out_pos, data.positives);
  return 0;
}

int run_gen_instances(const std::string& facts_path, const std::string& pos_path,
                      const std::string& neg_path, const std::string& config_path,
                      const CLI::Option* seed_opt, std::uint64_t seed,
                      const std::string& out) {
  IlbConfig cfg = resolve_config(config_path, seed_opt, seed);
  auto symbols = std::make_shared<SymbolTable>();
  FactBase db = parse_facts_file(facts_path, symbols);
  std::vector<GroundAtom> positives = read_atoms(pos_path, symbols);
  std::vector<GroundAtom> negatives;
  if (!neg_path.empty()) negatives = read_atoms(neg_path, symbols);
  ExampleSet ex = make_example_set(std::move(positives), std::move(negatives), *symbols);

  TrainingTable table = generate_instances(db, ex, cfg.gen(), &std::cerr);
  write_file_atomic(out, render_instance_table(table, *symbols));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic first-order rule learning over relational facts"};
  app.require_subcommand(1);

  std::string facts, pos, neg, config_path, model_path, queries, out;
  std::string kv_path, roc_path, pr_path, out_facts, out_pos;
  std::uint64_t seed = 0;

  auto* train = app.add_subcommand("train", "Learn a boosted rule model");
  train->add_option("--facts", facts, "Fact file")->required();
  train->add_option("--pos", pos, "Positive example file")->required();
  train->add_option("--neg", neg, "Negative example file (optional)");
  train->add_option("--config", config_path, "key = value configuration file");
  auto* train_seed = train->add_option("--seed", seed, "Seed override");
  train->add_option("--out", out, "Model output path")->required();

  auto* predict = app.add_subcommand("predict", "Score groundings under a model");
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--facts", facts, "Fact file")->required();
  predict->add_option("--queries", queries, "Query heads (one ground atom per line)");
  predict->add_option("--out", out, "Predictions TSV output path")->required();

  auto* eval = app.add_subcommand("eval", "Rank predictions against labeled examples");
  eval->add_option("--pred", model_path, "Predictions TSV")->required();
  eval->add_option("--pos", pos, "Positive example file")->required();
  eval->add_option("--neg", neg, "Negative example file (optional)");
  eval->add_option("--out", out, "Report output path")->required();
  eval->add_option("--kv", kv_path, "key=value sidecar path (default: <out>.kv)");
  eval->add_option("--roc", roc_path, "ROC curve TSV path");
  eval->add_option("--pr", pr_path, "PR curve TSV path");

  auto* export_rules = app.add_subcommand("export-rules", "Write the rule program");
  export_rules->add_option("--model", model_path, "Model file")->required();
  export_rules->add_option("--out", out, "Rule file output path")->required();

  SynthSpec spec;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic entity-resolution world");
  synth->add_option("--entities", spec.entities, "Latent entity count");
  synth->add_option("--mentions", spec.mentions_per_entity, "Mentions per entity");
  synth->add_option("--token-pool", spec.token_pool, "Token vocabulary size");
  synth->add_option("--tokens-per-entity", spec.tokens_per_entity, "Identity tokens per entity");
  synth->add_option("--extra-tokens", spec.extra_tokens_per_mention, "Random tokens per mention");
  synth->add_option("--noise", spec.noise, "Identity-token replacement probability");
  synth->add_option("--salt", spec.salt, "Constant-name prefix");
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("--out-facts", out_facts, "Fact file output path")->required();
  synth->add_option("--out-pos", out_pos, "Positive example output path")->required();

  auto* gen = app.add_subcommand("gen-instances", "Dump the labeled instance table");
  gen->add_option("--facts", facts, "Fact file")->required();
  gen->add_option("--pos", pos, "Positive example file")->required();
  gen->add_option("--neg", neg, "Negative example file (optional)");
  gen->add_option("--config", config_path, "key = value configuration file");
  auto* gen_seed = gen->add_option("--seed", seed, "Seed override");
  gen->add_option("--out", out, "Instance table output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      return run_train(facts, pos, neg, config_path, train_seed, seed, out);
    }
    if (predict->parsed()) return run_predict(model_path, facts, queries, out);
    if (eval->parsed()) {
      return run_eval(model_path, pos, neg, out, kv_path, roc_path, pr_path);
    }
    if (export_rules->parsed()) return run_export_rules(model_path, out);
    if (synth->parsed()) return run_synth(spec, out_facts, out_pos);
    if (gen->parsed()) {
      return run_gen_instances(facts, pos, neg, config_path, gen_seed, seed, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
