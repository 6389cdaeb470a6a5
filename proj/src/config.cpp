#include "ilb/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ilb {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + message);
}

template <typename T>
T parse_number(std::string_view value, int line, const char* key) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(line, std::string("malformed value for ") + key);
  }
  return out;
}

void validate(const IlbConfig& c) {
  auto need = [](bool ok, const char* message) {
    if (!ok) throw std::runtime_error(std::string("config: ") + message);
  };
  need(c.max_core_form_len >= 1, "max_core_form_len must be at least 1");
  need(c.max_feature_len >= 1, "max_feature_len must be at least 1");
  need(c.max_depth >= 1, "max_depth must be at least 1");
  need(c.node_literal_cap >= 1, "node_literal_cap must be at least 1");
  need(c.min_leaf_weight_frac >= 0.0 && c.min_leaf_weight_frac <= 1.0,
       "min_leaf_weight_frac must lie in [0,1]");
  need(c.rounds >= 1, "rounds must be at least 1");
  need(c.margin_clip > 0.0, "margin_clip must be positive");
  need(c.instances_per_core_form >= 1, "instances_per_core_form must be at least 1");
  need(c.max_features >= 1, "max_features must be at least 1");
}

}  // namespace

GenConfig IlbConfig::gen() const {
  GenConfig g;
  g.max_core_form_len = max_core_form_len;
  g.max_feature_len = max_feature_len;
  g.instances_per_core_form = instances_per_core_form;
  g.max_features = max_features;
  g.seed = seed;
  return g;
}

TreeConfig IlbConfig::tree() const {
  TreeConfig t;
  t.max_depth = max_depth;
  t.node_literal_cap = node_literal_cap;
  t.min_leaf_weight_frac = min_leaf_weight_frac;
  return t;
}

BoostConfig IlbConfig::boost() const {
  BoostConfig b;
  b.rounds = rounds;
  b.margin_clip = margin_clip;
  b.tree = tree();
  return b;
}

IlbConfig parse_config(std::istream& in) {
  IlbConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line{raw};
    auto comment = line.find_first_of("#%");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key");
    if (value.empty()) fail(line_no, "missing value");
    if (!seen.insert(std::string(key)).second) {
      fail(line_no, "duplicate key " + std::string(key));
    }

    if (key == "max_core_form_len") {
      cfg.max_core_form_len = parse_number<int>(value, line_no, "max_core_form_len");
    } else if (key == "max_feature_len") {
      cfg.max_feature_len = parse_number<int>(value, line_no, "max_feature_len");
    } else if (key == "max_depth") {
      cfg.max_depth = parse_number<int>(value, line_no, "max_depth");
    } else if (key == "node_literal_cap") {
      cfg.node_literal_cap = parse_number<int>(value, line_no, "node_literal_cap");
    } else if (key == "min_leaf_weight_frac") {
      cfg.min_leaf_weight_frac =
          parse_number<double>(value, line_no, "min_leaf_weight_frac");
    } else if (key == "rounds") {
      cfg.rounds = parse_number<int>(value, line_no, "rounds");
    } else if (key == "margin_clip") {
      cfg.margin_clip = parse_number<double>(value, line_no, "margin_clip");
    } else if (key == "instances_per_core_form") {
      cfg.instances_per_core_form =
          parse_number<int>(value, line_no, "instances_per_core_form");
    } else if (key == "max_features") {
      cfg.max_features = parse_number<int>(value, line_no, "max_features");
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, line_no, "seed");
    } else {
      fail(line_no, "unknown key " + std::string(key));
    }
  }
  validate(cfg);
  return cfg;
}

IlbConfig parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

IlbConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_config(in);
}

std::string render_config(const IlbConfig& cfg) {
  std::ostringstream out;
  out << "max_core_form_len = " << cfg.max_core_form_len << "\n"
      << "max_feature_len = " << cfg.max_feature_len << "\n"
      << "max_depth = " << cfg.max_depth << "\n"
      << "node_literal_cap = " << cfg.node_literal_cap << "\n"
      << "min_leaf_weight_frac = " << cfg.min_leaf_weight_frac << "\n"
      << "rounds = " << cfg.rounds << "\n"
      << "margin_clip = " << cfg.margin_clip << "\n"
      << "instances_per_core_form = " << cfg.instances_per_core_form << "\n"
      << "max_features = " << cfg.max_features << "\n"
      << "seed = " << cfg.seed << "\n";
  return out.str();
}

}  // namespace ilb
