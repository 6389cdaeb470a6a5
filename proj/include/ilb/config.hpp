#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ilb/booster.hpp"

namespace ilb {

// Flat `key = value` run configuration covering generation, tree induction,
// and boosting. Every field has a working default, so an empty file is valid.
struct IlbConfig {
  int max_core_form_len = 2;
  int max_feature_len = 2;
  int max_depth = 4;
  int node_literal_cap = 2;
  double min_leaf_weight_frac = 0.01;
  int rounds = 20;
  double margin_clip = 4.0;
  int instances_per_core_form = 4000;
  int max_features = 64;
  std::uint64_t seed = 0;

  GenConfig gen() const;
  TreeConfig tree() const;
  BoostConfig boost() const;
};

// Throws std::runtime_error (with a line number) on unknown keys, duplicate
// keys, malformed values, or out-of-range settings.
IlbConfig parse_config(std::istream& in);
IlbConfig parse_config(std::string_view text);
IlbConfig load_config(const std::string& path);

std::string render_config(const IlbConfig& cfg);

}  // namespace ilb
