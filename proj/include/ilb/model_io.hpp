#pragma once

#include <string>
#include <string_view>

#include "ilb/booster.hpp"

namespace ilb {

// Model container: a single JSON document with ordered keys and stable field
// order, so equal models serialize to identical bytes. Core-form heads,
// bodies, and feature bodies are embedded as rule text (V<n> variables) and
// reparsed on load; canonical keys are recomputed.
std::string render_model(const BoostedModel& m);
BoostedModel parse_model(std::string_view text);

// Whole-file write via a temp file and rename, so readers never observe a
// partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

void save_model(const BoostedModel& m, const std::string& path);
BoostedModel load_model(const std::string& path);

}  // namespace ilb
