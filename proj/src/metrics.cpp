#include "ilb/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace ilb {
namespace {

// (true positives, false positives) accumulated after each tie group,
// sweeping scores descending. Throws unless every label is +1/-1.
std::vector<std::pair<double, double>> group_sweep(std::vector<ScoredExample> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ScoredExample& a, const ScoredExample& b) { return a.score > b.score; });
  std::vector<std::pair<double, double>> cuts;
  double tp = 0.0, fp = 0.0;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].score == entries[i].score) {
      if (entries[j].label != 1 && entries[j].label != -1) {
        throw std::invalid_argument("labels must be +1 or -1");
      }
      (entries[j].label == 1 ? tp : fp) += 1.0;
      ++j;
    }
    cuts.push_back({tp, fp});
    i = j;
  }
  return cuts;
}

std::size_t count_label(const std::vector<ScoredExample>& entries, int label) {
  std::size_t n = 0;
  for (const ScoredExample& e : entries) n += e.label == label;
  return n;
}

char* fmt(char (&buf)[64], double v) {
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double auc_roc(const std::vector<ScoredExample>& entries) {
  double pos = static_cast<double>(count_label(entries, 1));
  double neg = static_cast<double>(count_label(entries, -1));
  if (pos == 0.0 || neg == 0.0) {
    throw std::invalid_argument("auc_roc needs at least one example of each class");
  }
  double area = 0.0, prev_tp = 0.0, prev_fp = 0.0;
  for (const auto& [tp, fp] : group_sweep(entries)) {
    area += (fp - prev_fp) / neg * (tp + prev_tp) / (2.0 * pos);
    prev_tp = tp;
    prev_fp = fp;
  }
  return area;
}

double auc_pr(const std::vector<ScoredExample>& entries) {
  double pos = static_cast<double>(count_label(entries, 1));
  if (pos == 0.0) throw std::invalid_argument("auc_pr needs at least one positive");
  double area = 0.0, prev_tp = 0.0;
  for (const auto& [tp, fp] : group_sweep(entries)) {
    if (tp + fp > 0.0) area += (tp - prev_tp) / pos * (tp / (tp + fp));
    prev_tp = tp;
  }
  return area;
}

std::vector<std::pair<double, double>> roc_curve(const std::vector<ScoredExample>& entries) {
  double pos = static_cast<double>(count_label(entries, 1));
  double neg = static_cast<double>(count_label(entries, -1));
  if (pos == 0.0 || neg == 0.0) {
    throw std::invalid_argument("roc_curve needs at least one example of each class");
  }
  std::vector<std::pair<double, double>> points{{0.0, 0.0}};
  for (const auto& [tp, fp] : group_sweep(entries)) points.push_back({fp / neg, tp / pos});
  return points;
}

std::vector<std::pair<double, double>> pr_curve(const std::vector<ScoredExample>& entries) {
  double pos = static_cast<double>(count_label(entries, 1));
  if (pos == 0.0) throw std::invalid_argument("pr_curve needs at least one positive");
  std::vector<std::pair<double, double>> points;
  for (const auto& [tp, fp] : group_sweep(entries)) {
    points.push_back({tp / pos, tp + fp > 0.0 ? tp / (tp + fp) : 1.0});
  }
  return points;
}

EvalReport evaluate(const std::vector<ScoredExample>& entries) {
  EvalReport r;
  r.positives = count_label(entries, 1);
  r.negatives = count_label(entries, -1);
  r.auc_roc = auc_roc(entries);
  r.auc_pr = auc_pr(entries);
  r.roc_points = roc_curve(entries);
  r.pr_points = pr_curve(entries);
  return r;
}

std::vector<ScoredExample> assemble_eval(
    const std::vector<std::pair<GroundAtom, double>>& predictions, const ExampleSet& ex) {
  std::vector<ScoredExample> out;
  if (!ex.negatives.empty()) {
    std::unordered_map<GroundAtom, double, GroundAtomHash> score_of;
    for (const auto& [head, score] : predictions) score_of.emplace(head, score);
    auto lookup = [&](const GroundAtom& head) {
      auto it = score_of.find(head);
      return it == score_of.end() ? 0.0 : it->second;
    };
    for (const GroundAtom& p : ex.positives) out.push_back({lookup(p), +1});
    for (const GroundAtom& n : ex.negatives) out.push_back({lookup(n), -1});
    return out;
  }
  std::unordered_set<GroundAtom, GroundAtomHash> seen;
  for (const auto& [head, score] : predictions) {
    if (seen.insert(head).second) {
      out.push_back({score, ex.positive_set.contains(head) ? +1 : -1});
    }
  }
  for (const GroundAtom& p : ex.positives) {
    if (seen.insert(p).second) out.push_back({0.0, +1});
  }
  return out;
}

std::string render_report(const EvalReport& r) {
  char a[64], b[64];
  std::string out;
  out += "evaluation (closed-world ranking)\n";
  out += "  auc_pr  = " + std::string(fmt(a, r.auc_pr)) + "  (step-interpolated)\n";
  out += "  auc_roc = " + std::string(fmt(b, r.auc_roc)) + "  (tie-averaged trapezoid)\n";
  out += "  positives = " + std::to_string(r.positives) + "\n";
  out += "  negatives = " + std::to_string(r.negatives) + "\n";
  return out;
}

std::string render_report_kv(const EvalReport& r) {
  char buf[64];
  std::string out;
  out += "auc_pr=" + std::string(fmt(buf, r.auc_pr)) + "\n";
  out += "auc_roc=" + std::string(fmt(buf, r.auc_roc)) + "\n";
  out += "positives=" + std::to_string(r.positives) + "\n";
  out += "negatives=" + std::to_string(r.negatives) + "\n";
  return out;
}

std::string render_curve_tsv(const std::vector<std::pair<double, double>>& points,
                             const char* x_name, const char* y_name) {
  char a[64], b[64];
  std::string out = std::string(x_name) + "\t" + y_name + "\n";
  for (const auto& [x, y] : points) {
    out += std::string(fmt(a, x)) + "\t" + fmt(b, y) + "\n";
  }
  return out;
}

}  // namespace ilb
