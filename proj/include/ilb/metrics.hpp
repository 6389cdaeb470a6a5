#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ilb/instancer_types.hpp"

namespace ilb {

struct ScoredExample {
  double score = 0.0;
  int label = 0;  // +1 / -1
};

// Area under the ROC curve by trapezoid over tie groups (equal scores move
// together), equivalent to the tie-corrected Mann-Whitney statistic. Throws
// std::invalid_argument unless both classes are present.
double auc_roc(const std::vector<ScoredExample>& entries);

// Area under the precision-recall curve by descending-score sweep with step
// interpolation: each tie group contributes (delta recall) x (precision at
// its cut). Throws std::invalid_argument when no positive is present.
double auc_pr(const std::vector<ScoredExample>& entries);

// Curve points for plotting, one per tie-group cut. ROC points run from
// (0,0) to (1,1) as (fpr, tpr); PR points are (recall, precision).
std::vector<std::pair<double, double>> roc_curve(const std::vector<ScoredExample>& entries);
std::vector<std::pair<double, double>> pr_curve(const std::vector<ScoredExample>& entries);

struct EvalReport {
  double auc_pr = 0.0;
  double auc_roc = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<std::pair<double, double>> roc_points;
  std::vector<std::pair<double, double>> pr_points;
};

EvalReport evaluate(const std::vector<ScoredExample>& entries);

// Truth assembly. With labeled negatives, the universe is exactly the
// labeled examples (positives ∪ negatives) and predictions outside it are
// ignored; otherwise the closed-world universe is predictions ∪ positives
// and unlisted heads count as negatives. Either way, a labeled example the
// predictions miss enters with score 0.
std::vector<ScoredExample> assemble_eval(
    const std::vector<std::pair<GroundAtom, double>>& predictions, const ExampleSet& ex);

std::string render_report(const EvalReport& r);     // human-readable
std::string render_report_kv(const EvalReport& r);  // key=value sidecar
std::string render_curve_tsv(const std::vector<std::pair<double, double>>& points,
                             const char* x_name, const char* y_name);

}  // namespace ilb
