#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbeval/align.hpp"

namespace dbeval {

enum class EvalStatus { Ok, SkippedTimeout, SkippedCompileError };

std::string eval_status_name(EvalStatus s);

// Ground-truth comparison outcome for one (program, tool, granularity) cell.
// Percentages live in [0, 100]; f1 is the raw fraction in [0, 1] and is only
// scaled for display.
struct MetricResult {
  std::string program;
  std::string tool;
  Granularity granularity = Granularity::Loc;
  long false_removal = 0;
  long false_retention = 0;
  double frm_pct = 0.0;
  double frt_pct = 0.0;
  double f1 = 0.0;
  long foreign_count = 0;
  EvalStatus status = EvalStatus::Ok;
  bool frm_denominator_zero = false;  // empty ground-truth unit set
  bool frt_denominator_zero = false;  // bloat-free program (U_base == U_gt)
  long base_unit_count = 0;
  long gt_unit_count = 0;
  long variant_unit_count = 0;
};

// |U_gt - U_d| : required units the tool deleted.
long false_removal(const UnitSet& u_gt, const UnitSet& u_d);

// |U_d - U_gt| : removable units the tool kept.
long false_retention(const UnitSet& u_gt, const UnitSet& u_d);

struct Rates {
  double frm_pct = 0.0;
  double frt_pct = 0.0;
  bool frm_denominator_zero = false;
  bool frt_denominator_zero = false;
};

// Error rates normalized by |U_gt| and |U_base - U_gt|. Requires
// U_gt ⊆ U_base; zero denominators yield rate 0 with the matching flag set.
Rates rates(const UnitSet& u_base, const UnitSet& u_gt, const UnitSet& u_d);

// F1 = 2(100-FRt)(100-FRm) / (100(200-FRt-FRm)), as a fraction in [0, 1];
// defined as 0 at (100, 100).
double f1_score(double frm_pct, double frt_pct);

// Full comparator for one variant at one granularity.
MetricResult evaluate(const SourceDocument& original, const SourceDocument& ground_truth,
                      const SourceDocument& variant, Granularity g,
                      std::string program = {}, std::string tool = {},
                      Diagnostics* diags = nullptr);

// The same computation over already-projected unit sets; used when the
// variant only exists as a symbol list.
MetricResult evaluate_prepared(const UnitSet& u_base, const UnitSet& u_gt, const UnitSet& u_d,
                               std::string program = {}, std::string tool = {},
                               Diagnostics* diags = nullptr);

// Unweighted means over status==Ok results of one tool at one granularity.
struct ToolAverage {
  std::string tool;
  Granularity granularity = Granularity::Loc;
  std::optional<double> frm_pct;  // empty when no Ok results
  std::optional<double> frt_pct;
  std::optional<double> f1;
  int ok_count = 0;
  int skipped_timeout = 0;
  int skipped_compile_error = 0;
};

std::vector<ToolAverage> aggregate(const std::vector<MetricResult>& results);

// Display rounding used everywhere a percent is rendered.
int round_half_up(double value);
int percent_of_fraction(double fraction);  // round_half_up(fraction * 100)

// --- Inter-annotator agreement ----------------------------------------------

struct AgreementResult {
  std::string program;
  double kappa = 0.0;
  double p_o = 0.0;  // observed agreement
  double p_e = 0.0;  // expected (chance) agreement
  long n_units = 0;
  // 2x2 contingency counts (annotator A x annotator B), kept so corpus-level
  // pooling can rebuild the table.
  long n_keep_keep = 0;
  long n_keep_remove = 0;
  long n_remove_keep = 0;
  long n_remove_remove = 0;
};

// Cohen's kappa over two keep/remove labelings of the same unit domain.
AgreementResult cohens_kappa(const std::vector<bool>& labels_a,
                             const std::vector<bool>& labels_b,
                             std::string program = {});

// Labels U_base(loc) by membership in each annotator's retained set, then
// computes kappa.
AgreementResult agreement_between_ground_truths(const SourceDocument& original,
                                                const SourceDocument& ground_truth_a,
                                                const SourceDocument& ground_truth_b,
                                                std::string program = {});

// Corpus-level agreement: both the mean of per-program kappas and kappa over
// the pooled unit domain, which differ whenever program sizes differ.
struct AgreementSummary {
  std::optional<double> mean_of_programs;
  std::optional<double> pooled_kappa;
  long pooled_units = 0;
};

AgreementSummary summarize_agreement(const std::vector<AgreementResult>& per_program);

}  // namespace dbeval
