#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "dbeval/metrics.hpp"

namespace dbeval {

std::string eval_status_name(EvalStatus s) {
  switch (s) {
    case EvalStatus::Ok: return "ok";
    case EvalStatus::SkippedTimeout: return "skipped-T";
    case EvalStatus::SkippedCompileError: return "skipped-C";
  }
  return "unknown";
}

namespace {

void require_same_granularity(const UnitSet& a, const UnitSet& b, const char* op) {
  if (a.granularity != b.granularity) {
    throw InternalError(std::string(op) + ": granularity mismatch (" +
                        granularity_name(a.granularity) + " vs " +
                        granularity_name(b.granularity) + ")");
  }
}

template <typename T>
long difference_size(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return static_cast<long>(diff.size());
}

long set_minus(const UnitSet& a, const UnitSet& b) {
  return a.granularity == Granularity::Loc ? difference_size(a.line_units, b.line_units)
                                           : difference_size(a.name_units, b.name_units);
}

template <typename T>
std::vector<T> difference(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return diff;
}

}  // namespace

long false_removal(const UnitSet& u_gt, const UnitSet& u_d) {
  require_same_granularity(u_gt, u_d, "false_removal");
  return set_minus(u_gt, u_d);
}

long false_retention(const UnitSet& u_gt, const UnitSet& u_d) {
  require_same_granularity(u_gt, u_d, "false_retention");
  return set_minus(u_d, u_gt);
}

Rates rates(const UnitSet& u_base, const UnitSet& u_gt, const UnitSet& u_d) {
  require_same_granularity(u_base, u_gt, "rates");
  require_same_granularity(u_gt, u_d, "rates");

  // The ground truth must be carved out of the original.
  long stray = set_minus(u_gt, u_base);
  if (stray != 0) {
    std::ostringstream os;
    os << "rates: ground-truth set is not a subset of the base set (" << stray
       << " stray units:";
    int shown = 0;
    if (u_gt.granularity == Granularity::Loc) {
      for (int u : difference(u_gt.line_units, u_base.line_units)) {
        if (shown++ >= 5) break;
        os << " line " << u;
      }
    } else {
      for (const auto& u : difference(u_gt.name_units, u_base.name_units)) {
        if (shown++ >= 5) break;
        os << ' ' << u;
      }
    }
    os << ")";
    throw InputError(os.str());
  }

  Rates r;
  long frm_count = false_removal(u_gt, u_d);
  long frt_count = false_retention(u_gt, u_d);
  long gt_size = static_cast<long>(u_gt.size());
  long removable = static_cast<long>(u_base.size()) - gt_size;

  if (gt_size > 0) {
    r.frm_pct = 100.0 * static_cast<double>(frm_count) / static_cast<double>(gt_size);
  } else {
    r.frm_denominator_zero = true;
  }
  if (removable > 0) {
    r.frt_pct = 100.0 * static_cast<double>(frt_count) / static_cast<double>(removable);
  } else {
    r.frt_denominator_zero = true;
  }
  return r;
}

double f1_score(double frm_pct, double frt_pct) {
  double denom = 100.0 * (200.0 - frt_pct - frm_pct);
  if (denom == 0.0) return 0.0;  // only at frm = frt = 100
  return 2.0 * (100.0 - frt_pct) * (100.0 - frm_pct) / denom;
}

MetricResult evaluate_prepared(const UnitSet& u_base, const UnitSet& u_gt, const UnitSet& u_d,
                               std::string program, std::string tool, Diagnostics* diags) {
  MetricResult res;
  res.program = std::move(program);
  res.tool = std::move(tool);
  res.granularity = u_base.granularity;

  res.false_removal = false_removal(u_gt, u_d);
  res.false_retention = false_retention(u_gt, u_d);
  Rates r = rates(u_base, u_gt, u_d);
  res.frm_pct = r.frm_pct;
  res.frt_pct = r.frt_pct;
  res.frm_denominator_zero = r.frm_denominator_zero;
  res.frt_denominator_zero = r.frt_denominator_zero;
  if (r.frt_denominator_zero) {
    diag_info(diags, "program '" + res.program + "': no-bloat denominator (U_base == U_gt), "
                     "false-retention rate pinned to 0");
  }
  res.f1 = f1_score(res.frm_pct, res.frt_pct);
  res.foreign_count = u_d.foreign_count;
  res.base_unit_count = static_cast<long>(u_base.size());
  res.gt_unit_count = static_cast<long>(u_gt.size());
  res.variant_unit_count = static_cast<long>(u_d.size()) + u_d.foreign_count;
  return res;
}

MetricResult evaluate(const SourceDocument& original, const SourceDocument& ground_truth,
                      const SourceDocument& variant, Granularity g, std::string program,
                      std::string tool, Diagnostics* diags) {
  Alignment gt_align = align_to_original(original, ground_truth);
  UnitSet u_gt = project_units(original, ground_truth, gt_align, g);
  if (g == Granularity::Loc && gt_align.foreign_count != 0) {
    throw InputError("ground truth for '" + program + "' has " +
                     std::to_string(gt_align.foreign_count) +
                     " lines with no counterpart in the original; ground truths may only "
                     "delete or simplify");
  }
  if (g == Granularity::Func && u_gt.foreign_count != 0) {
    throw InputError("ground truth for '" + program + "' defines " +
                     std::to_string(u_gt.foreign_count) +
                     " functions absent from the original");
  }

  Alignment var_align = align_to_original(original, variant);
  UnitSet u_d = project_units(original, variant, var_align, g);
  UnitSet u_base = base_units(original, g);
  return evaluate_prepared(u_base, u_gt, u_d, std::move(program), std::move(tool), diags);
}

int round_half_up(double value) {
  return static_cast<int>(std::floor(value + 0.5));
}

int percent_of_fraction(double fraction) {
  return round_half_up(fraction * 100.0);
}

std::vector<ToolAverage> aggregate(const std::vector<MetricResult>& results) {
  if (results.empty()) return {};
  Granularity g = results.front().granularity;
  for (const auto& r : results) {
    if (r.granularity != g) {
      throw InternalError("aggregate: results mix granularities");
    }
  }

  std::map<std::string, ToolAverage> by_tool;
  std::map<std::string, std::array<double, 3>> sums;
  for (const auto& r : results) {
    ToolAverage& avg = by_tool.try_emplace(r.tool).first->second;
    avg.tool = r.tool;
    avg.granularity = g;
    switch (r.status) {
      case EvalStatus::Ok: {
        auto& s = sums[r.tool];
        s[0] += r.frm_pct;
        s[1] += r.frt_pct;
        s[2] += r.f1;
        ++avg.ok_count;
        break;
      }
      case EvalStatus::SkippedTimeout:
        ++avg.skipped_timeout;
        break;
      case EvalStatus::SkippedCompileError:
        ++avg.skipped_compile_error;
        break;
    }
  }
  std::vector<ToolAverage> out;
  out.reserve(by_tool.size());
  for (auto& [tool, avg] : by_tool) {
    if (avg.ok_count > 0) {
      const auto& s = sums[tool];
      avg.frm_pct = s[0] / avg.ok_count;
      avg.frt_pct = s[1] / avg.ok_count;
      avg.f1 = s[2] / avg.ok_count;
    }
    out.push_back(std::move(avg));
  }
  return out;
}

}  // namespace dbeval
