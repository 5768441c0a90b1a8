#include <functional>

#include "internal.hpp"

namespace dbeval {

IssueReport run_all(const DetectorConfig& config, const SourceAnalysis& original,
                    const GetoptMap& getopt_map, const std::vector<RemovedFlag>& removed_flags,
                    const std::map<std::string, DiffInput>& variants_by_tool) {
  (void)original;
  IssueReport report;
  for (const std::string& group : issue_groups()) {
    for (const auto& [tool, in] : variants_by_tool) {
      (void)in;
      report.matrix[group][tool] = false;
    }
  }

  for (const auto& [tool, in] : variants_by_tool) {
    std::vector<Finding> all;
    Diagnostics diags;

    struct Pass {
      std::string group;
      std::function<std::vector<Finding>()> run;
    };
    std::vector<Pass> passes = {
        {"I1", [&] { return detect_branch_merge(in); }},
        {"I1", [&] { return detect_forced_nesting(in); }},
        {"I1", [&] { return detect_block_splits(in); }},
        {"I1", [&] { return detect_guard_removal(in, config); }},
        {"I2", [&] { return detect_residual_paths(in, config, getopt_map, removed_flags, &diags); }},
        {"I4", [&] { return detect_sync_removal(in, config); }},
        {"I5", [&] { return detect_error_handler_removal(in, config); }},
        {"I6", [&] { return detect_uninitialized_use(in); }},
        {"I7", [&] { return detect_syntactic_breakage(*in.variant); }},
    };

    // Findings must cite lines that exist in the document they claim.
    auto validate = [&](const std::vector<Finding>& found) {
      for (const Finding& f : found) {
        int limit = f.anchor == Finding::Anchor::Original ? in.original->doc.line_count()
                                                          : in.variant->doc.line_count();
        for (const LineSpan& s : f.lines) {
          if (s.begin < 1 || s.end > limit || s.begin > s.end) {
            throw InternalError("finding " + issue_id(f.issue) + " cites lines " +
                                std::to_string(s.begin) + "-" + std::to_string(s.end) +
                                " outside the " +
                                (f.anchor == Finding::Anchor::Original ? "original" : "variant"));
          }
        }
      }
    };

    for (const Pass& pass : passes) {
      if (!config.issue_enabled(pass.group)) continue;
      try {
        std::vector<Finding> found = pass.run();
        validate(found);
        all.insert(all.end(), found.begin(), found.end());
      } catch (const std::exception& e) {
        report.notes.push_back("tool '" + tool + "': detector " + pass.group +
                               " failed and was isolated: " + e.what());
      }
    }
    for (const auto& d : diags.entries()) {
      report.notes.push_back("tool '" + tool + "': " + d.message);
    }

    sort_findings(&all);
    for (const Finding& f : all) {
      report.matrix[issue_group(f.issue)][tool] = true;
    }
    report.findings_by_tool[tool] = std::move(all);
  }
  return report;
}

}  // namespace dbeval
