#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dbeval/corpus.hpp"
#include "dbeval/detectors.hpp"
#include "dbeval/metrics.hpp"

namespace dbeval {

inline constexpr const char* kReportSchemaVersion = "dbeval.report/1";
inline constexpr const char* kToolkitVersion = "dbeval 0.1.0";

// One (program, tool, granularity) cell: a result, a T/C marker, or a
// structural skip (e.g. a symbol-list variant asked for line granularity).
struct ReportRow {
  std::string program;
  std::string tool;
  Granularity granularity = Granularity::Loc;
  std::optional<MetricResult> result;
  std::string skip_reason;  // non-empty only for structural skips

  bool skipped() const {
    return !result.has_value() || result->status != EvalStatus::Ok;
  }
};

struct ProgramIssues {
  std::string program;
  IssueReport report;
};

struct RunReport {
  std::string schema_version = kReportSchemaVersion;
  std::string generator = kToolkitVersion;  // free-text versioning metadata
  std::string generated_at;                 // empty in deterministic mode
  std::vector<std::string> programs;
  std::vector<std::string> tools;
  std::vector<ReportRow> metrics;
  std::vector<ToolAverage> averages;
  std::vector<AgreementResult> agreement;
  AgreementSummary agreement_summary;
  std::vector<ProgramIssues> issues;
  // corpus-level presence/absence: issue group -> tool -> fired anywhere
  std::map<std::string, std::map<std::string, bool>> issue_matrix;
  std::vector<std::string> notes;
};

struct RunOptions {
  std::vector<std::string> programs;  // empty = all
  std::vector<std::string> tools;
  std::optional<Granularity> granularity;
  bool deterministic = false;
  int jobs = 1;
  bool with_metrics = true;
  bool with_detectors = true;
  bool with_agreement = true;
};

// Loads the manifest and executes the requested passes. Per-entry failures
// are isolated into skip rows and notes; only manifest-level problems throw.
RunReport run(const std::filesystem::path& manifest_path, const RunOptions& options = {});

enum class TableFormat { Text, Csv, Markdown };

TableFormat table_format_from_name(const std::string& name);

std::string render_metrics_table(const RunReport& report, TableFormat format);
std::string render_issue_matrix(const RunReport& report);
std::string render_findings(const RunReport& report);
std::string render_agreement_table(const RunReport& report);

void emit_json(const RunReport& report, const std::filesystem::path& path);
std::string report_to_json(const RunReport& report);
RunReport load_report(const std::filesystem::path& path);

}  // namespace dbeval
