#include <fstream>

#include <nlohmann/json.hpp>

#include "dbeval/report.hpp"

namespace dbeval {

using ordered_json = nlohmann::ordered_json;

namespace {

IssueClass issue_class_from_id(const std::string& id) {
  for (IssueClass c : {IssueClass::I1a, IssueClass::I1b, IssueClass::I1c, IssueClass::I1d,
                       IssueClass::I2, IssueClass::I4, IssueClass::I5Env, IssueClass::I5Input,
                       IssueClass::I6, IssueClass::I7}) {
    if (issue_id(c) == id) return c;
  }
  throw InputError("unknown issue id '" + id + "' in report");
}

ordered_json finding_to_json(const Finding& f) {
  ordered_json j;
  j["issue"] = issue_id(f.issue);
  j["function"] = f.function;
  j["lines"] = ordered_json::array();
  for (const LineSpan& s : f.lines) j["lines"].push_back({{"begin", s.begin}, {"end", s.end}});
  j["evidence"] = f.evidence;
  j["confidence"] = confidence_name(f.confidence);
  j["anchor"] = f.anchor == Finding::Anchor::Original ? "original" : "variant";
  return j;
}

Finding finding_from_json(const ordered_json& j) {
  Finding f;
  f.issue = issue_class_from_id(j.at("issue").get<std::string>());
  f.function = j.at("function").get<std::string>();
  for (const auto& s : j.at("lines")) {
    f.lines.push_back({s.at("begin").get<int>(), s.at("end").get<int>()});
  }
  f.evidence = j.at("evidence").get<std::string>();
  f.confidence =
      j.at("confidence").get<std::string>() == "high" ? Confidence::High : Confidence::Heuristic;
  f.anchor = j.at("anchor").get<std::string>() == "variant" ? Finding::Anchor::Variant
                                                            : Finding::Anchor::Original;
  return f;
}

ordered_json row_to_json(const ReportRow& row) {
  ordered_json j;
  j["program"] = row.program;
  j["tool"] = row.tool;
  j["granularity"] = granularity_name(row.granularity);
  if (!row.result) {
    j["status"] = "skipped";
    j["skip_reason"] = row.skip_reason;
    return j;
  }
  const MetricResult& r = *row.result;
  j["status"] = eval_status_name(r.status);
  if (r.status != EvalStatus::Ok) return j;
  j["false_removal"] = r.false_removal;
  j["false_retention"] = r.false_retention;
  j["frm_pct"] = r.frm_pct;
  j["frt_pct"] = r.frt_pct;
  j["f1"] = r.f1;
  j["foreign_count"] = r.foreign_count;
  j["base_units"] = r.base_unit_count;
  j["gt_units"] = r.gt_unit_count;
  j["variant_units"] = r.variant_unit_count;
  j["frm_denominator_zero"] = r.frm_denominator_zero;
  j["frt_denominator_zero"] = r.frt_denominator_zero;
  return j;
}

ReportRow row_from_json(const ordered_json& j) {
  ReportRow row;
  row.program = j.at("program").get<std::string>();
  row.tool = j.at("tool").get<std::string>();
  row.granularity = granularity_from_name(j.at("granularity").get<std::string>());
  std::string status = j.at("status").get<std::string>();
  if (status == "skipped") {
    row.skip_reason = j.value("skip_reason", "");
    return row;
  }
  MetricResult r;
  r.program = row.program;
  r.tool = row.tool;
  r.granularity = row.granularity;
  if (status == "skipped-T") {
    r.status = EvalStatus::SkippedTimeout;
  } else if (status == "skipped-C") {
    r.status = EvalStatus::SkippedCompileError;
  } else {
    r.status = EvalStatus::Ok;
    r.false_removal = j.at("false_removal").get<long>();
    r.false_retention = j.at("false_retention").get<long>();
    r.frm_pct = j.at("frm_pct").get<double>();
    r.frt_pct = j.at("frt_pct").get<double>();
    r.f1 = j.at("f1").get<double>();
    r.foreign_count = j.at("foreign_count").get<long>();
    r.base_unit_count = j.at("base_units").get<long>();
    r.gt_unit_count = j.at("gt_units").get<long>();
    r.variant_unit_count = j.at("variant_units").get<long>();
    r.frm_denominator_zero = j.at("frm_denominator_zero").get<bool>();
    r.frt_denominator_zero = j.at("frt_denominator_zero").get<bool>();
  }
  row.result = std::move(r);
  return row;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["generator"] = report.generator;
  if (report.generated_at.empty()) {
    j["generated_at"] = nullptr;
  } else {
    j["generated_at"] = report.generated_at;
  }
  j["programs"] = report.programs;
  j["tools"] = report.tools;

  j["metrics"] = ordered_json::array();
  for (const ReportRow& row : report.metrics) j["metrics"].push_back(row_to_json(row));

  j["averages"] = ordered_json::array();
  for (const ToolAverage& a : report.averages) {
    ordered_json aj;
    aj["tool"] = a.tool;
    aj["granularity"] = granularity_name(a.granularity);
    if (a.frm_pct) aj["frm_pct"] = *a.frm_pct;
    if (a.frt_pct) aj["frt_pct"] = *a.frt_pct;
    if (a.f1) aj["f1"] = *a.f1;
    aj["ok_count"] = a.ok_count;
    aj["skipped_timeout"] = a.skipped_timeout;
    aj["skipped_compile_error"] = a.skipped_compile_error;
    j["averages"].push_back(aj);
  }

  j["agreement"] = ordered_json::array();
  for (const AgreementResult& a : report.agreement) {
    ordered_json aj;
    aj["program"] = a.program;
    aj["kappa"] = a.kappa;
    aj["p_o"] = a.p_o;
    aj["p_e"] = a.p_e;
    aj["n_units"] = a.n_units;
    aj["n_keep_keep"] = a.n_keep_keep;
    aj["n_keep_remove"] = a.n_keep_remove;
    aj["n_remove_keep"] = a.n_remove_keep;
    aj["n_remove_remove"] = a.n_remove_remove;
    j["agreement"].push_back(aj);
  }
  {
    ordered_json s;
    if (report.agreement_summary.mean_of_programs) {
      s["mean_of_programs"] = *report.agreement_summary.mean_of_programs;
    } else {
      s["mean_of_programs"] = nullptr;
    }
    if (report.agreement_summary.pooled_kappa) {
      s["pooled_kappa"] = *report.agreement_summary.pooled_kappa;
    } else {
      s["pooled_kappa"] = nullptr;
    }
    s["pooled_units"] = report.agreement_summary.pooled_units;
    j["agreement_summary"] = s;
  }

  {
    ordered_json issues;
    issues["matrix"] = ordered_json::object();
    for (const auto& [group, per_tool] : report.issue_matrix) {
      ordered_json row = ordered_json::object();
      for (const auto& [tool, fired] : per_tool) row[tool] = fired;
      issues["matrix"][group] = row;
    }
    issues["programs"] = ordered_json::array();
    for (const ProgramIssues& pi : report.issues) {
      ordered_json pj;
      pj["program"] = pi.program;
      pj["findings"] = ordered_json::object();
      for (const auto& [tool, findings] : pi.report.findings_by_tool) {
        ordered_json arr = ordered_json::array();
        for (const Finding& f : findings) arr.push_back(finding_to_json(f));
        pj["findings"][tool] = arr;
      }
      pj["notes"] = pi.report.notes;
      issues["programs"].push_back(pj);
    }
    j["issues"] = issues;
  }

  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

void emit_json(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write report to '" + path.string() + "'");
  out << report_to_json(report);
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report '" + path.string() + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("report '" + path.string() + "' is not valid JSON: " + e.what());
  }
  RunReport report;
  report.schema_version = j.at("schema_version").get<std::string>();
  if (report.schema_version != kReportSchemaVersion) {
    throw InputError("unsupported report schema '" + report.schema_version + "' (expected " +
                     kReportSchemaVersion + ")");
  }
  report.generator = j.value("generator", "");
  if (!j.at("generated_at").is_null()) {
    report.generated_at = j.at("generated_at").get<std::string>();
  }
  report.programs = j.at("programs").get<std::vector<std::string>>();
  report.tools = j.at("tools").get<std::vector<std::string>>();
  for (const auto& rj : j.at("metrics")) report.metrics.push_back(row_from_json(rj));
  for (const auto& aj : j.at("averages")) {
    ToolAverage a;
    a.tool = aj.at("tool").get<std::string>();
    a.granularity = granularity_from_name(aj.at("granularity").get<std::string>());
    if (aj.contains("frm_pct")) a.frm_pct = aj.at("frm_pct").get<double>();
    if (aj.contains("frt_pct")) a.frt_pct = aj.at("frt_pct").get<double>();
    if (aj.contains("f1")) a.f1 = aj.at("f1").get<double>();
    a.ok_count = aj.at("ok_count").get<int>();
    a.skipped_timeout = aj.at("skipped_timeout").get<int>();
    a.skipped_compile_error = aj.at("skipped_compile_error").get<int>();
    report.averages.push_back(std::move(a));
  }
  for (const auto& aj : j.at("agreement")) {
    AgreementResult a;
    a.program = aj.at("program").get<std::string>();
    a.kappa = aj.at("kappa").get<double>();
    a.p_o = aj.at("p_o").get<double>();
    a.p_e = aj.at("p_e").get<double>();
    a.n_units = aj.at("n_units").get<long>();
    a.n_keep_keep = aj.at("n_keep_keep").get<long>();
    a.n_keep_remove = aj.at("n_keep_remove").get<long>();
    a.n_remove_keep = aj.at("n_remove_keep").get<long>();
    a.n_remove_remove = aj.at("n_remove_remove").get<long>();
    report.agreement.push_back(std::move(a));
  }
  {
    const auto& s = j.at("agreement_summary");
    if (!s.at("mean_of_programs").is_null()) {
      report.agreement_summary.mean_of_programs = s.at("mean_of_programs").get<double>();
    }
    if (!s.at("pooled_kappa").is_null()) {
      report.agreement_summary.pooled_kappa = s.at("pooled_kappa").get<double>();
    }
    report.agreement_summary.pooled_units = s.at("pooled_units").get<long>();
  }
  {
    const auto& issues = j.at("issues");
    for (const auto& [group, row] : issues.at("matrix").items()) {
      for (const auto& [tool, fired] : row.items()) {
        report.issue_matrix[group][tool] = fired.get<bool>();
      }
    }
    for (const auto& pj : issues.at("programs")) {
      ProgramIssues pi;
      pi.program = pj.at("program").get<std::string>();
      for (const auto& [tool, arr] : pj.at("findings").items()) {
        std::vector<Finding> fs;
        for (const auto& fj : arr) fs.push_back(finding_from_json(fj));
        pi.report.findings_by_tool.emplace(tool, std::move(fs));
      }
      pi.report.notes = pj.at("notes").get<std::vector<std::string>>();
      report.issues.push_back(std::move(pi));
    }
  }
  report.notes = j.at("notes").get<std::vector<std::string>>();
  return report;
}

}  // namespace dbeval
