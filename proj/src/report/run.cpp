#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <set>
#include <thread>

#include "dbeval/report.hpp"

namespace dbeval {

namespace {

std::string timestamp_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

bool selected(const std::vector<std::string>& filter, const std::string& name) {
  if (filter.empty()) return true;
  return std::find(filter.begin(), filter.end(), name) != filter.end();
}

struct ProgramOutcome {
  std::vector<ReportRow> rows;
  std::optional<AgreementResult> agreement;
  std::optional<ProgramIssues> issues;
  std::vector<std::string> notes;
};

EvalStatus status_of_marker(FailureMarker m) {
  return m == FailureMarker::Timeout ? EvalStatus::SkippedTimeout
                                     : EvalStatus::SkippedCompileError;
}

ProgramOutcome evaluate_program(const EvaluationManifest& manifest, const ProgramTriple& triple,
                                const RunOptions& options, const DetectorConfig& det_config) {
  ProgramOutcome out;
  Diagnostics diags;

  std::vector<Granularity> grans;
  for (Granularity g : triple.granularities) {
    if (!options.granularity || *options.granularity == g) grans.push_back(g);
  }

  SourceAnalysis original = analyze(ingest_source(manifest.resolve(triple.original), &diags));
  SourceDocument gt_doc = ingest_source(manifest.resolve(triple.ground_truth), &diags);
  Alignment gt_align = align_to_original(original.doc, gt_doc);

  std::map<Granularity, UnitSet> base_sets, gt_sets;
  for (Granularity g : grans) {
    base_sets[g] = base_units(original.doc, g);
    UnitSet u_gt = project_units(original.doc, gt_doc, gt_align, g);
    if (g == Granularity::Loc && gt_align.foreign_count != 0) {
      throw InputError("ground truth for '" + triple.name + "' has " +
                       std::to_string(gt_align.foreign_count) +
                       " lines with no counterpart in the original");
    }
    if (g == Granularity::Func && u_gt.foreign_count != 0) {
      throw InputError("ground truth for '" + triple.name + "' defines functions absent from "
                       "the original");
    }
    gt_sets[g] = std::move(u_gt);
  }

  GetoptMap getopt_map;
  if (options.with_detectors) {
    getopt_map = build_getopt_map(original, &diags);
  }

  // Loaded source variants are shared between the metric and detector passes.
  std::map<std::string, SourceAnalysis> variant_analyses;
  std::map<std::string, Alignment> variant_alignments;

  for (const auto& [tool, input] : triple.variants) {
    if (!selected(options.tools, tool)) continue;

    if (input.kind == VariantKind::Source) {
      SourceAnalysis va = analyze(ingest_source(manifest.resolve(*input.path), &diags));
      Alignment al = align_to_original(original.doc, va.doc);
      variant_alignments.emplace(tool, std::move(al));
      variant_analyses.emplace(tool, std::move(va));
    }

    if (!options.with_metrics) continue;
    for (Granularity g : grans) {
      ReportRow row;
      row.program = triple.name;
      row.tool = tool;
      row.granularity = g;
      switch (input.kind) {
        case VariantKind::Failed: {
          MetricResult r;
          r.program = triple.name;
          r.tool = tool;
          r.granularity = g;
          r.status = status_of_marker(*input.failure_marker);
          row.result = std::move(r);
          break;
        }
        case VariantKind::SymbolList: {
          if (g != Granularity::Func) {
            row.skip_reason = "symbol-list variant has no source lines";
            break;
          }
          UnitSet symbols = ingest_symbol_list(manifest.resolve(*input.path), &diags);
          // Split into units defined in the original and foreign names.
          UnitSet u_d;
          u_d.granularity = Granularity::Func;
          const UnitSet& base = base_sets.at(g);
          for (const std::string& name : symbols.name_units) {
            if (std::binary_search(base.name_units.begin(), base.name_units.end(), name)) {
              u_d.name_units.push_back(name);
            } else {
              ++u_d.foreign_count;
            }
          }
          row.result =
              evaluate_prepared(base, gt_sets.at(g), u_d, triple.name, tool, &diags);
          break;
        }
        case VariantKind::Source: {
          const SourceAnalysis& va = variant_analyses.at(tool);
          const Alignment& al = variant_alignments.at(tool);
          UnitSet u_d = project_units(original.doc, va.doc, al, g);
          row.result =
              evaluate_prepared(base_sets.at(g), gt_sets.at(g), u_d, triple.name, tool, &diags);
          break;
        }
      }
      out.rows.push_back(std::move(row));
    }
  }

  if (options.with_agreement && triple.alt_ground_truth) {
    SourceDocument alt = ingest_source(manifest.resolve(*triple.alt_ground_truth), &diags);
    out.agreement = agreement_between_ground_truths(original.doc, gt_doc, alt, triple.name);
  }

  if (options.with_detectors && !variant_analyses.empty()) {
    std::map<std::string, DiffInput> inputs;
    for (const auto& [tool, va] : variant_analyses) {
      inputs.emplace(tool, DiffInput{&original, &va, &variant_alignments.at(tool)});
    }
    ProgramIssues pi;
    pi.program = triple.name;
    pi.report = run_all(det_config, original, getopt_map, triple.removed_flags, inputs);
    out.issues = std::move(pi);
  }

  for (const auto& d : diags.entries()) {
    out.notes.push_back("program '" + triple.name + "': " + d.message);
  }
  return out;
}

}  // namespace

TableFormat table_format_from_name(const std::string& name) {
  if (name == "text") return TableFormat::Text;
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown") return TableFormat::Markdown;
  throw InputError("unknown table format '" + name + "' (expected text, csv, or markdown)");
}

RunReport run(const std::filesystem::path& manifest_path, const RunOptions& options) {
  EvaluationManifest manifest = load_manifest(manifest_path);
  RunReport report;
  if (!options.deterministic) report.generated_at = timestamp_now();

  DetectorConfig det_config = DetectorConfig::defaults();
  if (manifest.detector_config) {
    det_config = load_detector_config(manifest.resolve(*manifest.detector_config));
  }

  std::vector<const ProgramTriple*> entries;
  for (const ProgramTriple& t : manifest.entries) {
    if (selected(options.programs, t.name)) entries.push_back(&t);
  }

  std::set<std::string> tool_names;
  for (const ProgramTriple* t : entries) {
    report.programs.push_back(t->name);
    for (const auto& [tool, v] : t->variants) {
      (void)v;
      if (selected(options.tools, tool)) tool_names.insert(tool);
    }
  }
  report.tools.assign(tool_names.begin(), tool_names.end());

  std::vector<ProgramOutcome> outcomes(entries.size());
  auto work = [&](std::size_t index) {
    const ProgramTriple& triple = *entries[index];
    try {
      outcomes[index] = evaluate_program(manifest, triple, options, det_config);
    } catch (const std::exception& e) {
      ProgramOutcome failed;
      failed.notes.push_back("program '" + triple.name + "' skipped: " + e.what());
      for (const auto& [tool, v] : triple.variants) {
        (void)v;
        if (!selected(options.tools, tool)) continue;
        for (Granularity g : triple.granularities) {
          if (options.granularity && *options.granularity != g) continue;
          ReportRow row;
          row.program = triple.name;
          row.tool = tool;
          row.granularity = g;
          row.skip_reason = std::string("program failed to load: ") + e.what();
          failed.rows.push_back(std::move(row));
        }
      }
      outcomes[index] = std::move(failed);
    }
  };

  int jobs = std::max(1, options.jobs);
  if (jobs == 1 || entries.size() <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(static_cast<std::size_t>(jobs), entries.size());
    for (int t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) {
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const std::string& group : issue_groups()) {
    for (const std::string& tool : report.tools) {
      report.issue_matrix[group][tool] = false;
    }
  }
  for (ProgramOutcome& o : outcomes) {
    for (ReportRow& row : o.rows) report.metrics.push_back(std::move(row));
    if (o.agreement) report.agreement.push_back(std::move(*o.agreement));
    if (o.issues) {
      for (const auto& [group, per_tool] : o.issues->report.matrix) {
        for (const auto& [tool, fired] : per_tool) {
          if (fired) report.issue_matrix[group][tool] = true;
        }
      }
      report.issues.push_back(std::move(*o.issues));
    }
    for (std::string& n : o.notes) report.notes.push_back(std::move(n));
  }

  // Averages per granularity over the metric rows.
  for (Granularity g : {Granularity::Loc, Granularity::Func}) {
    std::vector<MetricResult> results;
    for (const ReportRow& row : report.metrics) {
      if (row.granularity == g && row.result) results.push_back(*row.result);
    }
    if (results.empty()) continue;
    std::vector<ToolAverage> avgs = aggregate(results);
    report.averages.insert(report.averages.end(), avgs.begin(), avgs.end());
  }

  if (!report.agreement.empty()) {
    report.agreement_summary = summarize_agreement(report.agreement);
  }
  return report;
}

}  // namespace dbeval
