#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dbeval/report.hpp"

namespace fs = std::filesystem;
using namespace dbeval;

namespace {

struct GlobalOptions {
  std::string output_dir;
  bool deterministic = false;
  int jobs = 1;
};

fs::path pick_output_dir(const GlobalOptions& global, const fs::path& manifest_path) {
  if (!global.output_dir.empty()) return global.output_dir;
  EvaluationManifest manifest = load_manifest(manifest_path);
  if (!manifest.output_dir.empty()) return manifest.resolve(manifest.output_dir);
  return fs::current_path();
}

RunOptions base_run_options(const GlobalOptions& global) {
  RunOptions o;
  o.deterministic = global.deterministic;
  o.jobs = global.jobs;
  return o;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

int run_metrics(const fs::path& manifest, const GlobalOptions& global, RunOptions options) {
  RunReport report = run(manifest, options);
  std::cout << render_metrics_table(report, TableFormat::Text) << '\n';
  if (!report.agreement.empty()) {
    std::cout << '\n' << render_agreement_table(report);
  }
  fs::path dir = pick_output_dir(global, manifest);
  fs::create_directories(dir);
  emit_json(report, dir / "report.json");
  std::cerr << "report written to " << (dir / "report.json").string() << '\n';
  for (const std::string& note : report.notes) std::cerr << "note: " << note << '\n';
  return 0;
}

int run_detect(const fs::path& manifest, const GlobalOptions& global, RunOptions options,
               const std::vector<std::string>& issues) {
  options.with_metrics = false;
  options.with_agreement = false;
  RunReport report = run(manifest, options);
  if (!issues.empty()) {
    // Filter findings to the requested groups.
    std::set<std::string> keep(issues.begin(), issues.end());
    for (ProgramIssues& pi : report.issues) {
      for (auto& [tool, findings] : pi.report.findings_by_tool) {
        std::vector<Finding> kept;
        for (Finding& f : findings) {
          if (keep.count(issue_group(f.issue))) kept.push_back(std::move(f));
        }
        findings = std::move(kept);
      }
    }
    for (auto& [group, per_tool] : report.issue_matrix) {
      if (keep.count(group)) continue;
      for (auto& [tool, fired] : per_tool) fired = false;
    }
  }
  std::cout << render_issue_matrix(report) << '\n' << render_findings(report);
  fs::path dir = pick_output_dir(global, manifest);
  fs::create_directories(dir);
  emit_json(report, dir / "issues.json");
  std::cerr << "report written to " << (dir / "issues.json").string() << '\n';
  return 0;
}

int run_kappa(const fs::path& manifest, const GlobalOptions& global, RunOptions options) {
  options.with_metrics = false;
  options.with_detectors = false;
  RunReport report = run(manifest, options);
  if (report.agreement.empty()) {
    std::cout << "no program in the manifest declares an alt_ground_truth\n";
  } else {
    std::cout << render_agreement_table(report);
  }
  fs::path dir = pick_output_dir(global, manifest);
  fs::create_directories(dir);
  emit_json(report, dir / "agreement.json");
  return 0;
}

int run_align_cmd(const fs::path& original_path, const fs::path& variant_path, bool as_json) {
  Diagnostics diags;
  SourceDocument original = ingest_source(original_path, &diags);
  SourceDocument variant = ingest_source(variant_path, &diags);
  Alignment al = align_to_original(original, variant);
  if (as_json) {
    nlohmann::ordered_json j;
    j["original"] = original_path.string();
    j["variant"] = variant_path.string();
    j["matched"] = al.matched_count;
    j["foreign"] = al.foreign_count;
    nlohmann::ordered_json lines = nlohmann::ordered_json::object();
    for (int pos = 1; pos <= variant.line_count(); ++pos) {
      switch (al.kind(pos)) {
        case Alignment::Kind::NotUnit: break;
        case Alignment::Kind::Matched:
          lines[std::to_string(pos)] = al.original_of(pos);
          break;
        case Alignment::Kind::Foreign:
          lines[std::to_string(pos)] = "foreign";
          break;
      }
    }
    j["lines"] = lines;
    std::cout << j.dump(2) << '\n';
  } else {
    for (int pos = 1; pos <= variant.line_count(); ++pos) {
      switch (al.kind(pos)) {
        case Alignment::Kind::NotUnit: break;
        case Alignment::Kind::Matched:
          std::cout << pos << " -> " << al.original_of(pos) << '\n';
          break;
        case Alignment::Kind::Foreign:
          std::cout << pos << " -> foreign\n";
          break;
      }
    }
    std::cout << "matched " << al.matched_count << ", foreign " << al.foreign_count << '\n';
  }
  return 0;
}

int run_gt_assist(const fs::path& src, const std::vector<std::string>& remove_flags,
                  const std::string& flags_path, std::string out_path) {
  Diagnostics diags;
  SourceDocument original = ingest_source(src, &diags);

  std::vector<RemovedFlag> removed;
  for (const std::string& arg : remove_flags) {
    RemovedFlag f;
    bool numeric = !arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      f.code = std::stoi(arg);
    } else if (arg.size() == 1) {
      f.short_name = arg[0];
      f.code = static_cast<int>(arg[0]);
    } else {
      throw InputError("--remove-flag takes a short option character or a getopt code, got '" +
                       arg + "'");
    }
    removed.push_back(std::move(f));
  }

  FlagTable user_flags;
  if (!flags_path.empty()) user_flags = load_flag_table(flags_path);

  PipelineResult res = assist_pipeline(original, removed, user_flags, 10, &diags);

  if (out_path.empty()) out_path = src.stem().string() + ".reduced.c";
  fs::path out(out_path);
  {
    std::string text;
    for (const std::string& line : res.reduced.raw_lines) {
      text += line;
      text += '\n';
    }
    write_text(out, text);
  }
  {
    nlohmann::ordered_json j;
    j["input"] = src.string();
    j["entries"] = nlohmann::ordered_json::array();
    for (const RemovalEntry& e : res.log.entries) {
      j["entries"].push_back({{"begin", e.begin},
                              {"end", e.end},
                              {"reason", removal_reason_name(e.reason)},
                              {"snippet_key", e.snippet_key}});
    }
    write_text(out.string() + ".removal_log.json", j.dump(2) + "\n");
  }
  {
    nlohmann::ordered_json j;
    j["flags"] = nlohmann::ordered_json::object();
    j["provenance"] = nlohmann::ordered_json::object();
    for (const auto& [name, entry] : res.flags.entries) {
      j["flags"][name] = entry.value;
      j["provenance"][name] = entry.provenance == FlagTable::Provenance::UserSupplied
                                  ? "user-supplied"
                                  : "inferred-from-pruned-case";
    }
    write_text(out.string() + ".flags.json", j.dump(2) + "\n");
  }

  std::cout << "reduced source written to " << out.string() << '\n';
  std::cout << res.log.entries.size() << " removal log entries, "
            << res.rounds_with_changes << " round(s) changed the source\n";
  for (const auto& d : diags.entries()) std::cerr << "note: " << d.message << '\n';
  return 0;
}

int run_report_cmd(const fs::path& results, const std::string& format) {
  RunReport report = load_report(results);
  TableFormat fmt = table_format_from_name(format);
  std::cout << render_metrics_table(report, fmt) << '\n';
  if (!report.issues.empty()) std::cout << '\n' << render_issue_matrix(report);
  if (!report.agreement.empty()) std::cout << '\n' << render_agreement_table(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ground-truth based evaluation toolkit for C program debloaters"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("-o,--output-dir", global.output_dir, "directory for machine-readable output");
  app.add_flag("--deterministic", global.deterministic,
               "omit timestamps so identical inputs produce identical bytes");
  app.add_option("--jobs", global.jobs, "parallel workers across manifest entries")
      ->check(CLI::PositiveNumber);

  std::string manifest, original, variant, src, results;
  std::vector<std::string> tools, programs, issues, remove_flags;
  std::string granularity, flags_path, out_path, format = "text";
  bool as_json = false;

  CLI::App* metrics = app.add_subcommand("metrics", "compare variants against the ground truth");
  metrics->add_option("manifest", manifest, "evaluation manifest")->required();
  metrics->add_option("--tool", tools, "only these tools");
  metrics->add_option("--program", programs, "only these programs");
  metrics->add_option("--granularity", granularity, "loc or func");

  CLI::App* detect = app.add_subcommand("detect", "run the failure-class detectors");
  detect->add_option("manifest", manifest, "evaluation manifest")->required();
  detect->add_option("--tool", tools, "only these tools");
  detect->add_option("--program", programs, "only these programs");
  detect->add_option("--issue", issues, "only these issue groups (I1..I7)");

  CLI::App* kappa = app.add_subcommand("kappa", "inter-annotator agreement per program");
  kappa->add_option("manifest", manifest, "evaluation manifest")->required();
  kappa->add_option("--program", programs, "only these programs");

  CLI::App* align = app.add_subcommand("align", "dump a variant-to-original line alignment");
  align->add_option("original", original, "original source")->required();
  align->add_option("variant", variant, "variant source")->required();
  align->add_flag("--json", as_json, "emit JSON instead of text");

  CLI::App* assist = app.add_subcommand("gt-assist", "mechanized reduction passes");
  assist->add_option("source", src, "merged C source")->required();
  assist->add_option("--remove-flag", remove_flags, "short option char or getopt code");
  assist->add_option("--flags", flags_path, "user flag table JSON");
  assist->add_option("-o,--out", out_path, "output path for the reduced source");

  CLI::App* report_cmd = app.add_subcommand("report", "re-render a saved report");
  report_cmd->add_option("results", results, "report JSON")->required();
  report_cmd->add_option("--format", format, "text, csv, or markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunOptions options = base_run_options(global);
    options.tools = tools;
    options.programs = programs;
    if (!granularity.empty()) options.granularity = granularity_from_name(granularity);

    if (metrics->parsed()) return run_metrics(manifest, global, options);
    if (detect->parsed()) return run_detect(manifest, global, options, issues);
    if (kappa->parsed()) return run_kappa(manifest, global, options);
    if (align->parsed()) return run_align_cmd(original, variant, as_json);
    if (assist->parsed()) return run_gt_assist(src, remove_flags, flags_path, out_path);
    if (report_cmd->parsed()) return run_report_cmd(results, format);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
