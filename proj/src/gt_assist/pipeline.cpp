#include <fstream>

#include <nlohmann/json.hpp>

#include "dbeval/gt_assist.hpp"

namespace dbeval {

FlagTable load_flag_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open flag table '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("flag table '" + path.string() + "' is not valid JSON: " + e.what());
  }
  FlagTable table;
  if (!j.contains("flags") || !j["flags"].is_object()) {
    throw InputError("flag table '" + path.string() + "' must contain a 'flags' object");
  }
  for (const auto& [name, value] : j["flags"].items()) {
    if (!value.is_number_integer()) {
      throw InputError("flag '" + name + "' must be a plain integer");
    }
    table.merge(name, value.get<long>(), FlagTable::Provenance::UserSupplied);
  }
  return table;
}

PipelineResult assist_pipeline(const SourceDocument& original,
                               const std::vector<RemovedFlag>& removed_flags,
                               const FlagTable& user_flags, int max_rounds,
                               Diagnostics* diags) {
  WorkingSource work(original);
  PipelineResult result;
  result.flags = user_flags;

  auto self_check = [&work, &result]() {
    auto findings = check_syntax_integrity(work.current().doc);
    if (!findings.empty()) {
      const SyntaxFinding& f = findings.front();
      std::string last_removal = "no removals yet";
      if (!result.log.entries.empty()) {
        const RemovalEntry& e = result.log.entries.back();
        last_removal = "last removal: lines " + std::to_string(e.begin) + "-" +
                       std::to_string(e.end) + " (" + removal_reason_name(e.reason) + ")";
      }
      throw InternalError("reduction broke syntax integrity: " + syntax_issue_name(f.kind) +
                          " near line " + std::to_string(f.line) + "; " + last_removal);
    }
  };

  if (!removed_flags.empty()) {
    GetoptMap map = build_getopt_map(work.current(), diags);
    prune_option_cases(work, map, removed_flags, &result.flags, &result.log, diags);
    self_check();
  }

  for (int round = 1; round <= max_rounds; ++round) {
    result.rounds_run = round;
    FoldStats folds = fold_conditionals(work, result.flags, &result.log, diags);
    int removed_functions = eliminate_dead_functions(work, &result.log, diags);
    self_check();
    if (folds.folded_true + folds.folded_false + removed_functions == 0) {
      break;  // fixpoint
    }
    ++result.rounds_with_changes;
  }

  result.reduced = work.current().doc;
  return result;
}

}  // namespace dbeval
