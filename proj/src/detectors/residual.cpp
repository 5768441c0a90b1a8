#include <algorithm>
#include <set>

#include "../gt_assist/internal.hpp"
#include "internal.hpp"

namespace dbeval {

namespace {

using det::make_finding;
using det::retained;

struct Region {
  std::vector<int> lines;  // substantive unit lines making up the feature region
  std::string what;
};

void report_region(const DiffInput& in, const Region& region, const std::string& flag_name,
                   std::vector<Finding>* findings) {
  std::vector<int> kept, gone;
  for (int line : region.lines) {
    (retained(in, line) ? kept : gone).push_back(line);
  }
  if (kept.empty()) return;  // feature fully removed: nothing residual
  bool partial = !gone.empty();
  Confidence conf = partial ? Confidence::High : Confidence::Heuristic;
  std::string evidence = "retained code for removed feature " + flag_name + " (" + region.what +
                         (partial ? "); path is partially removed and residual" : ")");
  findings->push_back(make_finding(IssueClass::I2,
                                   det::function_name_at(*in.original, kept.front()), kept,
                                   evidence, conf));
}

}  // namespace

std::vector<Finding> detect_residual_paths(const DiffInput& in, const DetectorConfig& config,
                                           const GetoptMap& getopt_map,
                                           const std::vector<RemovedFlag>& removed_flags,
                                           Diagnostics* diags) {
  (void)config;
  std::vector<Finding> findings;
  if (removed_flags.empty()) return findings;
  if (getopt_map.options.empty()) {
    diag_warn(diags, "residual-path detector skipped: no option map for this program");
    return findings;
  }
  const SourceAnalysis& orig = *in.original;
  // A variant that removed nothing is not a debloated artifact; retained
  // feature paths only become residual once the feature was cut elsewhere.
  if (static_cast<std::size_t>(in.alignment->matched_count) == orig.doc.unit_count()) {
    return findings;
  }

  for (const RemovedFlag& rf : removed_flags) {
    std::optional<int> code = rf.code;
    if (!code && rf.short_name) code = static_cast<int>(*rf.short_name);
    const GetoptOption* opt = code ? getopt_map.find_code(*code) : nullptr;
    std::string flag_name = !rf.long_name.empty()
                                ? "--" + rf.long_name
                                : (rf.short_name ? "-" + std::string(1, *rf.short_name) : "?");
    if (!opt) {
      diag_warn(diags, "residual-path detector: flag " + flag_name + " not in the option map");
      continue;
    }

    // The option's own dispatch case.
    Region case_region;
    case_region.what = "option case block";
    for (int line = opt->case_begin; line <= opt->case_end; ++line) {
      if (orig.doc.is_unit(line) && !det::structural_only(orig.doc.record(line).normalized)) {
        case_region.lines.push_back(line);
      }
    }
    for (int line : opt->dispatch_lines) {
      if (orig.doc.is_unit(line) && !det::structural_only(orig.doc.record(line).normalized)) {
        case_region.lines.push_back(line);
      }
    }
    report_region(in, case_region, flag_name, &findings);

    // Blocks guarded by the flag variables the case sets: any branch that is
    // statically dead once the flag keeps its resting value.
    FlagTable resting;
    for (const auto& [name, set_value] : opt->flag_assignments) {
      (void)set_value;
      long v = gt_detail::global_initializer(orig, name).value_or(0);
      resting.merge(name, v, FlagTable::Provenance::InferredFromPrunedCase);
    }
    if (resting.entries.empty()) continue;

    for (const IfStmt& st : orig.skeleton.ifs) {
      bool mentions = false;
      for (const std::string& ident : det::guard_identifiers(orig, st)) {
        if (resting.has(ident)) mentions = true;
      }
      if (!mentions) continue;
      std::optional<long> v = evaluate_guard(orig.tokens, st.guard_begin, st.guard_end, resting);
      if (!v) continue;
      int dead_arm = *v == 0 ? st.then_block : st.else_block;
      if (dead_arm < 0) continue;
      Region guarded;
      guarded.what = "feature-guarded block at line " + std::to_string(st.header_line);
      guarded.lines = det::substantive_block_lines(orig, dead_arm);
      report_region(in, guarded, flag_name, &findings);
    }
  }
  sort_findings(&findings);
  return findings;
}

std::vector<Finding> detect_sync_removal(const DiffInput& in, const DetectorConfig& config) {
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;

  for (const FunctionDef& fn : orig.functions) {
    bool fn_retained = false;
    for (int line = fn.span_begin; line <= fn.span_end; ++line) {
      if (orig.doc.is_unit(line) && !det::structural_only(orig.doc.record(line).normalized) &&
          retained(in, line)) {
        fn_retained = true;
        break;
      }
    }
    if (!fn_retained) continue;

    // (a) lock/unlock counts balanced in the original, broken by removals.
    for (const auto& [lock, unlock] : config.sync_pairs) {
      std::vector<int> locks = det::call_lines(orig, fn, {lock});
      std::vector<int> unlocks = det::call_lines(orig, fn, {unlock});
      if (locks.empty() || locks.size() != unlocks.size()) continue;
      long kept_locks = std::count_if(locks.begin(), locks.end(),
                                      [&](int l) { return retained(in, l); });
      long kept_unlocks = std::count_if(unlocks.begin(), unlocks.end(),
                                        [&](int l) { return retained(in, l); });
      if (kept_locks != kept_unlocks) {
        std::vector<int> lines = locks;
        lines.insert(lines.end(), unlocks.begin(), unlocks.end());
        findings.push_back(make_finding(
            IssueClass::I4, fn.name, std::move(lines),
            "lock/unlock balance of " + lock + "/" + unlock + " broken in '" + fn.name + "' (" +
                std::to_string(kept_locks) + " vs " + std::to_string(kept_unlocks) + " retained)",
            Confidence::High));
      }
    }

    // (b) protection removed, protected body kept: a removed lock whose
    // critical section (up to the matching unlock) still has retained lines.
    for (const auto& [lock, unlock] : config.sync_pairs) {
      std::vector<int> locks = det::call_lines(orig, fn, {lock});
      std::vector<int> unlocks = det::call_lines(orig, fn, {unlock});
      for (int lline : locks) {
        if (retained(in, lline)) continue;
        int uline = 0;
        for (int u : unlocks) {
          if (u > lline) {
            uline = u;
            break;
          }
        }
        if (uline == 0) continue;
        std::vector<int> stranded;
        for (int line = lline + 1; line < uline; ++line) {
          if (orig.doc.is_unit(line) && !det::structural_only(orig.doc.record(line).normalized) &&
              retained(in, line)) {
            stranded.push_back(line);
          }
        }
        if (!stranded.empty()) {
          std::vector<int> lines = {lline, uline};
          lines.insert(lines.end(), stranded.begin(), stranded.end());
          findings.push_back(make_finding(
              IssueClass::I4, fn.name, std::move(lines),
              "critical section in '" + fn.name + "' retained while its " + lock + "/" + unlock +
                  " protection was removed",
              Confidence::High));
        }
      }
    }

    // (c) a removed signal whose paired wait survives somewhere.
    for (const auto& [sig, wait] : config.signal_wait_pairs) {
      for (int line : det::call_lines(orig, fn, {sig})) {
        if (retained(in, line)) continue;
        bool wait_survives = false;
        for (const FunctionDef& other : orig.functions) {
          for (int wline : det::call_lines(orig, other, {wait})) {
            if (retained(in, wline)) wait_survives = true;
          }
        }
        if (wait_survives) {
          findings.push_back(make_finding(
              IssueClass::I4, fn.name, {line},
              "signal " + sig + " removed at line " + std::to_string(line) +
                  " while a paired " + wait + " is retained",
              Confidence::Heuristic));
        }
      }
    }
  }
  sort_findings(&findings);
  return findings;
}

}  // namespace dbeval
