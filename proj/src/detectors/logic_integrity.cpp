#include <algorithm>
#include <map>
#include <set>

#include "internal.hpp"

namespace dbeval {

namespace {

using det::make_finding;
using det::retained;

// Variant leaf block of a retained original line.
int variant_leaf(const DiffInput& in, int orig_line) {
  int vline = in.alignment->variant_of(orig_line);
  if (vline == 0) return -1;
  return in.variant->skeleton.primary_leaf(vline);
}

}  // namespace

// I1a: lines from both arms of one if/else now share a single block because
// the separating structure went away.
std::vector<Finding> detect_branch_merge(const DiffInput& in) {
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;

  for (const IfStmt& st : orig.skeleton.ifs) {
    if (st.then_block < 0 || st.else_block < 0) continue;
    std::vector<int> then_lines = det::substantive_block_lines(orig, st.then_block);
    std::vector<int> else_lines = det::substantive_block_lines(orig, st.else_block);

    std::map<int, int> then_leaves;  // variant leaf -> first original line
    bool then_any = false, else_any = false;
    for (int line : then_lines) {
      int leaf = variant_leaf(in, line);
      if (leaf >= 0) {
        then_any = true;
        then_leaves.emplace(leaf, line);
      }
    }
    if (!then_any) continue;

    std::vector<int> merged_lines;
    for (int line : else_lines) {
      int leaf = variant_leaf(in, line);
      if (leaf < 0) continue;
      else_any = true;
      auto it = then_leaves.find(leaf);
      if (it != then_leaves.end()) {
        merged_lines.push_back(it->second);
        merged_lines.push_back(line);
      }
    }
    if (!else_any || merged_lines.empty()) continue;

    bool guard_removed = !retained(in, st.header_line);
    bool else_removed = st.else_line > 0 && !retained(in, st.else_line);
    Confidence conf = (guard_removed || else_removed) ? Confidence::High : Confidence::Heuristic;
    findings.push_back(make_finding(
        IssueClass::I1a, det::function_name_at(orig, st.header_line), std::move(merged_lines),
        "mutually exclusive branches of the conditional at line " +
            std::to_string(st.header_line) + " are merged into one path",
        conf));
  }
  sort_findings(&findings);
  return findings;
}

// I1b: a retained line acquired a conditional ancestor it did not have in the
// original (independent blocks became nested).
std::vector<Finding> detect_forced_nesting(const DiffInput& in) {
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;
  const SourceAnalysis& var = *in.variant;

  // One finding per gained ancestor, anchored at its first re-parented line.
  std::map<int, std::vector<int>> gained;  // original anchor header -> affected lines

  for (int vline = 1; vline <= var.doc.line_count(); ++vline) {
    if (in.alignment->kind(vline) != Alignment::Kind::Matched) continue;
    int oline = in.alignment->original_of(vline);
    if (det::structural_only(var.doc.record(vline).normalized)) continue;

    int leaf = var.skeleton.primary_leaf(vline);
    if (leaf < 0) continue;
    for (int block : var.skeleton.path_of(leaf)) {
      const Block& vb = var.skeleton.blocks[static_cast<std::size_t>(block)];
      if (vb.kind != BlockKind::IfThen && vb.kind != BlockKind::IfElse) continue;
      if (vb.if_stmt < 0) continue;
      const IfStmt& vif = var.skeleton.ifs[static_cast<std::size_t>(vb.if_stmt)];
      if (vif.header_line == vline) continue;  // a line is not its own ancestor
      if (in.alignment->kind(vif.header_line) != Alignment::Kind::Matched) continue;
      int anchor = in.alignment->original_of(vif.header_line);

      // The corresponding original if statement, by header line.
      const IfStmt* oif = nullptr;
      for (const IfStmt& cand : orig.skeleton.ifs) {
        if (cand.header_line == anchor) {
          oif = &cand;
          break;
        }
      }
      if (!oif) continue;
      int same_arm = vb.kind == BlockKind::IfThen ? oif->then_block : oif->else_block;
      int sibling_arm = vb.kind == BlockKind::IfThen ? oif->else_block : oif->then_block;
      if (same_arm >= 0 && orig.skeleton.line_in_block(oline, same_arm)) continue;
      // A line that slid from one arm to the other is a merge (I1a), not nesting.
      if (sibling_arm >= 0 && orig.skeleton.line_in_block(oline, sibling_arm)) continue;
      gained[anchor].push_back(oline);
    }
  }

  for (auto& [anchor, lines] : gained) {
    std::sort(lines.begin(), lines.end());
    int first = lines.front();
    findings.push_back(make_finding(
        IssueClass::I1b, det::function_name_at(orig, first), lines,
        std::to_string(lines.size()) + " retained line(s) became dependent on the conditional at "
        "line " + std::to_string(anchor) + "; first re-parented line " + std::to_string(first),
        Confidence::High));
  }
  sort_findings(&findings);
  return findings;
}

namespace {

bool loop_guard_always_true(const SourceAnalysis& a, const Block& loop) {
  if (loop.kind == BlockKind::Do) return false;
  std::vector<std::string> header;
  for (const Token& t : a.tokens) {
    if (t.line == loop.header_line) header.push_back(t.text);
    if (t.line > loop.header_line) break;
  }
  auto window = [&header](std::size_t i, std::initializer_list<const char*> pat) {
    if (i + pat.size() > header.size()) return false;
    std::size_t k = i;
    for (const char* p : pat) {
      if (header[k++] != p) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (window(i, {"while", "(", "1", ")"})) return true;
    if (window(i, {"for", "(", ";", ";", ")"})) return true;
  }
  return false;
}

}  // namespace

// I1c: a loop is retained but the lines that used to terminate it are gone.
std::vector<Finding> detect_block_splits(const DiffInput& in) {
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;

  for (const Block& loop : orig.skeleton.blocks) {
    if (loop.kind != BlockKind::While && loop.kind != BlockKind::For &&
        loop.kind != BlockKind::Do) {
      continue;
    }
    if (!retained(in, loop.header_line)) continue;

    std::vector<int> body = det::substantive_block_lines(orig, loop.id);
    bool body_retained = false;
    for (int line : body) {
      if (retained(in, line)) {
        body_retained = true;
        break;
      }
    }
    if (!body_retained) continue;

    // Termination logic: breaks owned by this loop, plus gotos jumping out.
    std::vector<int> term_lines;
    for (const BreakStmt& br : orig.skeleton.breaks) {
      if (br.owner_block == loop.id) term_lines.push_back(br.line);
    }
    const FunctionDef* fn = orig.function_at(loop.header_line);
    for (const GotoStmt& g : orig.skeleton.gotos) {
      if (g.line < loop.begin_line || g.line > loop.end_line) continue;
      for (const LabelDef& l : orig.skeleton.labels) {
        if (l.name != g.label || (fn && orig.function_at(l.line) != fn)) continue;
        if (l.line < loop.begin_line || l.line > loop.end_line) {
          term_lines.push_back(g.line);
        }
        break;
      }
    }
    std::sort(term_lines.begin(), term_lines.end());
    term_lines.erase(std::unique(term_lines.begin(), term_lines.end()), term_lines.end());
    if (term_lines.empty()) continue;

    int removed = 0;
    std::vector<int> removed_lines;
    for (int line : term_lines) {
      if (!retained(in, line)) {
        ++removed;
        removed_lines.push_back(line);
      }
    }
    if (removed == 0) continue;

    bool all_removed = removed == static_cast<int>(term_lines.size());
    Confidence conf = (all_removed && loop_guard_always_true(orig, loop)) ? Confidence::High
                                                                          : Confidence::Heuristic;
    std::string what = all_removed ? "loop lost primary break" : "loop lost one of its exits";
    removed_lines.insert(removed_lines.begin(), loop.header_line);
    findings.push_back(make_finding(IssueClass::I1c,
                                    det::function_name_at(orig, loop.header_line),
                                    std::move(removed_lines),
                                    what + ": loop at line " + std::to_string(loop.header_line) +
                                        " retained while " + std::to_string(removed) + " of " +
                                        std::to_string(term_lines.size()) +
                                        " terminating line(s) were removed",
                                    conf));
  }
  sort_findings(&findings);
  return findings;
}

// I1d: an early-return guard at the top of a function was removed while the
// guarded body survives.
std::vector<Finding> detect_guard_removal(const DiffInput& in, const DetectorConfig& config) {
  (void)config;
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;

  for (const FunctionDef& fn : orig.functions) {
    // Function must still exist in some form.
    bool any_retained = false;
    for (int line = fn.span_begin; line <= fn.span_end; ++line) {
      if (orig.doc.is_unit(line) && retained(in, line)) {
        any_retained = true;
        break;
      }
    }
    if (!any_retained) continue;

    // Walk the leading run of declarations and guard ifs.
    int function_block = -1;
    for (const Block& b : orig.skeleton.blocks) {
      if (b.kind == BlockKind::Function && b.tok_open == fn.tok_body_begin) {
        function_block = b.id;
        break;
      }
    }
    if (function_block < 0) continue;

    int line = fn.body_open_line + 1;
    std::vector<const IfStmt*> leading_guards;
    while (line <= fn.span_end) {
      if (!orig.doc.is_unit(line) || det::structural_only(orig.doc.record(line).normalized)) {
        ++line;
        continue;
      }
      if (det::looks_like_declaration(orig, line)) {
        ++line;
        continue;
      }
      const IfStmt* at = nullptr;
      for (const IfStmt& st : orig.skeleton.ifs) {
        if (st.header_line == line && st.then_block >= 0 &&
            orig.skeleton.blocks[static_cast<std::size_t>(st.then_block)].parent ==
                function_block) {
          at = &st;
          break;
        }
      }
      if (!at) break;
      leading_guards.push_back(at);
      line = det::if_statement_end(orig, *at) + 1;
    }

    for (const IfStmt* st : leading_guards) {
      if (!det::if_statement_contains_return(orig, *st)) continue;
      std::vector<int> stmt_lines = det::if_statement_lines(orig, *st);
      bool fully_removed = true;
      for (int l : stmt_lines) {
        if (retained(in, l)) {
          fully_removed = false;
          break;
        }
      }
      if (!fully_removed) continue;
      bool body_after_retained = false;
      for (int l = det::if_statement_end(orig, *st) + 1; l <= fn.span_end; ++l) {
        if (orig.doc.is_unit(l) && !det::structural_only(orig.doc.record(l).normalized) &&
            retained(in, l)) {
          body_after_retained = true;
          break;
        }
      }
      if (!body_after_retained) continue;
      findings.push_back(make_finding(
          IssueClass::I1d, fn.name, stmt_lines,
          "early-return guard at line " + std::to_string(st->header_line) +
              " removed while the guarded body of '" + fn.name + "' is retained",
          Confidence::High));
    }
  }
  sort_findings(&findings);
  return findings;
}

}  // namespace dbeval
