#include <algorithm>
#include <set>

#include "internal.hpp"

namespace dbeval {

namespace {

using det::make_finding;
using det::retained;

// Nearest assignment `var = callee(...)` above `before_line` in the same
// function; true when that defining line is retained.
bool defined_by_retained_call(const DiffInput& in, const FunctionDef& fn,
                              const std::string& var, int before_line) {
  const SourceAnalysis& orig = *in.original;
  int best_line = 0;
  bool best_is_call = false;
  for (std::size_t i = fn.tok_body_begin + 1; i + 2 < fn.tok_body_end; ++i) {
    const Token& t = orig.tokens[i];
    if (t.line >= before_line) break;
    if (t.kind != TokKind::Identifier || t.text != var) continue;
    if (orig.tokens[i + 1].text != "=") continue;
    if (i > 0 && (orig.tokens[i - 1].text == "." || orig.tokens[i - 1].text == "->")) continue;
    bool is_call = orig.tokens[i + 2].kind == TokKind::Identifier && i + 3 < fn.tok_body_end &&
                   orig.tokens[i + 3].text == "(";
    if (t.line >= best_line) {
      best_line = t.line;
      best_is_call = is_call;
    }
  }
  return best_line > 0 && best_is_call && retained(in, best_line);
}

// Enclosing retained guard chain of a block: the ifs whose arms contain it.
std::vector<const IfStmt*> enclosing_ifs(const SourceAnalysis& a, int leaf) {
  std::vector<const IfStmt*> out;
  for (int block : a.skeleton.path_of(leaf)) {
    const Block& b = a.skeleton.blocks[static_cast<std::size_t>(block)];
    if ((b.kind == BlockKind::IfThen || b.kind == BlockKind::IfElse) && b.if_stmt >= 0) {
      out.push_back(&a.skeleton.ifs[static_cast<std::size_t>(b.if_stmt)]);
    }
  }
  return out;
}

}  // namespace

std::vector<Finding> detect_error_handler_removal(const DiffInput& in,
                                                  const DetectorConfig& config) {
  std::vector<Finding> findings;
  const SourceAnalysis& orig = *in.original;

  std::set<std::string> handler_fns = config.error_fns;
  handler_fns.insert(config.terminating_fns.begin(), config.terminating_fns.end());

  // Handler call lines per function, innermost-if attribution.
  std::set<int> consumed;  // handler lines already reported
  std::vector<const IfStmt*> ifs_by_depth;
  for (const IfStmt& st : orig.skeleton.ifs) ifs_by_depth.push_back(&st);
  std::sort(ifs_by_depth.begin(), ifs_by_depth.end(),
            [&orig](const IfStmt* a, const IfStmt* b) {
              // deeper (narrower) statements first
              int wa = det::if_statement_end(orig, *a) - a->header_line;
              int wb = det::if_statement_end(orig, *b) - b->header_line;
              if (wa != wb) return wa < wb;
              return a->header_line < b->header_line;
            });

  for (const IfStmt* st : ifs_by_depth) {
    if (!retained(in, st->header_line)) continue;  // rule (a) needs the guard alive
    const FunctionDef* fn = orig.function_at(st->header_line);
    if (!fn) continue;

    std::vector<int> handler_lines;
    for (int arm : {st->then_block, st->else_block}) {
      if (arm < 0) continue;
      const Block& b = orig.skeleton.blocks[static_cast<std::size_t>(arm)];
      for (int line : det::call_lines(orig, *fn, handler_fns)) {
        if (line >= b.begin_line && line <= b.end_line &&
            orig.skeleton.line_in_block(line, arm)) {
          handler_lines.push_back(line);
        }
      }
    }
    std::vector<int> removed;
    for (int line : handler_lines) {
      if (!retained(in, line) && !consumed.count(line)) removed.push_back(line);
    }
    if (removed.empty()) continue;
    for (int line : removed) consumed.insert(line);

    // env vs input: some guard on the enclosing chain tests a value produced
    // by a call on a retained line.
    bool env = false;
    int leaf = orig.skeleton.primary_leaf(removed.front());
    std::vector<const IfStmt*> chain =
        leaf >= 0 ? enclosing_ifs(orig, leaf) : std::vector<const IfStmt*>{st};
    for (const IfStmt* g : chain) {
      if (!retained(in, g->header_line)) continue;
      for (const std::string& var : det::guard_identifiers(orig, *g)) {
        if (defined_by_retained_call(in, *fn, var, g->header_line)) env = true;
      }
    }

    std::vector<int> lines = removed;
    lines.push_back(st->header_line);
    findings.push_back(make_finding(
        env ? IssueClass::I5Env : IssueClass::I5Input, fn->name, std::move(lines),
        std::to_string(removed.size()) + " error-handling call(s) removed under the retained "
        "guard at line " + std::to_string(st->header_line),
        Confidence::High));
  }

  // Rule (b): an entire handler block removed, guard and all, while execution
  // continues past where it used to stand.
  for (const IfStmt& st : orig.skeleton.ifs) {
    if (retained(in, st.header_line)) continue;
    const FunctionDef* fn = orig.function_at(st.header_line);
    if (!fn) continue;
    std::vector<int> stmt_lines = det::if_statement_lines(orig, st);
    bool fully_removed = true;
    for (int line : stmt_lines) {
      if (retained(in, line)) {
        fully_removed = false;
        break;
      }
    }
    if (!fully_removed) continue;

    bool has_terminator = false;
    for (int line : det::call_lines(orig, *fn, config.terminating_fns)) {
      if (line > st.header_line && line <= det::if_statement_end(orig, st)) {
        has_terminator = true;
      }
    }
    if (!has_terminator) continue;

    bool continues = false;
    for (int line = det::if_statement_end(orig, st) + 1; line <= fn->span_end; ++line) {
      if (orig.doc.is_unit(line) && !det::structural_only(orig.doc.record(line).normalized) &&
          retained(in, line)) {
        continues = true;
        break;
      }
    }
    if (!continues) continue;

    findings.push_back(make_finding(
        IssueClass::I5Input, fn->name, stmt_lines,
        "terminating handler removed: block at line " + std::to_string(st.header_line) +
            " exited the program and is gone while execution continues past it",
        Confidence::Heuristic));
  }
  sort_findings(&findings);
  return findings;
}

}  // namespace dbeval
