#include <algorithm>
#include <map>
#include <set>

#include "internal.hpp"

namespace dbeval {

namespace {

using det::make_finding;
using det::retained;

bool callee_initializes(const std::string& name) {
  if (name == "memset" || name == "bzero" || name == "memcpy") return true;
  return name.find("init") != std::string::npos;
}

struct VarUsage {
  std::vector<int> assign_lines;
  std::vector<int> read_lines;
};

// Lexical, intra-procedural usage index for the function's own locals.
std::map<std::string, VarUsage> index_function(const SourceAnalysis& a, const FunctionDef& fn) {
  std::map<std::string, VarUsage> usage;

  // Locals: declaration lines in the body.
  std::set<std::string> locals;
  std::map<std::string, int> decl_line;
  for (int line = fn.body_open_line; line <= fn.span_end; ++line) {
    if (!a.doc.is_unit(line) || !det::looks_like_declaration(a, line)) continue;
    // declared names: identifiers directly before ';' or ',' or '['
    std::vector<const Token*> lt;
    for (const Token& t : a.tokens) {
      if (t.line == line) lt.push_back(&t);
      if (t.line > line) break;
    }
    for (std::size_t i = 0; i + 1 < lt.size(); ++i) {
      if (lt[i]->kind != TokKind::Identifier) continue;
      const std::string& nxt = lt[i + 1]->text;
      if (nxt == ";" || nxt == "," || nxt == "[") {
        locals.insert(lt[i]->text);
        decl_line.emplace(lt[i]->text, line);
      }
    }
  }
  if (locals.empty()) return usage;

  const auto& toks = a.tokens;
  for (std::size_t i = fn.tok_body_begin + 1; i < fn.tok_body_end; ++i) {
    const Token& t = toks[i];
    if (t.kind != TokKind::Identifier || !locals.count(t.text)) continue;
    if (decl_line.count(t.text) && decl_line[t.text] == t.line) continue;  // the declaration
    VarUsage& u = usage[t.text];

    const bool prev_member =
        i > 0 && (toks[i - 1].text == "." || toks[i - 1].text == "->");
    if (prev_member) continue;  // field of something else
    const bool prev_deref = i > 0 && toks[i - 1].text == "*";
    const bool prev_addr = i > 0 && toks[i - 1].text == "&";

    // Direct or member/field assignment: v = ..., v.f = ..., v->f = ...
    std::size_t j = i + 1;
    while (j + 1 < fn.tok_body_end &&
           (toks[j].text == "." || toks[j].text == "->") &&
           toks[j + 1].kind == TokKind::Identifier) {
      j += 2;
    }
    bool member_path = j > i + 1;
    if (!prev_deref && !prev_addr && j < fn.tok_body_end && toks[j].text == "=") {
      u.assign_lines.push_back(t.line);
      continue;
    }
    if (member_path) {
      u.read_lines.push_back(t.line);  // v.f in a read position reads v
      continue;
    }

    if (prev_addr) {
      // &v as an argument: initializing when the callee's name says so.
      std::size_t k = i;
      int depth = 0;
      std::string callee;
      while (k-- > fn.tok_body_begin) {
        const Token& p = toks[k];
        if (p.text == ")") ++depth;
        if (p.text == "(") {
          if (depth == 0) {
            if (k > 0 && toks[k - 1].kind == TokKind::Identifier) callee = toks[k - 1].text;
            break;
          }
          --depth;
        }
        if (p.text == ";" || p.text == "{" || p.text == "}") break;
      }
      if (!callee.empty() && callee_initializes(callee)) {
        u.assign_lines.push_back(t.line);
      } else {
        u.read_lines.push_back(t.line);
      }
      continue;
    }

    u.read_lines.push_back(t.line);
  }
  return usage;
}

}  // namespace

std::vector<Finding> detect_uninitialized_use(const DiffInput& in) {
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

    for (auto& [var, usage] : index_function(orig, fn)) {
      if (usage.assign_lines.empty() || usage.read_lines.empty()) continue;
      std::sort(usage.assign_lines.begin(), usage.assign_lines.end());
      std::sort(usage.read_lines.begin(), usage.read_lines.end());
      // Flow-insensitive guard: the original must initialize before first use.
      if (usage.assign_lines.front() > usage.read_lines.front()) continue;

      bool all_assigns_removed = true;
      for (int line : usage.assign_lines) {
        if (retained(in, line)) {
          all_assigns_removed = false;
          break;
        }
      }
      if (!all_assigns_removed) continue;

      std::vector<int> kept_reads;
      for (int line : usage.read_lines) {
        if (retained(in, line)) kept_reads.push_back(line);
      }
      if (kept_reads.empty()) continue;

      std::vector<int> lines = usage.assign_lines;
      lines.insert(lines.end(), kept_reads.begin(), kept_reads.end());
      findings.push_back(make_finding(
          IssueClass::I6, fn.name, std::move(lines),
          "all " + std::to_string(usage.assign_lines.size()) + " initialization(s) of '" + var +
              "' removed while " + std::to_string(kept_reads.size()) +
              " use(s) are retained in '" + fn.name + "'",
          Confidence::High));
    }
  }
  sort_findings(&findings);
  return findings;
}

std::vector<Finding> detect_syntactic_breakage(const SourceAnalysis& variant) {
  std::vector<Finding> findings;
  for (const SyntaxFinding& sf : check_syntax_integrity(variant.doc)) {
    findings.push_back(make_finding(IssueClass::I7, det::function_name_at(variant, sf.line),
                                    {sf.line}, syntax_issue_name(sf.kind) + ": " + sf.detail,
                                    Confidence::High, Finding::Anchor::Variant));
  }
  sort_findings(&findings);
  return findings;
}

}  // namespace dbeval
