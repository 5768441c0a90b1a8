#include <algorithm>

#include "internal.hpp"

namespace dbeval::det {

bool structural_only(const std::string& normalized) {
  for (char c : normalized) {
    if (c != '{' && c != '}' && c != ' ' && c != ';') return false;
  }
  return true;
}

std::vector<int> substantive_block_lines(const SourceAnalysis& a, int block) {
  std::vector<int> out;
  const Block& b = a.skeleton.blocks[static_cast<std::size_t>(block)];
  for (int line = b.begin_line; line <= b.end_line; ++line) {
    if (!a.doc.is_unit(line)) continue;
    if (structural_only(a.doc.record(line).normalized)) continue;
    if (!a.skeleton.line_in_block(line, block)) continue;
    out.push_back(line);
  }
  return out;
}

std::string function_name_at(const SourceAnalysis& a, int line) {
  const FunctionDef* fn = a.function_at(line);
  return fn ? fn->name : std::string();
}

std::vector<int> call_lines(const SourceAnalysis& a, const FunctionDef& fn,
                            const std::set<std::string>& names) {
  std::vector<int> out;
  for (std::size_t i = fn.tok_body_begin + 1; i < fn.tok_body_end; ++i) {
    const Token& t = a.tokens[i];
    if (t.kind != TokKind::Identifier || !names.count(t.text)) continue;
    if (i + 1 >= a.tokens.size() || a.tokens[i + 1].text != "(") continue;
    if (i > 0 && (a.tokens[i - 1].text == "." || a.tokens[i - 1].text == "->")) continue;
    out.push_back(t.line);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> call_tokens(const SourceAnalysis& a,
                                     const std::set<std::string>& names) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < a.tokens.size(); ++i) {
    const Token& t = a.tokens[i];
    if (t.kind != TokKind::Identifier || !names.count(t.text)) continue;
    if (a.tokens[i + 1].text != "(") continue;
    if (i > 0 && (a.tokens[i - 1].text == "." || a.tokens[i - 1].text == "->")) continue;
    out.push_back(i);
  }
  return out;
}

bool if_statement_contains_return(const SourceAnalysis& a, const IfStmt& st) {
  int end_line = if_statement_end(a, st);
  for (const Token& t : a.tokens) {
    if (t.line < st.header_line || t.line > end_line) continue;
    if (t.kind == TokKind::Identifier && t.text == "return") return true;
  }
  return false;
}

int if_statement_end(const SourceAnalysis& a, const IfStmt& st) {
  int end = st.header_line;
  if (st.then_block >= 0) {
    end = std::max(end, a.skeleton.blocks[static_cast<std::size_t>(st.then_block)].end_line);
  }
  if (st.else_block >= 0) {
    end = std::max(end, a.skeleton.blocks[static_cast<std::size_t>(st.else_block)].end_line);
  }
  return end;
}

std::vector<int> if_statement_lines(const SourceAnalysis& a, const IfStmt& st) {
  std::vector<int> out;
  for (int line = st.header_line; line <= if_statement_end(a, st); ++line) {
    if (a.doc.is_unit(line)) out.push_back(line);
  }
  return out;
}

bool looks_like_declaration(const SourceAnalysis& a, int line) {
  static const std::set<std::string> type_starters = {
      "int",    "char",   "long",  "short",    "unsigned", "signed", "float",
      "double", "void",   "struct", "union",   "enum",     "const",  "static",
      "register", "_Bool", "size_t", "ssize_t", "FILE"};
  std::vector<const Token*> line_toks;
  for (const Token& t : a.tokens) {
    if (t.line == line) line_toks.push_back(&t);
    if (t.line > line) break;
  }
  if (line_toks.size() < 3) return false;
  if (line_toks.front()->kind != TokKind::Identifier) return false;
  bool typed_start = type_starters.count(line_toks.front()->text) > 0;
  // `TypeName ident ;` also counts: two consecutive identifiers.
  if (!typed_start) {
    bool two_idents = false;
    for (std::size_t i = 0; i + 1 < line_toks.size(); ++i) {
      if (line_toks[i]->kind == TokKind::Identifier &&
          line_toks[i + 1]->kind == TokKind::Identifier) {
        two_idents = true;
        break;
      }
    }
    if (!two_idents) return false;
  }
  if (line_toks.back()->text != ";") return false;
  for (const Token* t : line_toks) {
    if (t->text == "=" || t->text == "(" || t->text == "{") return false;
  }
  return true;
}

std::vector<std::string> guard_identifiers(const SourceAnalysis& a, const IfStmt& st) {
  std::vector<std::string> out;
  for (std::size_t i = st.guard_begin; i < st.guard_end && i < a.tokens.size(); ++i) {
    const Token& t = a.tokens[i];
    if (t.kind != TokKind::Identifier) continue;
    if (i > 0 && (a.tokens[i - 1].text == "." || a.tokens[i - 1].text == "->")) continue;
    if (i + 1 < a.tokens.size() && a.tokens[i + 1].text == "(") continue;  // call
    out.push_back(t.text);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Finding make_finding(IssueClass issue, std::string function, std::vector<int> lines,
                     std::string evidence, Confidence confidence, Finding::Anchor anchor) {
  Finding f;
  f.issue = issue;
  f.function = std::move(function);
  f.lines = spans_of(std::move(lines));
  f.evidence = std::move(evidence);
  f.confidence = confidence;
  f.anchor = anchor;
  return f;
}

std::vector<LineSpan> spans_of(std::vector<int> lines) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::vector<LineSpan> spans;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= lines.size(); ++i) {
    if (i == lines.size() || lines[i] != lines[i - 1] + 1) {
      spans.push_back({lines[start], lines[i - 1]});
      start = i;
    }
  }
  return spans;
}

}  // namespace dbeval::det
