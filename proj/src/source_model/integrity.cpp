#include <algorithm>
#include <set>

#include "dbeval/source_model.hpp"

namespace dbeval {

namespace {

void scan_balance(const std::vector<Token>& toks, const char* open, const char* close,
                  SyntaxIssue issue, const char* what, std::vector<SyntaxFinding>* out) {
  std::vector<int> open_lines;
  for (const auto& t : toks) {
    if (t.kind != TokKind::Punct) continue;
    if (t.text == open) {
      open_lines.push_back(t.line);
    } else if (t.text == close) {
      if (open_lines.empty()) {
        out->push_back({issue, t.line, std::string("extra '") + close + "'"});
      } else {
        open_lines.pop_back();
      }
    }
  }
  for (int line : open_lines) {
    out->push_back({issue, line, std::string("unclosed '") + open + "' (" + what + ")"});
  }
}

}  // namespace

std::vector<SyntaxFinding> check_syntax_integrity(const SourceDocument& doc) {
  std::vector<SyntaxFinding> out;
  std::vector<Token> toks = lex_document(doc);

  scan_balance(toks, "{", "}", SyntaxIssue::UnbalancedBrace, "brace", &out);
  scan_balance(toks, "(", ")", SyntaxIssue::UnbalancedParen, "paren", &out);

  std::vector<FunctionDef> funcs = extract_functions(doc, toks, nullptr);
  ControlSkeleton sk = build_skeleton(doc, toks, funcs);
  for (const auto& f : sk.findings) {
    if (f.kind == SyntaxIssue::OrphanedCase) out.push_back(f);
  }

  // case/default labels at file scope never pass through the statement parser,
  // so look for them directly outside every function span.
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokKind::Identifier || (t.text != "case" && t.text != "default")) continue;
    bool inside = false;
    for (const auto& fn : funcs) {
      if (t.line >= fn.span_begin && t.line <= fn.span_end) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      out.push_back({SyntaxIssue::OrphanedCase, t.line,
                     "'" + t.text + "' label outside any switch"});
    }
  }

  // goto with no label definition in the same function. Gotos outside any
  // recognized function fall back to a whole-document label search.
  std::set<std::string> all_labels;
  for (const auto& l : sk.labels) all_labels.insert(l.name);
  for (const auto& g : sk.gotos) {
    bool found = false;
    if (g.function >= 0) {
      for (const auto& l : sk.labels) {
        if (l.function == g.function && l.name == g.label) {
          found = true;
          break;
        }
      }
    } else {
      found = all_labels.count(g.label) > 0;
    }
    if (!found) {
      out.push_back({SyntaxIssue::DanglingGoto, g.line, "goto '" + g.label + "' has no label"});
    }
  }

  std::sort(out.begin(), out.end(), [](const SyntaxFinding& a, const SyntaxFinding& b) {
    if (a.line != b.line) return a.line < b.line;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return out;
}

}  // namespace dbeval
