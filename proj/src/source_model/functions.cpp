#include <regex>
#include <set>

#include "dbeval/source_model.hpp"

namespace dbeval {

namespace {

bool is_punct(const Token& t, const char* text) {
  return t.kind == TokKind::Punct && t.text == text;
}

const std::set<std::string>& control_keywords() {
  static const std::set<std::string> kw = {"if",     "while", "for",    "switch", "return",
                                           "sizeof", "do",    "else",   "case",   "goto",
                                           "default", "break", "continue"};
  return kw;
}

// Skips a balanced (...) group starting at `i` (which must point at '(').
// Returns the index one past the matching ')', or toks.size() on imbalance.
std::size_t skip_parens(const std::vector<Token>& toks, std::size_t i) {
  int depth = 0;
  for (; i < toks.size(); ++i) {
    if (is_punct(toks[i], "(")) ++depth;
    if (is_punct(toks[i], ")")) {
      --depth;
      if (depth == 0) return i + 1;
    }
  }
  return toks.size();
}

}  // namespace

std::string syntax_issue_name(SyntaxIssue kind) {
  switch (kind) {
    case SyntaxIssue::UnbalancedBrace: return "unbalanced-brace";
    case SyntaxIssue::UnbalancedParen: return "unbalanced-paren";
    case SyntaxIssue::OrphanedCase: return "orphaned-case";
    case SyntaxIssue::DanglingGoto: return "dangling-goto";
  }
  return "unknown";
}

std::vector<FunctionDef> extract_functions(const SourceDocument& /*doc*/,
                                           const std::vector<Token>& toks,
                                           std::vector<SyntaxFinding>* findings) {
  std::vector<FunctionDef> out;
  int brace_depth = 0;
  // Line of the first token after the last top-level terminator; the start of
  // the current top-level declaration.
  int decl_start_line = toks.empty() ? 0 : toks.front().line;
  std::size_t decl_start_tok = 0;

  std::size_t i = 0;
  while (i < toks.size()) {
    const Token& t = toks[i];
    if (is_punct(t, "{")) {
      ++brace_depth;
      ++i;
      continue;
    }
    if (is_punct(t, "}")) {
      --brace_depth;
      if (brace_depth < 0) brace_depth = 0;  // integrity pass reports this
      if (brace_depth == 0 && i + 1 < toks.size()) {
        decl_start_line = toks[i + 1].line;
        decl_start_tok = i + 1;
      }
      ++i;
      continue;
    }
    if (brace_depth != 0) {
      ++i;
      continue;
    }
    if (is_punct(t, ";")) {
      if (i + 1 < toks.size()) {
        decl_start_line = toks[i + 1].line;
        decl_start_tok = i + 1;
      }
      ++i;
      continue;
    }
    if (t.kind == TokKind::Identifier && !control_keywords().count(t.text) &&
        i + 1 < toks.size() && is_punct(toks[i + 1], "(")) {
      std::size_t after = skip_parens(toks, i + 1);
      // Allow attribute clutter between the parameter list and the body.
      std::size_t j = after;
      while (j < toks.size() && toks[j].kind == TokKind::Identifier &&
             toks[j].text.rfind("__", 0) == 0) {
        if (j + 1 < toks.size() && is_punct(toks[j + 1], "(")) {
          j = skip_parens(toks, j + 1);
        } else {
          ++j;
        }
      }
      if (after < toks.size() && j < toks.size() && is_punct(toks[j], "{")) {
        // Definition: find the matching close brace.
        int depth = 0;
        std::size_t k = j;
        std::size_t close = toks.size();
        for (; k < toks.size(); ++k) {
          if (is_punct(toks[k], "{")) ++depth;
          if (is_punct(toks[k], "}")) {
            --depth;
            if (depth == 0) {
              close = k;
              break;
            }
          }
        }
        if (close == toks.size()) {
          if (findings) {
            findings->push_back({SyntaxIssue::UnbalancedBrace, toks[j].line,
                                 "no closing brace for body of '" + t.text + "'"});
          }
          break;  // best effort: nothing reliable past the imbalance
        }
        FunctionDef fn;
        fn.name = t.text;
        fn.span_begin = decl_start_line;
        fn.tok_decl_begin = decl_start_tok;
        fn.span_end = toks[close].line;
        fn.body_open_line = toks[j].line;
        fn.body_nonempty = close > j + 1;
        fn.tok_name = i;
        fn.tok_body_begin = j;
        fn.tok_body_end = close;
        out.push_back(std::move(fn));
        i = close + 1;
        if (i < toks.size()) {
          decl_start_line = toks[i].line;
          decl_start_tok = i;
        }
        continue;
      }
      i = after > i ? after : i + 1;
      continue;
    }
    ++i;
  }
  return out;
}

std::vector<FunctionDef> extract_functions(const SourceDocument& doc,
                                           std::vector<SyntaxFinding>* findings) {
  return extract_functions(doc, lex_document(doc), findings);
}

const std::vector<std::string>& default_strip_rules() {
  // Specialization clone suffixes: `.specialized.3`, `_spec_2`, `.llvm.123`,
  // and plain numeric tails produced by IR-level cloning. A bare `_3` is only
  // stripped behind an explicit specialization marker.
  static const std::vector<std::string> rules = {
      R"((\.specialized|_spec)([._][0-9]+)?$)",
      R"(\.llvm\.[0-9]+$)",
      R"(\.[0-9]+$)",
  };
  return rules;
}

std::string canonical_function_name(const std::string& raw,
                                    const std::vector<std::string>& rules) {
  std::size_t best = 0;
  for (const auto& pattern : rules) {
    std::regex re(pattern);
    std::smatch m;
    if (std::regex_search(raw, m, re)) {
      best = std::max(best, static_cast<std::size_t>(m[0].length()));
    }
  }
  if (best == 0 || best >= raw.size()) return raw;
  return raw.substr(0, raw.size() - best);
}

}  // namespace dbeval
