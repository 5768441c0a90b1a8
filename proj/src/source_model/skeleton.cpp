#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "dbeval/source_model.hpp"

namespace dbeval {

namespace {

bool is_punct(const Token& t, const char* text) {
  return t.kind == TokKind::Punct && t.text == text;
}

bool is_ident(const Token& t, const char* text) {
  return t.kind == TokKind::Identifier && t.text == text;
}

bool is_loop_or_switch(BlockKind k) {
  return k == BlockKind::While || k == BlockKind::For || k == BlockKind::Do ||
         k == BlockKind::Switch;
}

// Tolerant recursive-descent pass over one function body. Builds the block
// tree, per-line context snapshots, and the label/goto/break inventories.
class SkeletonParser {
 public:
  SkeletonParser(const std::vector<Token>& toks, ControlSkeleton& sk)
      : toks_(toks), sk_(sk) {}

  void parse_function(const FunctionDef& fn, int fn_index) {
    func_ = fn_index;
    pos_ = fn.tok_body_begin;
    end_ = fn.tok_body_end;  // exclusive of the closing brace
    int block = open_block(BlockKind::Function, toks_[fn.tok_name].line, pos_, false);
    note(pos_);  // '{'
    ++pos_;
    parse_statement_list();
    if (pos_ <= end_ && end_ < toks_.size()) {
      pos_ = end_;
      note(pos_);  // '}'
      close_block(block, pos_);
      ++pos_;
    } else {
      close_block(block, end_ > 0 ? end_ - 1 : 0);
    }
  }

 private:
  const std::vector<Token>& toks_;
  ControlSkeleton& sk_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  int func_ = -1;
  std::vector<int> stack_;

  const Token& tok(std::size_t i) const { return toks_[i]; }
  bool done() const { return pos_ >= end_; }

  void note(std::size_t i) {
    if (stack_.empty()) return;
    auto& leaves = sk_.line_leaves[static_cast<std::size_t>(toks_[i].line - 1)];
    if (leaves.empty() || leaves.back() != stack_.back()) leaves.push_back(stack_.back());
  }

  void consume() {
    note(pos_);
    ++pos_;
  }

  int open_block(BlockKind kind, int header_line, std::size_t tok_open, bool synthetic) {
    Block b;
    b.id = static_cast<int>(sk_.blocks.size());
    b.kind = kind;
    b.parent = stack_.empty() ? -1 : stack_.back();
    b.header_line = header_line;
    b.begin_line = tok_open < toks_.size() ? toks_[tok_open].line : header_line;
    b.synthetic = synthetic;
    b.tok_open = tok_open;
    sk_.blocks.push_back(b);
    stack_.push_back(b.id);
    return b.id;
  }

  void close_block(int id, std::size_t tok_close) {
    Block& b = sk_.blocks[static_cast<std::size_t>(id)];
    b.tok_close = tok_close;
    b.end_line = tok_close < toks_.size() ? toks_[tok_close].line : b.begin_line;
    assert(!stack_.empty() && stack_.back() == id);
    stack_.pop_back();
  }

  // Consumes a balanced (...) group if present; tolerant to imbalance.
  void consume_parens() {
    if (done() || !is_punct(tok(pos_), "(")) return;
    int depth = 0;
    while (!done()) {
      if (is_punct(tok(pos_), "(")) ++depth;
      if (is_punct(tok(pos_), ")")) {
        --depth;
        consume();
        if (depth == 0) return;
        continue;
      }
      consume();
    }
  }

  bool in_switch() const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      BlockKind k = sk_.blocks[static_cast<std::size_t>(*it)].kind;
      if (k == BlockKind::Switch || k == BlockKind::Case) return true;
      if (k == BlockKind::Function) return false;
    }
    return false;
  }

  void parse_statement_list() {
    while (!done() && !is_punct(tok(pos_), "}")) {
      std::size_t before = pos_;
      parse_statement();
      if (pos_ == before) consume();  // never stall on malformed input
    }
  }

  // Body of an if/else/loop. Brace-less bodies get a synthetic single
  // statement block so structural comparison stays uniform.
  int parse_controlled_block(BlockKind kind, int header_line, int if_stmt) {
    if (!done() && is_punct(tok(pos_), "{")) {
      int id = open_block(kind, header_line, pos_, false);
      sk_.blocks[static_cast<std::size_t>(id)].if_stmt = if_stmt;
      consume();  // '{'
      parse_statement_list();
      if (!done()) {
        std::size_t close = pos_;
        consume();  // '}'
        close_block(id, close);
      } else {
        sk_.findings.push_back({SyntaxIssue::UnbalancedBrace, header_line,
                                "block never closed"});
        close_block(id, end_ > 0 ? end_ - 1 : 0);
      }
      return id;
    }
    int id = open_block(kind, header_line, pos_, true);
    sk_.blocks[static_cast<std::size_t>(id)].if_stmt = if_stmt;
    if (!done()) parse_statement();
    std::size_t last = pos_ > 0 ? pos_ - 1 : 0;
    close_block(id, last);
    return id;
  }

  void parse_switch_body(int header_line) {
    if (done() || !is_punct(tok(pos_), "{")) {
      parse_controlled_block(BlockKind::Switch, header_line, -1);
      return;
    }
    int sw = open_block(BlockKind::Switch, header_line, pos_, false);
    consume();  // '{'
    int open_case = -1;
    while (!done() && !is_punct(tok(pos_), "}")) {
      if (is_ident(tok(pos_), "case") || is_ident(tok(pos_), "default")) {
        if (open_case >= 0) {
          close_block(open_case, pos_ > 0 ? pos_ - 1 : 0);
          open_case = -1;
        }
        int case_line = tok(pos_).line;
        bool is_default = is_ident(tok(pos_), "default");
        consume();  // case / default
        std::size_t expr_begin = pos_;
        while (!done() && !is_punct(tok(pos_), ":")) consume();
        std::size_t expr_end = pos_;
        if (!done()) consume();  // ':'
        open_case = open_block(BlockKind::Case, case_line, pos_, true);
        if (!is_default && expr_end == expr_begin + 1 &&
            toks_[expr_begin].kind == TokKind::Number) {
          char* endp = nullptr;
          long v = std::strtol(toks_[expr_begin].text.c_str(), &endp, 0);
          if (endp && *endp == '\0') {
            sk_.blocks[static_cast<std::size_t>(open_case)].has_case_value = true;
            sk_.blocks[static_cast<std::size_t>(open_case)].case_value = v;
          }
        }
        continue;
      }
      std::size_t before = pos_;
      parse_statement();
      if (pos_ == before) consume();
    }
    if (open_case >= 0) close_block(open_case, pos_ > 0 ? pos_ - 1 : 0);
    if (!done()) {
      std::size_t close = pos_;
      consume();  // '}'
      close_block(sw, close);
    } else {
      sk_.findings.push_back({SyntaxIssue::UnbalancedBrace, header_line, "switch never closed"});
      close_block(sw, end_ > 0 ? end_ - 1 : 0);
    }
  }

  void parse_statement() {
    if (done()) return;
    const Token& t = tok(pos_);

    if (is_punct(t, ";")) {
      consume();
      return;
    }
    if (is_punct(t, "{")) {
      int id = open_block(BlockKind::Compound, t.line, pos_, false);
      consume();
      parse_statement_list();
      if (!done()) {
        std::size_t close = pos_;
        consume();
        close_block(id, close);
      } else {
        sk_.findings.push_back({SyntaxIssue::UnbalancedBrace, t.line, "block never closed"});
        close_block(id, end_ > 0 ? end_ - 1 : 0);
      }
      return;
    }
    if (is_ident(t, "if")) {
      IfStmt st;
      st.header_line = t.line;
      st.tok_if = pos_;
      st.function = func_;
      consume();  // if
      if (!done() && is_punct(tok(pos_), "(")) {
        st.guard_begin = pos_ + 1;
        consume_parens();
        st.guard_end = pos_ > 0 ? pos_ - 1 : 0;  // index of ')'
      }
      int if_index = static_cast<int>(sk_.ifs.size());
      sk_.ifs.push_back(st);
      int then_id = parse_controlled_block(BlockKind::IfThen, t.line, if_index);
      sk_.ifs[static_cast<std::size_t>(if_index)].then_block = then_id;
      if (!done() && is_ident(tok(pos_), "else")) {
        int else_line = tok(pos_).line;
        consume();  // else
        int else_id = parse_controlled_block(BlockKind::IfElse, else_line, if_index);
        sk_.ifs[static_cast<std::size_t>(if_index)].else_block = else_id;
        sk_.ifs[static_cast<std::size_t>(if_index)].else_line = else_line;
      }
      return;
    }
    if (is_ident(t, "while")) {
      consume();
      consume_parens();
      parse_controlled_block(BlockKind::While, t.line, -1);
      return;
    }
    if (is_ident(t, "for")) {
      consume();
      consume_parens();
      parse_controlled_block(BlockKind::For, t.line, -1);
      return;
    }
    if (is_ident(t, "do")) {
      consume();
      parse_controlled_block(BlockKind::Do, t.line, -1);
      if (!done() && is_ident(tok(pos_), "while")) {
        consume();
        consume_parens();
        if (!done() && is_punct(tok(pos_), ";")) consume();
      }
      return;
    }
    if (is_ident(t, "switch")) {
      SwitchStmt sw;
      sw.header_line = t.line;
      sw.function = func_;
      consume();
      if (!done() && is_punct(tok(pos_), "(")) {
        sw.guard_begin = pos_ + 1;
        consume_parens();
        sw.guard_end = pos_ > 0 ? pos_ - 1 : 0;
      }
      int block_count_before = static_cast<int>(sk_.blocks.size());
      parse_switch_body(t.line);
      sw.block = block_count_before < static_cast<int>(sk_.blocks.size()) ? block_count_before : -1;
      sk_.switches.push_back(sw);
      return;
    }
    if (is_ident(t, "case") || is_ident(t, "default")) {
      // Reached outside the immediate body of a switch.
      if (!in_switch()) {
        sk_.findings.push_back({SyntaxIssue::OrphanedCase, t.line,
                                "'" + t.text + "' label outside any switch"});
      }
      consume();
      while (!done() && !is_punct(tok(pos_), ":")) consume();
      if (!done()) consume();  // ':'
      return;
    }
    if (is_ident(t, "goto")) {
      consume();
      if (!done() && tok(pos_).kind == TokKind::Identifier) {
        sk_.gotos.push_back({tok(pos_).text, t.line, func_});
        consume();
      }
      if (!done() && is_punct(tok(pos_), ";")) consume();
      return;
    }
    if (is_ident(t, "break")) {
      int owner = -1;
      for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        BlockKind k = sk_.blocks[static_cast<std::size_t>(*it)].kind;
        if (is_loop_or_switch(k)) {
          owner = *it;
          break;
        }
        if (k == BlockKind::Function) break;
      }
      sk_.breaks.push_back({t.line, owner});
      consume();
      if (!done() && is_punct(tok(pos_), ";")) consume();
      return;
    }
    if (t.kind == TokKind::Identifier && pos_ + 1 < end_ && is_punct(tok(pos_ + 1), ":") &&
        !is_ident(t, "case") && !is_ident(t, "default")) {
      sk_.labels.push_back({t.text, t.line, func_});
      consume();
      consume();  // ':'
      return;
    }

    // Plain statement: consume through the terminating ';' at balanced depth.
    int paren = 0;
    int brace = 0;
    while (!done()) {
      const Token& u = tok(pos_);
      if (is_punct(u, "(")) ++paren;
      if (is_punct(u, ")")) --paren;
      if (is_punct(u, "{")) ++brace;
      if (is_punct(u, "}")) {
        if (brace == 0) return;  // statement ran into block close
        --brace;
      }
      if (is_punct(u, ";") && paren <= 0 && brace == 0) {
        consume();
        return;
      }
      consume();
    }
  }
};

}  // namespace

std::string block_kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::Function: return "function";
    case BlockKind::IfThen: return "if-then";
    case BlockKind::IfElse: return "if-else";
    case BlockKind::While: return "while";
    case BlockKind::For: return "for";
    case BlockKind::Do: return "do";
    case BlockKind::Switch: return "switch";
    case BlockKind::Case: return "case";
    case BlockKind::Compound: return "compound";
  }
  return "unknown";
}

std::vector<int> ControlSkeleton::path_of(int leaf) const {
  std::vector<int> path;
  for (int b = leaf; b >= 0; b = blocks[static_cast<std::size_t>(b)].parent) {
    path.push_back(b);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool ControlSkeleton::block_contains(int block, int candidate_leaf) const {
  for (int b = candidate_leaf; b >= 0; b = blocks[static_cast<std::size_t>(b)].parent) {
    if (b == block) return true;
  }
  return false;
}

bool ControlSkeleton::line_in_block(int line, int block) const {
  int leaf = primary_leaf(line);
  if (leaf < 0) return false;
  return block_contains(block, leaf);
}

ControlSkeleton build_skeleton(const SourceDocument& doc,
                               const std::vector<Token>& toks,
                               const std::vector<FunctionDef>& funcs) {
  ControlSkeleton sk;
  sk.line_leaves.assign(static_cast<std::size_t>(doc.line_count()), {});
  SkeletonParser parser(toks, sk);
  for (std::size_t fi = 0; fi < funcs.size(); ++fi) {
    parser.parse_function(funcs[fi], static_cast<int>(fi));
  }
  return sk;
}

ControlSkeleton build_skeleton(const SourceDocument& doc) {
  std::vector<Token> toks = lex_document(doc);
  std::vector<FunctionDef> funcs = extract_functions(doc, toks, nullptr);
  return build_skeleton(doc, toks, funcs);
}

const FunctionDef* SourceAnalysis::function_at(int line) const {
  for (const auto& fn : functions) {
    if (line >= fn.span_begin && line <= fn.span_end) return &fn;
  }
  return nullptr;
}

const FunctionDef* SourceAnalysis::function_named(std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

SourceAnalysis analyze(SourceDocument doc) {
  SourceAnalysis a;
  a.doc = std::move(doc);
  a.tokens = lex_document(a.doc);
  a.functions = extract_functions(a.doc, a.tokens, nullptr);
  a.skeleton = build_skeleton(a.doc, a.tokens, a.functions);
  return a;
}

}  // namespace dbeval
