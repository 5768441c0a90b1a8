#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dbeval/diagnostics.hpp"

namespace dbeval {

enum class LineClass { Code, Comment, Blank, Preprocessor };

// One physical source line after normalization. `index` is the 1-based line
// number in the file the line originates from; for documents derived by
// deleting lines it keeps pointing at the ancestor file, which is what keeps
// reduced sources alignable against their original.
struct LineRecord {
  int index = 0;
  LineClass cls = LineClass::Blank;
  std::string normalized;        // empty unless Code or Preprocessor
  std::uint64_t content_key = 0; // hash of `normalized`
};

// Lines that count as comparison units at LoC granularity: normalized code
// and preprocessor lines. Comments and blanks never count.
inline bool is_unit_class(LineClass c) {
  return c == LineClass::Code || c == LineClass::Preprocessor;
}

struct SourceDocument {
  std::vector<std::string> raw_lines;
  std::vector<LineRecord> lines;

  int line_count() const { return static_cast<int>(raw_lines.size()); }

  // 1-based positional access.
  const LineRecord& record(int pos) const { return lines[static_cast<std::size_t>(pos - 1)]; }
  bool is_unit(int pos) const { return is_unit_class(record(pos).cls); }

  std::size_t unit_count() const {
    std::size_t n = 0;
    for (const auto& rec : lines) {
      if (is_unit_class(rec.cls)) ++n;
    }
    return n;
  }
};

std::uint64_t content_hash(std::string_view text);

// Splits text into lines (LF and CRLF), replaces non-ASCII-compatible bytes
// with '?' (counted, reported through diags, never dropped).
std::vector<std::string> split_lines(std::string_view text, Diagnostics* diags = nullptr);

// Strips comments (line and block, literal-aware), collapses whitespace runs,
// classifies every line. Deterministic and idempotent on its own output.
SourceDocument normalize(SourceDocument doc, Diagnostics* diags = nullptr);

SourceDocument document_from_lines(std::vector<std::string> raw, Diagnostics* diags = nullptr);
SourceDocument document_from_text(std::string_view text, Diagnostics* diags = nullptr);

// --- Token stream -----------------------------------------------------------

enum class TokKind { Identifier, Number, String, CharLit, Punct };

struct Token {
  TokKind kind;
  std::string text;
  int line = 0;  // 1-based document position
  int col = 0;   // 0-based offset into the normalized line
};

// Lexes the normalized code lines. Preprocessor lines are skipped: their
// brackets and operators do not participate in statement structure.
std::vector<Token> lex_document(const SourceDocument& doc);

// --- Function extraction ----------------------------------------------------

enum class SyntaxIssue { UnbalancedBrace, UnbalancedParen, OrphanedCase, DanglingGoto };

struct SyntaxFinding {
  SyntaxIssue kind;
  int line = 0;  // 1-based document position
  std::string detail;
};

std::string syntax_issue_name(SyntaxIssue kind);

struct FunctionDef {
  std::string name;
  int span_begin = 0;  // first line of the declaration
  int span_end = 0;    // line of the closing brace
  int body_open_line = 0;
  bool body_nonempty = false;
  // token-range bookkeeping for structural scans
  std::size_t tok_decl_begin = 0; // first token of the declaration
  std::size_t tok_name = 0;       // token index of the function name
  std::size_t tok_body_begin = 0; // token index of '{'
  std::size_t tok_body_end = 0;   // token index of matching '}'
};

// Recognizes top-level ANSI-style definitions: `name (...)` at depth 0
// followed by a balanced `{...}` before any top-level `;`. Prototypes and
// extern declarations are excluded. Never throws; imbalances degrade to
// best effort and are reported through `findings`.
std::vector<FunctionDef> extract_functions(const SourceDocument& doc,
                                           const std::vector<Token>& toks,
                                           std::vector<SyntaxFinding>* findings = nullptr);
std::vector<FunctionDef> extract_functions(const SourceDocument& doc,
                                           std::vector<SyntaxFinding>* findings = nullptr);

// Suffix-strip rules mapping specialized clones back to their base function.
// Rules are ECMAScript regexes anchored at the end of the name; the longest
// match is stripped once.
const std::vector<std::string>& default_strip_rules();
std::string canonical_function_name(const std::string& raw,
                                    const std::vector<std::string>& rules = default_strip_rules());

// --- Control skeleton -------------------------------------------------------

enum class BlockKind { Function, IfThen, IfElse, While, For, Do, Switch, Case, Compound };

std::string block_kind_name(BlockKind kind);

struct Block {
  int id = -1;
  BlockKind kind = BlockKind::Compound;
  int parent = -1;
  int header_line = 0;   // line of the introducing token (if/while/...; '{' for compounds)
  int begin_line = 0;    // line of '{' (or first statement line when synthetic)
  int end_line = 0;      // line of '}' (or last statement line when synthetic)
  bool synthetic = false;
  int if_stmt = -1;      // owning if-statement for IfThen/IfElse blocks
  bool has_case_value = false;  // Case blocks with a single literal label
  long case_value = 0;
  // token bookkeeping used by the folding engine
  std::size_t tok_open = 0;
  std::size_t tok_close = 0;
};

struct IfStmt {
  int header_line = 0;
  std::size_t tok_if = 0;
  std::size_t guard_begin = 0;  // token range of the parenthesized guard, exclusive of parens
  std::size_t guard_end = 0;
  int then_block = -1;
  int else_block = -1;
  int else_line = 0;  // line of the `else` token, 0 when absent
  int function = -1;
};

struct SwitchStmt {
  int header_line = 0;
  std::size_t guard_begin = 0;
  std::size_t guard_end = 0;
  int block = -1;
  int function = -1;
};

struct LabelDef {
  std::string name;
  int line = 0;
  int function = -1;
};

struct GotoStmt {
  std::string label;
  int line = 0;
  int function = -1;
};

struct BreakStmt {
  int line = 0;
  int owner_block = -1;  // innermost enclosing loop or switch
};

class ControlSkeleton {
 public:
  std::vector<Block> blocks;
  std::vector<IfStmt> ifs;
  std::vector<SwitchStmt> switches;
  std::vector<LabelDef> labels;
  std::vector<GotoStmt> gotos;
  std::vector<BreakStmt> breaks;
  std::vector<SyntaxFinding> findings;
  // Per line (1-based position): leaf block of each statement context touching
  // the line, in token order. The first entry is the line's primary path.
  std::vector<std::vector<int>> line_leaves;

  int primary_leaf(int line) const {
    const auto& v = line_leaves[static_cast<std::size_t>(line - 1)];
    return v.empty() ? -1 : v.front();
  }

  // Root-to-leaf block ids.
  std::vector<int> path_of(int leaf) const;

  bool block_contains(int block, int candidate_leaf) const;

  // True when `line`'s primary context lies inside `block` (inclusive).
  bool line_in_block(int line, int block) const;
};

ControlSkeleton build_skeleton(const SourceDocument& doc,
                               const std::vector<Token>& toks,
                               const std::vector<FunctionDef>& funcs);
ControlSkeleton build_skeleton(const SourceDocument& doc);

// Brace/paren balance plus orphaned `case`/`default` labels and `goto`s whose
// label is missing from the same function. Findings are the result; nothing
// throws.
std::vector<SyntaxFinding> check_syntax_integrity(const SourceDocument& doc);

// Bundles the per-document analyses most passes need.
struct SourceAnalysis {
  SourceDocument doc;
  std::vector<Token> tokens;
  std::vector<FunctionDef> functions;
  ControlSkeleton skeleton;

  const FunctionDef* function_at(int line) const;
  const FunctionDef* function_named(std::string_view name) const;
};

SourceAnalysis analyze(SourceDocument doc);

}  // namespace dbeval
