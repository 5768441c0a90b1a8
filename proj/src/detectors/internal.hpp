#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dbeval/detectors.hpp"

namespace dbeval::det {

inline bool retained(const DiffInput& in, int orig_line) {
  return in.alignment->retained(orig_line);
}

// Lines that carry only block punctuation; their cross-version matching is
// positional noise, so structural detectors ignore them.
bool structural_only(const std::string& normalized);

// Unit lines lying inside `block` (primary context), excluding brace-only
// lines and the block header.
std::vector<int> substantive_block_lines(const SourceAnalysis& a, int block);

// Name of the function whose span covers `line`, or "" at file scope.
std::string function_name_at(const SourceAnalysis& a, int line);

// Lines in `fn` calling any of `names` (lexical: identifier followed by '(',
// not a member access, not a goto target).
std::vector<int> call_lines(const SourceAnalysis& a, const FunctionDef& fn,
                            const std::set<std::string>& names);

// Token indices of calls to `names` within the whole document.
std::vector<std::size_t> call_tokens(const SourceAnalysis& a, const std::set<std::string>& names);

// True when the statement's tokens contain the `return` keyword.
bool if_statement_contains_return(const SourceAnalysis& a, const IfStmt& st);

// Last line of an if statement including any else branch.
int if_statement_end(const SourceAnalysis& a, const IfStmt& st);

// All unit lines of the if statement (header, branches, braces).
std::vector<int> if_statement_lines(const SourceAnalysis& a, const IfStmt& st);

// Declaration-ish line: type tokens followed by a declarator, no assignment
// logic. Used for leading-guard-region scans and local indexing.
bool looks_like_declaration(const SourceAnalysis& a, int line);

// Guard identifiers (flag keys) appearing in an if guard.
std::vector<std::string> guard_identifiers(const SourceAnalysis& a, const IfStmt& st);

// Finding construction helper.
Finding make_finding(IssueClass issue, std::string function, std::vector<int> lines,
                     std::string evidence, Confidence confidence,
                     Finding::Anchor anchor = Finding::Anchor::Original);

// Compresses sorted line numbers into spans.
std::vector<LineSpan> spans_of(std::vector<int> lines);

}  // namespace dbeval::det
